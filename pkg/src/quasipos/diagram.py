"""Planar link diagrams as PD codes.

A diagram is a tuple of crossings, each a 4-tuple of edge labels listed
counterclockwise, plus a count of crossingless circles.  Slots 0 and 2 always
hold the under-strand.  An *oriented* diagram additionally carries one sign per
crossing and obeys the stronger convention that slot 0 is the incoming
under-strand; the over-strand then enters at slot 3 for a positive crossing and
at slot 1 for a negative one.

Every operation returns a new diagram.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "LinkDiagram",
    "FramedDiagram",
    "CrossingRef",
    "Builder",
    "components",
    "orient",
    "reverse_component",
    "writhe",
    "self_writhe",
    "linking_number",
    "total_linking",
    "switch_crossing",
    "smooth_oriented",
    "smooth_unoriented",
    "crossing_case",
    "two_cable_boundary",
    "boundary_of_annuli",
    "connected_sum",
    "delete_components",
    "mirror",
    "simplify",
    "split_pieces",
    "canonical_key",
    "canonical_code",
    "decode_code",
    "is_unlink_descending",
    "first_bad_crossing",
    "to_pd_text",
    "from_pd_text",
]


class DiagramError(ValueError):
    pass


Crossing = tuple  # (a, b, c, d)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple = ()
    signs: tuple | None = None
    loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(self.signs))
            if len(self.signs) != len(self.crossings):
                raise DiagramError("one sign per crossing is required")
            if any(s not in (1, -1) for s in self.signs):
                raise DiagramError("crossing signs must be +1 or -1")
        if self.loops < 0:
            raise DiagramError("negative loop count")
        seen: dict = {}
        for c in self.crossings:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have four edge-ends")
            for lab in c:
                seen[lab] = seen.get(lab, 0) + 1
        bad = [lab for lab, k in seen.items() if k != 2]
        if bad:
            raise DiagramError(f"edge labels {sorted(bad)[:5]} are not used exactly twice")
        if self.signs is not None:
            self._check_orientation()

    def _check_orientation(self):
        heads, tails = set(), set()
        for c, s in zip(self.crossings, self.signs):
            ins = (c[0], c[3] if s > 0 else c[1])
            outs = (c[2], c[1] if s > 0 else c[3])
            for lab in ins:
                if lab in heads:
                    raise DiagramError(f"edge {lab} enters two crossings: incoherent orientation")
                heads.add(lab)
            for lab in outs:
                if lab in tails:
                    raise DiagramError(f"edge {lab} leaves two crossings: incoherent orientation")
                tails.add(lab)

    @property
    def oriented(self) -> bool:
        return self.signs is not None

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)

    def labels(self) -> set:
        return {lab for c in self.crossings for lab in c}

    def unoriented(self) -> "LinkDiagram":
        return LinkDiagram(self.crossings, None, self.loops)

    def __str__(self) -> str:
        return to_pd_text(self)


@dataclass(frozen=True)
class CrossingRef:
    crossing: int
    case: int
    value: int  # p in case 1, q in case 2


@dataclass(frozen=True)
class FramedDiagram:
    diagram: LinkDiagram
    framing: tuple = field(default=())

    def total_framing(self) -> int:
        return sum(self.framing)


# ---------------------------------------------------------------------------
# occurrence tables and traversal

def _occurrences(crossings) -> dict:
    occ: dict = {}
    for i, c in enumerate(crossings):
        for s, lab in enumerate(c):
            occ.setdefault(lab, []).append((i, s))
    return occ


def _other(occ, lab, here):
    a, b = occ[lab]
    return b if a == here else a


def _in_slots(c, s):
    return (0, 3) if s > 0 else (0, 1)


def _traverse_unoriented(crossings, occ, start):
    """Yield (crossing, entry slot) along a component, entering first at ``start``."""
    cur = start
    while True:
        yield cur
        i, s = cur
        out = (s + 2) % 4
        nxt = _other(occ, crossings[i][out], (i, out))
        if nxt == start:
            return
        cur = nxt


def _component_walks(d: LinkDiagram):
    """Walks of every component with crossings, as lists of (crossing, entry slot).

    Oriented diagrams are walked along their orientation; unoriented ones in a
    deterministic default direction.  Components are ordered by the smallest
    crossing index they touch.
    """
    cr = d.crossings
    occ = _occurrences(cr)
    seen = set()
    walks = []
    for i, c in enumerate(cr):
        for s in range(4):
            if (i, s) in seen:
                continue
            if d.signs is not None:
                if s not in _in_slots(c, d.signs[i]):
                    continue
                start = (i, s)
            else:
                # enter at s, i.e. arrive along the edge at slot s
                start = (i, s)
            walk = list(_traverse_unoriented(cr, occ, start))
            for (j, t) in walk:
                seen.add((j, t))
                seen.add((j, (t + 2) % 4))
            walks.append(walk)
    return walks


def components(d: LinkDiagram):
    """Return (count, labels) where labels maps each crossing slot to its component.

    The mapping is ``{(crossing, slot): component}``.  Crossingless circles are
    numbered after all other components.
    """
    walks = _component_walks(d)
    label = {}
    for k, walk in enumerate(walks):
        for (i, s) in walk:
            label[(i, s)] = k
            label[(i, (s + 2) % 4)] = k
    return len(walks) + d.loops, label


def component_count(d: LinkDiagram) -> int:
    return len(_component_walks(d)) + d.loops


def _strand_components(d: LinkDiagram):
    """Per crossing, (component of under-strand, component of over-strand)."""
    _, lab = components(d)
    return [(lab[(i, 0)], lab[(i, 1)]) for i in range(len(d.crossings))]


# ---------------------------------------------------------------------------
# orientation

def _apply_orientation(crossings, in_under: dict, in_over: dict):
    out, signs = [], []
    for i, c in enumerate(crossings):
        u, o = in_under[i], in_over[i]
        if u == 2:
            c = (c[2], c[3], c[0], c[1])
            o = (o + 2) % 4
        out.append(tuple(c))
        signs.append(1 if o == 3 else -1)
    return tuple(out), tuple(signs)


def orient(d: LinkDiagram, reverse: Iterable[int] = (), starts=None) -> LinkDiagram:
    """Orient every component.

    By default components follow their existing orientation (oriented input)
    or the default walk direction (unoriented input).  ``reverse`` lists
    component indices to flip.  ``starts`` optionally gives, per component, a
    (crossing, slot) at which that component must *enter* a crossing; it
    overrides the default direction for the component containing it.
    """
    walks = _component_walks(d)
    reverse = set(reverse)
    if starts:
        comp_of = {}
        for k, walk in enumerate(walks):
            for (i, s) in walk:
                comp_of[(i, s)] = (k, True)
                comp_of[(i, (s + 2) % 4)] = (k, False)
        for st in starts:
            k, forward = comp_of[tuple(st)]
            if forward:
                reverse.discard(k)
            else:
                reverse.add(k)
    in_under, in_over = {}, {}
    for k, walk in enumerate(walks):
        for (i, s) in walk:
            entry = (s + 2) % 4 if k in reverse else s
            if entry % 2 == 0:
                in_under[i] = entry
            else:
                in_over[i] = entry
    cr, signs = _apply_orientation(d.crossings, in_under, in_over)
    return LinkDiagram(cr, signs, d.loops)


def reverse_component(d: LinkDiagram, k: int) -> LinkDiagram:
    if not d.oriented:
        raise DiagramError("reverse_component needs an oriented diagram")
    n = component_count(d)
    if not 0 <= k < n:
        raise DiagramError(f"no component {k}")
    return orient(d, reverse=[k])


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Switch every crossing."""
    for i in range(len(d.crossings)):
        d = switch_crossing(d, i)
    return d


# ---------------------------------------------------------------------------
# writhe and linking

def _need_oriented(d: LinkDiagram, what: str) -> None:
    if not d.oriented:
        raise DiagramError(f"{what} needs an oriented diagram")


def writhe(d: LinkDiagram) -> int:
    _need_oriented(d, "writhe")
    return sum(d.signs)


def self_writhe(d: LinkDiagram) -> int:
    """Sum of signs of crossings between a component and itself."""
    if not d.oriented:
        d = orient(d)
    comps = _strand_components(d)
    return sum(s for s, (u, o) in zip(d.signs, comps) if u == o)


def linking_number(d: LinkDiagram, a: int, b: int) -> int:
    _need_oriented(d, "linking_number")
    if a == b:
        raise DiagramError("linking number needs two distinct components")
    comps = _strand_components(d)
    total = sum(s for s, (u, o) in zip(d.signs, comps) if {u, o} == {a, b})
    return total // 2


def linking_matrix(d: LinkDiagram):
    _need_oriented(d, "linking_matrix")
    n = component_count(d)
    m = [[0] * n for _ in range(n)]
    for s, (u, o) in zip(d.signs, _strand_components(d)):
        if u != o:
            m[u][o] += s
            m[o][u] += s
    return [[x // 2 for x in row] for row in m]


def total_linking(d: LinkDiagram) -> int:
    m = linking_matrix(d)
    return sum(m[i][j] for i in range(len(m)) for j in range(i + 1, len(m)))


# ---------------------------------------------------------------------------
# local surgery

def _merge(crossings, pairs, loops: int):
    """Identify edge labels in ``pairs`` and drop labels with no remaining use.

    Returns (crossings, loops, relabel) where relabel maps every old label to
    its new label (or None when it became a free circle).
    """
    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb, key=_labkey)] = min(ra, rb, key=_labkey)
    used: dict = {}
    for c in crossings:
        for lab in c:
            r = find(lab)
            used[r] = used.get(r, 0) + 1
    touched = {find(x) for p in pairs for x in p}
    new_loops = sum(1 for r in touched if used.get(r, 0) == 0)
    out = tuple(tuple(find(lab) for lab in c) for c in crossings)
    relabel = {}
    for p in pairs:
        for x in p:
            r = find(x)
            relabel[x] = r if used.get(r, 0) else None
    return out, loops + new_loops, relabel


def _labkey(x):
    return (0, x) if isinstance(x, int) else (1, repr(x))


def _check_index(d, i):
    if not 0 <= i < len(d.crossings):
        raise DiagramError(f"no crossing {i}")


def switch_crossing(d: LinkDiagram, i: int) -> LinkDiagram:
    _check_index(d, i)
    cr = list(d.crossings)
    a, b, c, e = cr[i]
    if d.signs is None:
        cr[i] = (b, c, e, a)
        return LinkDiagram(cr, None, d.loops)
    signs = list(d.signs)
    if signs[i] > 0:  # over-strand enters at slot 3
        cr[i] = (e, a, b, c)
    else:
        cr[i] = (b, c, e, a)
    signs[i] = -signs[i]
    return LinkDiagram(cr, signs, d.loops)


def _remove(d: LinkDiagram, idx: Sequence[int], pairs):
    keep = [k for k in range(len(d.crossings)) if k not in set(idx)]
    cr = [d.crossings[k] for k in keep]
    signs = None if d.signs is None else [d.signs[k] for k in keep]
    cr, loops, relabel = _merge(cr, pairs, d.loops)
    return LinkDiagram(cr, signs, loops), relabel


def smooth_oriented(d: LinkDiagram, i: int, with_relabel: bool = False):
    _need_oriented(d, "smooth_oriented")
    _check_index(d, i)
    a, b, c, e = d.crossings[i]
    pairs = [(a, b), (e, c)] if d.signs[i] > 0 else [(a, e), (b, c)]
    out, relabel = _remove(d, [i], pairs)
    return (out, relabel) if with_relabel else out


def smooth_unoriented(d: LinkDiagram, i: int, which: int | None = None, with_relabel=False):
    """The smoothing that does not respect orientation (or, for unoriented
    input, smoothing ``which`` in {0, 1}: 0 joins slots 0-1 and 2-3, 1 joins 0-3 and 1-2).
    """
    _check_index(d, i)
    a, b, c, e = d.crossings[i]
    if which is None:
        _need_oriented(d, "smooth_unoriented without an explicit smoothing")
        which = 1 if d.signs[i] > 0 else 0
    pairs = [(a, b), (c, e)] if which == 0 else [(a, e), (b, c)]
    base = d.unoriented()
    out, relabel = _remove(base, [i], pairs)
    return (out, relabel) if with_relabel else out


def crossing_case(d: LinkDiagram, i: int) -> CrossingRef:
    """Classify crossing ``i`` and compute the auxiliary linking number.

    Case 1 (one component): the value is the linking number, in the oriented
    smoothing, of the component through the under-strand's exit with the rest.
    Case 2 (two components): the value is the linking number of the
    under-strand's component with the rest of the link made positive at ``i``.
    """
    _need_oriented(d, "crossing_case")
    _check_index(d, i)
    comps = _strand_components(d)
    u, o = comps[i]
    if u == o:
        exit_label = d.crossings[i][2]
        smoothed, relabel = smooth_oriented(d, i, with_relabel=True)
        target = relabel.get(exit_label, exit_label)
        return CrossingRef(i, 1, _component_link_with_rest(smoothed, target))
    plus = d if d.signs[i] > 0 else switch_crossing(d, i)
    return CrossingRef(i, 2, _component_link_with_rest(plus, d.crossings[i][0]))


def _component_link_with_rest(d: LinkDiagram, label) -> int:
    if label is None:
        return 0
    n, lab = components(d)
    occ = _occurrences(d.crossings)
    k = lab[occ[label][0]]
    m = linking_matrix(d)
    return sum(m[k][j] for j in range(n) if j != k)


def linf_oriented(d: LinkDiagram, i: int):
    """The unoriented smoothing at ``i`` (of the positive version of ``d``),
    oriented by keeping every edge's direction except on one reversed part:
    in case 1 the oriented-smoothing component through the under-strand's
    exit, in case 2 the under-strand's component.  Returns (diagram, ref).
    """
    ref = crossing_case(d, i)
    plus = d if d.signs[i] > 0 else switch_crossing(d, i)
    a, b, c, e = plus.crossings[i]
    if ref.case == 1:
        smoothed, relabel = smooth_oriented(plus, i, with_relabel=True)
        target = relabel.get(c, c)
        if target is None:
            flipped = {c, e}
        else:
            _, lab = components(smoothed)
            occ = _occurrences(smoothed.crossings)
            k = lab[occ[target][0]]
            new_labels = {lab_ for lab_, places in occ.items() if lab[places[0]] == k}
            flipped = {x for x in plus.labels() if relabel.get(x, x) in new_labels}
    else:
        _, lab = components(plus)
        occ = _occurrences(plus.crossings)
        k = lab[(i, 0)]
        flipped = {x for x, places in occ.items() if lab[places[0]] == k}
    heads = set()
    for j, (cc, sg) in enumerate(zip(plus.crossings, plus.signs)):
        for s in _in_slots(cc, sg):
            heads.add((j, s))
    out = smooth_unoriented(plus, i, 1)
    keep = [j for j in range(len(plus.crossings)) if j != i]
    in_under, in_over = {}, {}
    for nj, j in enumerate(keep):
        for s in range(4):
            if ((j, s) in heads) != (plus.crossings[j][s] in flipped):
                (in_under if s % 2 == 0 else in_over)[nj] = s
    cr, signs = _apply_orientation(out.crossings, in_under, in_over)
    return LinkDiagram(cr, signs, out.loops), ref


# ---------------------------------------------------------------------------
# builder

class Builder:
    """Assemble a diagram from crossings whose ports are joined by wires.

    Wires are integer ids; :meth:`join` identifies two wires.  A crossing is
    added with four wire ids listed counterclockwise, under-strand at 0 and 2.
    """

    def __init__(self):
        self._n = 0
        self._parent: dict = {}
        self.crossings: list = []
        self.port: dict = {}  # wire id -> list of (crossing, slot)
        self.extra_loops = 0

    def wire(self) -> int:
        self._n += 1
        return self._n

    def find(self, x):
        p = self._parent
        while p.get(x, x) != x:
            p[x] = p.get(p[x], p[x])
            x = p[x]
        return x

    def join(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[max(ra, rb)] = min(ra, rb)

    def crossing(self, ports) -> int:
        k = len(self.crossings)
        self.crossings.append(tuple(ports))
        for s, w in enumerate(ports):
            self.port.setdefault(w, []).append((k, s))
        return k

    def finish(self, closed_wires: Iterable[int] = ()) -> LinkDiagram:
        """Resolve wires to labels.  ``closed_wires`` lists representatives of
        classes that may be crossingless circles."""
        roots = {}
        cr = []
        for c in self.crossings:
            row = []
            for w in c:
                r = self.find(w)
                roots.setdefault(r, len(roots) + 1)
                row.append(roots[r])
            cr.append(tuple(row))
        used = {self.find(w) for c in self.crossings for w in c}
        free = {self.find(w) for w in closed_wires} - used
        return LinkDiagram(cr, None, len(free) + self.extra_loops)

    def entry(self, wire: int):
        """The (crossing, slot) registered for a wire id (it must be unique)."""
        (p,) = self.port[wire]
        return p


def braid_crossing(b: Builder, left_in, right_in, sign: int):
    """Add a braid-generator crossing with strands travelling upward.

    Returns (left_out, right_out, crossing index).  A positive generator has
    the strand from bottom-left to top-right on top.
    """
    nw, ne = b.wire(), b.wire()
    if sign > 0:
        k = b.crossing((right_in, ne, nw, left_in))
    else:
        k = b.crossing((left_in, right_in, ne, nw))
    return nw, ne, k


# ---------------------------------------------------------------------------
# annulus boundaries (blackboard 2-cables)

def _cable(d: LinkDiagram, comps_to_cable: dict, twist_label_of: dict):
    """Blackboard 2-parallel of the given components with reversed copies.

    ``comps_to_cable`` maps component index -> twist count t; the inserted
    twist is ``sigma^{2t}`` on the pair (copy, reversed copy).
    """
    b = Builder()
    comps = _strand_components(d)
    n, lab = components(d)
    head, tail = {}, {}

    def hw(e, side):
        key = (e, side)
        if key not in head:
            head[key] = b.wire()
        return head[key]

    def tw(e, side):
        key = (e, side)
        if key not in tail:
            tail[key] = b.wire()
        return tail[key]

    for i, (c, s) in enumerate(zip(d.crossings, d.signs)):
        a, bb, cc, dd = c
        iv_m, iv_p, ih_m, ih_p = b.wire(), b.wire(), b.wire(), b.wire()
        if s > 0:
            w_hm, e_hm = hw(dd, "R"), tw(bb, "R")
            w_hp, e_hp = hw(dd, "L"), tw(bb, "L")
        else:
            w_hm, e_hm = tw(dd, "L"), hw(bb, "L")
            w_hp, e_hp = tw(dd, "R"), hw(bb, "R")
        # ports (S, E, N, W); vertical strands pass under
        b.crossing((hw(a, "L"), ih_m, iv_m, w_hm))
        b.crossing((hw(a, "R"), e_hm, iv_p, ih_m))
        b.crossing((iv_m, ih_p, tw(cc, "L"), w_hp))
        b.crossing((iv_p, e_hp, tw(cc, "R"), ih_p))

    for e in d.labels():
        k = lab[_occurrences(d.crossings)[e][0]]
        t = comps_to_cable.get(k)
        if t is None:
            continue
        if e == twist_label_of.get(k) and t:
            left, right = b.wire(), b.wire()
            b.join(left, tw(e, "L"))
            b.join(right, tw(e, "R"))
            for _ in range(2 * abs(t)):
                left, right, _k = braid_crossing(b, left, right, 1 if t > 0 else -1)
            b.join(left, hw(e, "L"))
            b.join(right, hw(e, "R"))
        else:
            b.join(tw(e, "L"), hw(e, "L"))
            b.join(tw(e, "R"), hw(e, "R"))
    return b, head, tail


def boundary_of_annuli(d: LinkDiagram, framing: dict) -> LinkDiagram:
    """Oriented diagram of the boundary of annuli A(K_i, f_i) for the framed
    components ``framing = {component: f}``; other components are deleted.

    Each annulus boundary is K_i together with a pushed-off copy carrying the
    opposite orientation, linked with K_i exactly -f_i times.
    """
    if not d.oriented:
        d = orient(d)
    n = component_count(d)
    for k in framing:
        if not 0 <= k < n:
            raise DiagramError(f"no component {k}")
    drop = [k for k in range(n) if k not in framing]
    if drop:
        d, remap = delete_components(d, drop, with_map=True)
        framing = {remap[k]: f for k, f in framing.items()}
    d, framing = _kink_free_circles(d, framing)
    n_walks = len(_component_walks(d))
    w = [0] * n_walks
    for s, (u, o) in zip(d.signs, _strand_components(d)):
        if u == o:
            w[u] += s
    _, lab = components(d)
    occ = _occurrences(d.crossings)
    twists, twist_label = {}, {}
    for k in range(n_walks):
        # the reversed copy turns sigma^{2t} into t negative full twists
        twists[k] = framing[k] - w[k]
        twist_label[k] = min((e for e in occ if lab[occ[e][0]] == k), key=_labkey)
    b, head, tail = _cable(d, twists, twist_label)
    starts = []
    for k in range(n_walks):
        e = twist_label[k]
        starts.append(b.entry(head[(e, "L")]))
        starts.append(b.entry(tail[(e, "R")]))
    return orient(b.finish(), starts=starts)


def _kink_free_circles(d: LinkDiagram, framing: dict):
    """Replace crossingless circles by a one-crossing curl so every component
    has an edge to cable along."""
    if not d.loops:
        return d, framing
    n_walks = len(_component_walks(d))
    d = _relabel_ints(d)
    top = max(d.labels(), default=0)
    cr, signs = list(d.crossings), list(d.signs)
    for j in range(d.loops):
        a, c = top + 2 * j + 1, top + 2 * j + 2
        cr.append((a, a, c, c))
    raw = LinkDiagram(cr, None, 0)
    # keep the old crossings' orientation, orient the curls by default
    out = orient(raw, starts=_entry_slots(d))
    framing = dict(framing)
    return out, framing


def _entry_slots(d: LinkDiagram):
    return [walk[0] for walk in _component_walks(d)]


def two_cable_boundary(dK: LinkDiagram, f: int) -> LinkDiagram:
    """Oriented diagram of the boundary of A(K, f) for a knot diagram."""
    if component_count(dK) != 1:
        raise DiagramError("two_cable_boundary needs a knot diagram")
    out = boundary_of_annuli(dK, {0: f})
    if component_count(out) != 2 or linking_matrix(out)[0][1] != -f:
        raise DiagramError("annulus boundary construction failed its linking check")
    return out


def delete_components(d: LinkDiagram, drop: Iterable[int], with_map: bool = False):
    """Remove whole components.  Returns the diagram and, if asked, a map from
    surviving old component indices to new ones."""
    drop = set(drop)
    n, lab = components(d)
    walks_n = n - d.loops
    idx, pairs = [], []
    for i, c in enumerate(d.crossings):
        u, o = lab[(i, 0)], lab[(i, 1)]
        if u in drop and o in drop:
            idx.append(i)
        elif u in drop:
            idx.append(i)
            pairs.append((c[1], c[3]))
        elif o in drop:
            idx.append(i)
            pairs.append((c[0], c[2]))
    keep = [k for k in range(len(d.crossings)) if k not in set(idx)]
    cr = [d.crossings[k] for k in keep]
    signs = None if d.signs is None else [d.signs[k] for k in keep]
    cr, loops, _ = _merge(cr, pairs, 0)
    # _merge counts circles created from surviving components only
    loops_kept = sum(1 for k in range(walks_n, n) if k not in drop)
    out = LinkDiagram(cr, signs, loops + loops_kept)
    if not with_map:
        return out
    # survivors keep their relative order: walks first, then loops
    survivors_walk = [k for k in range(walks_n) if k not in drop]
    survivors_loop = [k for k in range(walks_n, n) if k not in drop]
    new_n, new_lab = components(out)
    remap = {}
    # match walk components through a surviving crossing slot
    for k in survivors_walk:
        hit = None
        for j, old in enumerate(keep):
            for s in range(4):
                if lab[(old, s)] == k:
                    hit = new_lab[(j, s)]
                    break
            if hit is not None:
                break
        remap[k] = hit
    # components that lost all crossings became loops; assign them after walks
    walk_new = len(_component_walks(out))
    nxt = walk_new
    for k in survivors_walk:
        if remap[k] is None:
            remap[k] = nxt
            nxt += 1
    for k in survivors_loop:
        remap[k] = nxt
        nxt += 1
    return out, remap


# ---------------------------------------------------------------------------
# connected sum

def connected_sum(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    for d in (d1, d2):
        if component_count(d) != 1:
            raise DiagramError("connected_sum needs knot diagrams")
    d1 = d1 if d1.oriented else orient(d1)
    d2 = d2 if d2.oriented else orient(d2)
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    r1 = _relabel_ints(d1)
    r2 = _relabel_ints(d2, offset=max(_relabel_ints(d1).labels()) + 2)
    e1 = min(r1.labels())
    e2 = min(r2.labels())
    new1, new2 = max(r2.labels()) + 1, max(r2.labels()) + 2
    cr = [list(c) for c in r1.crossings] + [list(c) for c in r2.crossings]
    signs = list(r1.signs) + list(r2.signs)
    n1 = len(r1.crossings)

    def tail_head(e, lo, hi):
        tail = head = None
        for i in range(lo, hi):
            for s in range(4):
                if cr[i][s] == e:
                    if s in _in_slots(cr[i], signs[i]) and head is None:
                        head = (i, s)
                    else:
                        tail = (i, s)
        return tail, head

    t1, h1 = tail_head(e1, 0, n1)
    t2, h2 = tail_head(e2, n1, len(cr))
    cr[t1[0]][t1[1]] = new1
    cr[h2[0]][h2[1]] = new1
    cr[t2[0]][t2[1]] = new2
    cr[h1[0]][h1[1]] = new2
    return LinkDiagram(cr, signs, 0)


def _relabel_ints(d: LinkDiagram, offset: int = 1) -> LinkDiagram:
    order = {}
    for c in d.crossings:
        for lab in c:
            order.setdefault(lab, len(order) + offset)
    return LinkDiagram([tuple(order[x] for x in c) for c in d.crossings], d.signs, d.loops)


# ---------------------------------------------------------------------------
# simplification

def _find_kink(d: LinkDiagram):
    for i, c in enumerate(d.crossings):
        for s in range(4):
            if c[s] == c[(s + 1) % 4]:
                return i, s
    return None


def _kink_sign(c, s) -> int:
    """Writhe sign of a kink whose loop joins slots s and s+1 (orientation-free)."""
    # leave through slot s, come back through s+1 (or the reverse; same sign)
    if s % 2 == 0:
        under_out, over_in = s, (s + 1) % 4
        under_in = (under_out + 2) % 4
    else:
        over_out, under_in = s, (s + 1) % 4
        over_in = (over_out + 2) % 4
    rel = (over_in - under_in) % 4
    return 1 if rel == 3 else -1


def _find_bigon(d: LinkDiagram):
    occ = _occurrences(d.crossings)
    for lab1, ((i, s), (j, t)) in occ.items():
        if i == j or s % 2 == 0 or t % 2 == 0:
            continue
        # lab1 is over at both ends; look for the under edge of the bigon
        for si, tj in (((s + 1) % 4, (t - 1) % 4), ((s - 1) % 4, (t + 1) % 4)):
            lab2 = d.crossings[i][si]
            if lab2 == d.crossings[j][tj] and lab2 != lab1:
                o2 = occ[lab2]
                if set(o2) == {(i, si), (j, tj)}:
                    return i, s, j, t
    return None


def simplify(d: LinkDiagram, with_kinks: bool = False):
    """Remove first-Reidemeister kinks and second-Reidemeister bigons.

    Returns the simplified diagram; with ``with_kinks`` also the total writhe
    of the removed kinks (so ``writhe(d) == writhe(out) + kinks``).
    """
    kinks = 0
    while True:
        k = _find_kink(d)
        if k is not None:
            i, s = k
            c = d.crossings[i]
            kinks += _kink_sign(c, s)
            d, _ = _remove(d, [i], [(c[(s + 2) % 4], c[(s + 3) % 4])])
            continue
        bg = _find_bigon(d)
        if bg is not None:
            i, s, j, t = bg
            ci, cj = d.crossings[i], d.crossings[j]
            pairs = [
                (ci[0], ci[2]), (ci[1], ci[3]), (cj[0], cj[2]), (cj[1], cj[3]),
            ]
            d, _ = _remove(d, [i, j], pairs)
            continue
        break
    return (d, kinks) if with_kinks else d


def split_pieces(d: LinkDiagram):
    """Split into connected crossing-graph pieces; returns (pieces, loops)."""
    n = len(d.crossings)
    if n == 0:
        return [], d.loops
    occ = _occurrences(d.crossings)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, _), (j, _) in occ.values():
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    if len(groups) == 1:
        return [LinkDiagram(d.crossings, d.signs, 0)], d.loops
    pieces = []
    for idx in groups.values():
        cr = [d.crossings[i] for i in idx]
        sg = None if d.signs is None else [d.signs[i] for i in idx]
        pieces.append(LinkDiagram(cr, sg, 0))
    return pieces, d.loops


# ---------------------------------------------------------------------------
# canonical codes

def _piece_code(crossings, signs):
    n = len(crossings)
    occ = _occurrences(crossings)
    best = None
    rots = (0,) if signs is not None else (0, 2)
    for root in range(n):
        for r0 in rots:
            ids = {root: 0}
            rot = {root: r0}
            order = [root]
            code = []
            q = 0
            while q < len(order):
                i = order[q]
                q += 1
                r = rot[i]
                row = [0 if signs is None else signs[i]]
                for k in range(4):
                    s = (k + r) % 4
                    j, t = _other(occ, crossings[i][s], (i, s))
                    if j not in ids:
                        ids[j] = len(order)
                        order.append(j)
                        rot[j] = 0 if signs is not None else t - (t % 2)
                    row.append(ids[j])
                    row.append((t - rot[j]) % 4)
                code.append(tuple(row))
                if best is not None and tuple(code) > best[: len(code)]:
                    break
            else:
                code = tuple(code)
                if best is None or code < best:
                    best = code
    return best


def canonical_key(d: LinkDiagram):
    """Hashable code invariant under relabeling (and under-slot rotation)."""
    pieces, loops = split_pieces(d)
    codes = sorted(_piece_code(p.crossings, p.signs) for p in pieces)
    return (d.oriented, loops, tuple(codes))


def canonical_code(d: LinkDiagram) -> bytes:
    oriented, loops, codes = canonical_key(d)
    parts = ["O" if oriented else "U", str(loops)]
    for code in codes:
        parts.append(";".join(",".join(str(x) for x in row) for row in code))
    return "|".join(parts).encode()


def decode_code(code: bytes) -> LinkDiagram:
    text = code.decode()
    parts = text.split("|")
    oriented = parts[0] == "O"
    loops = int(parts[1])
    crossings, signs = [], []
    label = 0
    for piece in parts[2:]:
        rows = [tuple(int(x) for x in row.split(",")) for row in piece.split(";")]
        base = len(crossings)
        slots = {}
        for i, row in enumerate(rows):
            for k in range(4):
                j, t = row[1 + 2 * k], row[2 + 2 * k]
                if (i, k) not in slots:
                    label += 1
                    slots[(i, k)] = label
                    slots[(j, t)] = label
        for i, row in enumerate(rows):
            crossings.append(tuple(slots[(i, k)] for k in range(4)))
            signs.append(row[0])
    return LinkDiagram(crossings, signs if oriented else None, loops)


# ---------------------------------------------------------------------------
# descending diagrams

def _walks_for_descent(d: LinkDiagram):
    return _component_walks(d)


def first_bad_crossing(d: LinkDiagram):
    """First crossing met on its under-strand before its over-strand, walking
    components in order from their basepoints; None if the diagram is descending."""
    seen = set()
    for walk in _component_walks(d):
        for (i, s) in walk:
            if i in seen:
                continue
            seen.add(i)
            if s % 2 == 0:
                return i
    return None


def is_unlink_descending(d: LinkDiagram, basepoints=None, order=None) -> bool:
    """Descending check.  ``basepoints`` optionally maps component index to a
    (crossing, entry slot) start; ``order`` is a permutation of components."""
    walks = _component_walks(d)
    if basepoints or order:
        cr = d.crossings
        occ = _occurrences(cr)
        new = []
        for k, walk in enumerate(walks):
            if basepoints and k in basepoints:
                start = tuple(basepoints[k])
                if start not in walk:
                    raise DiagramError("basepoint is not an entry point of the component")
                walk = list(_traverse_unoriented(cr, occ, start))
            new.append(walk)
        walks = [new[k] for k in order] if order else new
    seen = set()
    for walk in walks:
        for (i, s) in walk:
            if i in seen:
                continue
            seen.add(i)
            if s % 2 == 0:
                return False
    return True


# ---------------------------------------------------------------------------
# PD text format

_X_RE = re.compile(r"X\[\s*(-?\w+)\s*,\s*(-?\w+)\s*,\s*(-?\w+)\s*,\s*(-?\w+)\s*\]")


def to_pd_text(d: LinkDiagram) -> str:
    lines = [f"X[{','.join(str(x) for x in c)}]" for c in d.crossings]
    if d.loops:
        lines.append(f"Loops[{d.loops}]")
    if d.signs is not None:
        lines.append("Signs[" + ",".join("+" if s > 0 else "-" for s in d.signs) + "]")
    return "\n".join(lines) + "\n"


def from_pd_text(text: str) -> LinkDiagram:
    crossings, signs, loops = [], None, 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.lower() == "pd":
            continue
        if line.startswith("PD[") and line.endswith("]"):
            line = line[3:-1]
        found = False
        for m in _X_RE.finditer(line):
            crossings.append(tuple(_parse_label(x) for x in m.groups()))
            found = True
        if found:
            continue
        m = re.fullmatch(r"Loops\[\s*(\d+)\s*\]", line)
        if m:
            loops = int(m.group(1))
            continue
        m = re.fullmatch(r"Signs\[([^\]]*)\]", line)
        if m:
            body = [x.strip() for x in m.group(1).split(",") if x.strip()]
            try:
                signs = [{"+": 1, "-": -1, "1": 1, "-1": -1, "+1": 1}[x] for x in body]
            except KeyError as exc:
                raise DiagramError(f"line {lineno}: bad sign {exc.args[0]!r}") from None
            continue
        raise DiagramError(f"line {lineno}, column 1: cannot parse {raw!r}")
    return LinkDiagram(crossings, signs, loops)


def _parse_label(x: str):
    try:
        return int(x)
    except ValueError:
        return x


def orient_from_labels(d: LinkDiagram) -> LinkDiagram:
    """Orient a tabulated PD code whose labels increase along each component
    (the over-strand of ``X[i,j,k,l]`` runs from the smaller to the larger of
    j and l, wrapping at the component's maximum label)."""
    occ = _occurrences(d.crossings)
    in_under, in_over = {}, {}
    for i, c in enumerate(d.crossings):
        in_under[i] = 0
        j, l = c[1], c[3]
        if l - j == 1 or j - l > 1:
            in_over[i] = 1
        else:
            in_over[i] = 3
    cr, signs = _apply_orientation(d.crossings, in_under, in_over)
    return LinkDiagram(cr, signs, d.loops)
