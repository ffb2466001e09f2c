"""Fences: vertical posts joined by horizontal wires.

Coordinates are combinatorial; only their order matters, and every
construction renumbers them to consecutive integers.  In the rotated frame
xi = x - y, eta = x + y, wires run up and to the right and posts run up and
to the left, so a fence is a diagram whose strands are monotone in eta.  In
the link diagram of a fence, wires pass over posts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .braid import Band, BandRepresentation, BraidWord, PlatPlan
from .diagram import Builder, LinkDiagram, orient, writhe

__all__ = [
    "FenceError",
    "Post",
    "Wire",
    "Fence",
    "square_fence",
    "band_rep_to_fence",
    "fence_to_band_rep",
    "is_annular",
    "fence_graph_components",
    "fence_to_diagram",
    "fence_writhe",
    "fence_m",
    "fence_to_positive_plat",
    "plat_to_fence",
    "fence_connected_sum",
]


class FenceError(ValueError):
    pass


@dataclass(frozen=True)
class Post:
    x: int
    y0: int
    y1: int


@dataclass(frozen=True)
class Wire:
    x0: int
    x1: int
    y: int
    charge: int = 1


@dataclass(frozen=True)
class Fence:
    """A charged fence; every wire carries a charge of +1 or -1."""

    posts: tuple
    wires: tuple = ()

    def __post_init__(self):
        posts = tuple(p if isinstance(p, Post) else Post(*p) for p in self.posts)
        wires = tuple(w if isinstance(w, Wire) else Wire(*w) for w in self.wires)
        object.__setattr__(self, "posts", posts)
        object.__setattr__(self, "wires", wires)
        if not posts:
            raise FenceError("a fence needs at least one post")
        xs = [p.x for p in posts]
        if len(set(xs)) != len(xs):
            raise FenceError("post abscissae must be distinct")
        ys = [w.y for w in wires]
        if len(set(ys)) != len(ys):
            raise FenceError("wire ordinates must be distinct")
        by_x = {p.x: p for p in posts}
        for p in posts:
            if p.y0 > p.y1:
                raise FenceError(f"post at x={p.x} has y0 > y1")
        for w in wires:
            if w.charge not in (1, -1):
                raise FenceError(f"wire at y={w.y} has charge {w.charge}")
            if not w.x0 < w.x1:
                raise FenceError(f"wire at y={w.y} needs x0 < x1")
            for x in (w.x0, w.x1):
                p = by_x.get(x)
                if p is None or not p.y0 <= w.y <= p.y1:
                    raise FenceError(f"wire at y={w.y} has an endpoint at x={x} that is not on a post")

    @property
    def charges(self) -> dict:
        return {w.y: w.charge for w in self.wires}

    def post_at(self, x) -> Post:
        for p in self.posts:
            if p.x == x:
                return p
        raise KeyError(x)

    def normalized(self) -> "Fence":
        """Renumber abscissae and ordinates to consecutive integers from 1."""
        xs = sorted({p.x for p in self.posts})
        ys = sorted({p.y0 for p in self.posts} | {p.y1 for p in self.posts} | {w.y for w in self.wires})
        rx = {x: k for k, x in enumerate(xs, 1)}
        ry = {y: k for k, y in enumerate(ys, 1)}
        posts = sorted((Post(rx[p.x], ry[p.y0], ry[p.y1]) for p in self.posts), key=lambda p: p.x)
        wires = sorted((Wire(rx[w.x0], rx[w.x1], ry[w.y], w.charge) for w in self.wires), key=lambda w: w.y)
        return Fence(tuple(posts), tuple(wires))

    def trimmed(self) -> "Fence":
        """Shorten each post to the span of the wire endpoints on it."""
        posts = []
        for p in self.posts:
            ys = [w.y for w in self.wires if p.x in (w.x0, w.x1)]
            posts.append(Post(p.x, min(ys), max(ys)) if ys else Post(p.x, p.y0, p.y0))
        return Fence(tuple(posts), self.wires)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "posts": [{"x": p.x, "y0": p.y0, "y1": p.y1} for p in self.posts],
            "wires": [{"x0": w.x0, "x1": w.x1, "y": w.y, "charge": w.charge} for w in self.wires],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "Fence":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            posts = [Post(int(p["x"]), int(p["y0"]), int(p["y1"])) for p in data["posts"]]
            wires = [
                Wire(int(w["x0"]), int(w["x1"]), int(w["y"]), int(w.get("charge", 1)))
                for w in data.get("wires", [])
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise FenceError(f"malformed fence JSON: {exc}") from None
        return cls(tuple(posts), tuple(wires))


def square_fence() -> Fence:
    return Fence((Post(1, 1, 2), Post(2, 1, 2)), (Wire(1, 2, 1), Wire(1, 2, 2)))


# ---------------------------------------------------------------------------
# band representations

def band_rep_to_fence(b: BandRepresentation, trim: bool = False) -> Fence:
    """Posts {s} x [1, k], one wire [i(t), j(t)] x {t} per band, charged by its sign.

    With ``trim`` the posts are shortened to the span of their wires, which
    makes the fence of an annular band representation annular.
    """
    k = len(b.bands)
    top = max(k, 1)
    posts = tuple(Post(s, 1, top) for s in range(1, b.n + 1))
    wires = tuple(Wire(band.i, band.j, t, band.sign) for t, band in enumerate(b.bands, 1))
    f = Fence(posts, wires)
    return f.trimmed() if trim else f


def fence_to_band_rep(f: Fence) -> BandRepresentation:
    rx = {x: k for k, x in enumerate(sorted(p.x for p in f.posts), 1)}
    bands = [Band(rx[w.x0], rx[w.x1], w.charge) for w in sorted(f.wires, key=lambda w: w.y)]
    return BandRepresentation(len(f.posts), bands)


# ---------------------------------------------------------------------------
# annularity and the graph

def _annular_problem(f: Fence):
    ends: dict = {}
    for k, w in enumerate(f.wires):
        ends.setdefault((w.x0, w.y), []).append(k)
        ends.setdefault((w.x1, w.y), []).append(k)
    for p in f.posts:
        if p.y0 == p.y1:
            return f"post at x={p.x} has zero length"
        for y in (p.y0, p.y1):
            n = len(ends.get((p.x, y), []))
            if n != 1:
                return f"post endpoint ({p.x},{y}) meets {n} wire endpoints"
    for w in f.wires:
        for x in (w.x0, w.x1):
            p = f.post_at(x)
            if p.y0 < w.y < p.y1:
                return f"wire at y={w.y} ends inside the post at x={x}"
    return None


def is_annular(f: Fence) -> bool:
    return _annular_problem(f) is None


def _require_annular(f: Fence) -> None:
    why = _annular_problem(f)
    if why:
        raise FenceError(f"fence is not annular: {why}")


def fence_graph_components(f: Fence):
    """Return (count, labels) with labels {("post", i) | ("wire", j): circle}."""
    _require_annular(f)
    parent = list(range(len(f.posts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    idx = {p.x: i for i, p in enumerate(f.posts)}
    for w in f.wires:
        a, b = find(idx[w.x0]), find(idx[w.x1])
        if a != b:
            parent[a] = b
    roots: dict = {}
    labels = {}
    for i in range(len(f.posts)):
        labels[("post", i)] = roots.setdefault(find(i), len(roots))
    for j, w in enumerate(f.wires):
        labels[("wire", j)] = labels[("post", idx[w.x0])]
    return len(roots), labels


def _crossings(f: Fence):
    """Transversal wire/post intersections as (post index, wire index)."""
    out = []
    for i, p in enumerate(f.posts):
        for j, w in enumerate(f.wires):
            if w.x0 < p.x < w.x1 and p.y0 < w.y < p.y1:
                out.append((i, j))
    return out


def fence_to_diagram(f: Fence) -> LinkDiagram:
    """Unoriented diagram of gr(f): wires cross over posts."""
    _require_annular(f)
    b = Builder()
    cross = _crossings(f)
    on_post: dict = {}
    on_wire: dict = {}
    for i, j in cross:
        on_post.setdefault(i, []).append(j)
        on_wire.setdefault(j, []).append(i)
    # segments: post i has a chain bottom..top, wire j a chain left..right
    post_chain, wire_chain = {}, {}
    for i in range(len(f.posts)):
        post_chain[i] = [b.wire() for _ in range(len(on_post.get(i, [])) + 1)]
    for j in range(len(f.wires)):
        wire_chain[j] = [b.wire() for _ in range(len(on_wire.get(j, [])) + 1)]
    for i, p in enumerate(f.posts):
        js = sorted(on_post.get(i, []), key=lambda j: f.wires[j].y)
        for k, j in enumerate(js):
            w = f.wires[j]
            ii = sorted(on_wire[j], key=lambda t: f.posts[t].x)
            kw = ii.index(i)
            s, n = post_chain[i][k], post_chain[i][k + 1]
            west, east = wire_chain[j][kw], wire_chain[j][kw + 1]
            b.crossing((s, east, n, west))
    idx = {p.x: i for i, p in enumerate(f.posts)}
    for j, w in enumerate(f.wires):
        for x, end in ((w.x0, 0), (w.x1, -1)):
            i = idx[x]
            p = f.posts[i]
            post_end = post_chain[i][0] if w.y == p.y0 else post_chain[i][-1]
            b.join(wire_chain[j][end], post_end)
    every = [s for ch in post_chain.values() for s in ch]
    return b.finish(closed_wires=every)


def fence_writhe(f: Fence) -> int:
    count, _ = fence_graph_components(f)
    if count != 1:
        raise FenceError(f"fence writhe needs a knot, the graph has {count} circles")
    return writhe(orient(fence_to_diagram(f)))


def fence_m(f: Fence) -> int:
    """Number of local maxima of eta = x + y on gr(f)."""
    _require_annular(f)
    tops = {(p.x, p.y1) for p in f.posts}
    bottoms = {(p.x, p.y0) for p in f.posts}
    maxima = sum(1 for w in f.wires if (w.x1, w.y) in tops)
    minima = sum(1 for w in f.wires if (w.x0, w.y) in bottoms)
    if maxima != minima:
        raise FenceError(f"fence has {maxima} maxima but {minima} minima")
    return maxima


# ---------------------------------------------------------------------------
# fence -> positive plat

def _segments(f: Fence):
    """Monotone pieces as dicts with their low and high endpoints in (x, y)."""
    segs = []
    for p in f.posts:
        segs.append(("post", p.x, (p.x, p.y0), (p.x, p.y1)))
    for w in f.wires:
        segs.append(("wire", w.y, (w.x0, w.y), (w.x1, w.y)))
    return segs


def _xi_at(seg, eta: int) -> int:
    kind, c, _, _ = seg
    return 2 * c - eta if kind == "post" else eta - 2 * c


def _morse_events(f: Fence):
    """Sweep eta upward; return events ("cup"|"cap"|"x", p) with 0-based positions.

    ``("cup", p)`` inserts two strands at p, p+1; ``("cap", p)`` joins the
    strands at p, p+1; ``("x", p)`` is a positive crossing of p over p+1.
    """
    segs = _segments(f)
    low: dict = {}
    high: dict = {}
    for k, s in enumerate(segs):
        low.setdefault(s[2], []).append(k)
        high.setdefault(s[3], []).append(k)
    events = []  # (eta, xi, kind, payload)
    for pt in set(low) | set(high):
        lo, hi = low.get(pt, []), high.get(pt, [])
        eta, xi = pt[0] + pt[1], pt[0] - pt[1]
        if len(lo) == 2:
            events.append((eta, xi, "cup", tuple(lo)))
        elif len(hi) == 2:
            events.append((eta, xi, "cap", tuple(hi)))
        else:
            events.append((eta, xi, "pass", (hi[0], lo[0])))
    post_idx = {s[1]: k for k, s in enumerate(segs) if s[0] == "post"}
    wire_idx = {s[1]: k for k, s in enumerate(segs) if s[0] == "wire"}
    for i, j in _crossings(f):
        p, w = f.posts[i], f.wires[j]
        events.append((p.x + w.y, p.x - w.y, "x", (wire_idx[w.y], post_idx[p.x])))
    events.sort(key=lambda e: (e[0], e[1]))
    active: list = []
    out = []
    for eta, xi, kind, pay in events:
        if kind == "cup":
            a, b = sorted(pay, key=lambda k: 0 if segs[k][0] == "post" else 1)
            p = sum(1 for k in active if _xi_at(segs[k], eta) < xi)
            active[p:p] = [a, b]
            out.append(("cup", p))
        elif kind == "cap":
            p = active.index(pay[0])
            q = active.index(pay[1])
            if abs(p - q) != 1:
                raise FenceError("internal error: cap strands are not adjacent")
            p = min(p, q)
            del active[p:p + 2]
            out.append(("cap", p))
        elif kind == "pass":
            old, new = pay
            active[active.index(old)] = new
        else:
            wk, pk = pay
            p = active.index(wk)
            if active[p + 1] != pk:
                raise FenceError("internal error: crossing strands are not adjacent")
            active[p], active[p + 1] = pk, wk
            out.append(("x", p))
    if active:
        raise FenceError("internal error: sweep ended with open strands")
    return out


def _raise_caps(seq):
    """Move every cap above all crossings and cups, adding only positive crossings."""
    seq = list(seq)
    i = len(seq) - 1
    while i >= 0:
        if seq[i][0] != "cap":
            i -= 1
            continue
        k = i
        while k + 1 < len(seq) and seq[k + 1][0] != "cap":
            j = seq[k][1]
            kind, p = seq[k + 1]
            if kind == "x":
                if p < j - 1:
                    seq[k], seq[k + 1] = ("x", p), ("cap", j)
                    k += 1
                elif p >= j:
                    seq[k], seq[k + 1] = ("x", p + 2), ("cap", j)
                    k += 1
                else:  # the crossing of the strands on either side of the cap
                    seq[k:k + 2] = [("x", j + 1), ("x", j), ("x", j - 1), ("cap", j + 1)]
                    k += 3
            else:  # cup
                if p <= j:
                    seq[k], seq[k + 1] = ("cup", p), ("cap", j + 2)
                else:
                    seq[k], seq[k + 1] = ("cup", p + 2), ("cap", j)
                k += 1
        i -= 1
    return seq


def _rotate(seq):
    """Turn the movie upside down (rotation by pi in the plane)."""
    out = []
    n = 0
    widths = []
    for kind, p in seq:
        widths.append(n)
        n += 2 if kind == "cup" else -2 if kind == "cap" else 0
    for (kind, p), before in zip(reversed(seq), reversed(widths)):
        after = before + (2 if kind == "cup" else -2 if kind == "cap" else 0)
        if kind == "x":
            out.append(("x", after - 2 - p))
        elif kind == "cup":
            out.append(("cap", after - 2 - p))
        else:
            out.append(("cup", before - 2 - p))
    return out


def _matching(events, width_after_all: int):
    """Pairs (1-based) of the strands created by a block of cups."""
    strands: list = []
    pairs = []
    nxt = 0
    for kind, p in events:
        a, b = nxt, nxt + 1
        nxt += 2
        strands[p:p] = [a, b]
        pairs.append((a, b))
    pos = {s: k + 1 for k, s in enumerate(strands)}
    assert len(strands) == width_after_all
    return [(pos[a], pos[b]) for a, b in pairs]


def _cap_matching(events, width: int):
    strands = list(range(1, width + 1))
    pairs = []
    for _, p in events:
        pairs.append((strands[p], strands[p + 1]))
        del strands[p:p + 2]
    return pairs


def fence_to_positive_plat(f: Fence):
    """Positive word in B_{2m} and plat plan presenting gr(f), m = fence_m(f)."""
    _require_annular(f)
    m = fence_m(f)
    seq = _raise_caps(_morse_events(f))
    seq = _rotate(_raise_caps(_rotate(seq)))
    cups = [e for e in seq if e[0] == "cup"]
    xs = [e for e in seq if e[0] == "x"]
    caps = [e for e in seq if e[0] == "cap"]
    if seq != cups + xs + caps or len(cups) != m or len(caps) != m:
        raise FenceError("internal error: plat normal form not reached")
    n = 2 * m
    bottom = _matching(cups, n)
    top = _cap_matching(caps, n)
    word = BraidWord(n, [p + 1 for _, p in xs])
    return word, PlatPlan(n, bottom, top)


# ---------------------------------------------------------------------------
# positive plat -> fence

def _plat_paths(w: BraidWord, plan: PlatPlan):
    """Lattice polylines (xi, eta) of the plat drawn with slopes +-1."""
    n = w.n
    paths = {p: [(2 * p, 0)] for p in range(1, n + 1)}  # keyed by starting position
    at = {p: p for p in range(1, n + 1)}  # position -> path key
    eta = 0
    for x in w.letters:
        i = x
        for pos in range(1, n + 1):
            key = at[pos]
            xi, _ = paths[key][-1]
            if pos == i:
                paths[key] += [(xi + 1, eta + 1), (xi + 2, eta + 2)]
            elif pos == i + 1:
                paths[key] += [(xi - 1, eta + 1), (xi - 2, eta + 2)]
            else:
                paths[key] += [(xi + 1, eta + 1), (xi, eta + 2)]
        at[i], at[i + 1] = at[i + 1], at[i]
        eta += 2
    cups, caps = [], []
    for s, t in plan.bottom:
        d = t - s
        cups.append([(s + t - h, -d + h) for h in range(d, -1, -1)]
                    + [(s + t + h, -d + h) for h in range(1, d + 1)])
    for s, t in plan.top:
        d = t - s
        caps.append([(2 * s + h, eta + h) for h in range(d + 1)]
                    + [(s + t + h, eta + d - h) for h in range(1, d + 1)])
    return paths, at, cups, caps


def plat_to_fence(w: BraidWord, plan: PlatPlan) -> Fence:
    """Annular fence of a positive plat; its graph is the plat's link."""
    if not w.positive:
        raise FenceError("plat_to_fence needs a positive braid word")
    if plan.n != w.n:
        raise FenceError(f"plan on {plan.n} strands does not match a braid on {w.n}")
    paths, at, cups, caps = _plat_paths(w, plan)
    n = w.n
    pieces = list(paths.values()) + cups + caps
    nbr: dict = {}
    for pc in pieces:
        for a, b in zip(pc, pc[1:]):
            nbr.setdefault(a, []).append(b)
            nbr.setdefault(b, []).append(a)
    # walk each closed loop from a non-crossing point and cut it into straight runs
    seen_edge = set()
    runs = []
    for a0 in sorted(nbr):
        if len(nbr[a0]) != 2 or (a0, nbr[a0][0]) in seen_edge or (a0, nbr[a0][1]) in seen_edge:
            continue
        loop = [a0]
        prev, cur = a0, nbr[a0][0]
        seen_edge.update({(a0, cur), (cur, a0)})
        while cur != a0:
            loop.append(cur)
            nx = _continue(prev, cur, nbr[cur])
            seen_edge.update({(cur, nx), (nx, cur)})
            prev, cur = cur, nx
        runs.extend(_loop_runs(loop))
    return _fence_from_runs(runs)


def _continue(prev, cur, options):
    """Next lattice point along the same strand.

    At a crossing point four unit steps meet; the strand goes straight on.
    Elsewhere exactly two steps meet.
    """
    if len(options) == 2:
        return options[0] if options[1] == prev else options[1]
    d = (cur[0] - prev[0], cur[1] - prev[1])
    straight = (cur[0] + d[0], cur[1] + d[1])
    if straight not in options:
        raise FenceError("internal error: broken strand in plat layout")
    return straight


def _loop_runs(loop):
    """Split a closed lattice loop into maximal runs of one slope."""
    n = len(loop)
    slope = lambda k: (loop[(k + 1) % n][0] - loop[k][0]) * (loop[(k + 1) % n][1] - loop[k][1])
    start = next((k for k in range(n) if slope(k) != slope(k - 1)), None)
    if start is None:
        raise FenceError("internal error: straight closed loop")
    runs = []
    k = start
    for _ in range(n):
        if slope(k) != slope(k - 1):
            runs.append([loop[k]])
        runs[-1].append(loop[(k + 1) % n])
        k = (k + 1) % n
    out = []
    for r in runs:
        s = (r[1][0] - r[0][0]) * (r[1][1] - r[0][1])
        out.append(("wire" if s > 0 else "post", r[0], r[-1]))
    return out


def _fence_from_runs(runs) -> Fence:
    """Build posts and wires from straight runs, breaking coordinate ties."""
    posts, wires = [], []
    for kind, a, b in runs:
        lo, hi = (a, b) if a[1] < b[1] else (b, a)
        # (xi, eta) -> (x, y)
        pts = [((p[1] + p[0]) // 2, (p[1] - p[0]) // 2) for p in (lo, hi)]
        (xl, yl), (xh, yh) = pts
        if kind == "wire":
            wires.append({"y": yl, "x0": xl, "x1": xh, "ends": (pts[0], pts[1])})
        else:
            posts.append({"x": xl, "y0": yl, "y1": yh, "ends": (pts[0], pts[1])})
    # tie-break keys: equal coordinates are ordered by index
    pkey = {k: (p["x"], k) for k, p in enumerate(posts)}
    wkey = {k: (w["y"], k) for k, w in enumerate(wires)}
    post_at = {}
    for k, p in enumerate(posts):
        post_at[p["ends"][0]] = k
        post_at[p["ends"][1]] = k
    wire_at = {}
    for k, w in enumerate(wires):
        wire_at[w["ends"][0]] = k
        wire_at[w["ends"][1]] = k
    raw_posts = []
    for k, p in enumerate(posts):
        raw_posts.append((pkey[k], wkey[wire_at[p["ends"][0]]], wkey[wire_at[p["ends"][1]]]))
    raw_wires = []
    for k, w in enumerate(wires):
        raw_wires.append((pkey[post_at[w["ends"][0]]], pkey[post_at[w["ends"][1]]], wkey[k]))
    rx = {key: r for r, key in enumerate(sorted(pkey.values()), 1)}
    ry = {key: r for r, key in enumerate(sorted(wkey.values()), 1)}
    fence = Fence(
        tuple(Post(rx[x], ry[y0], ry[y1]) for x, y0, y1 in raw_posts),
        tuple(Wire(rx[x0], rx[x1], ry[y]) for x0, x1, y in raw_wires),
    )
    return fence.normalized()


# ---------------------------------------------------------------------------
# connected sum

def fence_connected_sum(fs) -> Fence:
    """Join knot fences left to right through a shared post (then deleted)."""
    fs = list(fs)
    if not fs:
        raise FenceError("connected sum of no fences")
    for f in fs:
        count, _ = fence_graph_components(f)
        if count != 1:
            raise FenceError(f"connected sum needs knot fences, got {count} circles")
    out = fs[0].normalized()
    for f in fs[1:]:
        out = _sum2(out, f.normalized())
    return out


def _sum2(f1: Fence, f2: Fence) -> Fence:
    p1 = max(f1.posts, key=lambda p: p.x)
    p2 = min(f2.posts, key=lambda p: p.x)
    a1, b1, a2, b2 = p1.y0, p1.y1, p2.y0, p2.y1

    def band(y, a, b):
        return 0 if y < a else 1 if y == a else 2 if y < b else 3 if y == b else 4

    # new ordinate: (band, fence, old y); merged wires share band 1 and 3
    def key1(y):
        bd = band(y, a1, b1)
        return (bd, 0, y) if bd not in (1, 3) else (bd, 0, 0)

    def key2(y):
        bd = band(y, a2, b2)
        return (bd, 1, y) if bd not in (1, 3) else (bd, 0, 0)

    shift = max(p.x for p in f1.posts)
    posts, wires = [], []
    for p in f1.posts:
        if p is not p1:
            posts.append((p.x, key1(p.y0), key1(p.y1)))
    for p in f2.posts:
        if p is not p2:
            posts.append((p.x - p2.x + shift, key2(p.y0), key2(p.y1)))
    merged = {}
    for w in f1.wires:
        if w.x1 == p1.x:
            merged[w.y == b1] = [w.x0, None, w.charge]
        else:
            wires.append((w.x0, w.x1, key1(w.y), w.charge))
    for w in f2.wires:
        x0, x1 = w.x0 - p2.x + shift, w.x1 - p2.x + shift
        if w.x0 == p2.x:
            merged[w.y == b2][1] = x1
        else:
            wires.append((x0, x1, key2(w.y), w.charge))
    for is_top, (x0, x1, charge) in merged.items():
        wires.append((x0, x1, (3 if is_top else 1, 0, 0), charge))
    ys = sorted({k for _, a, b in posts for k in (a, b)} | {w[2] for w in wires})
    ry = {k: r for r, k in enumerate(ys, 1)}
    fence = Fence(
        tuple(Post(x, ry[a], ry[b]) for x, a, b in posts),
        tuple(Wire(x0, x1, ry[y], c) for x0, x1, y, c in wires),
    )
    return fence.normalized()
