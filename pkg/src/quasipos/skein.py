"""Skein-tree evaluation of link polynomials.

Every engine uses the same strategy.  Walk the components from fixed
basepoints; the crossings first met on their under-strand are *bad*.
Switching all of them yields a descending diagram, which is an unlink, and
each switch is paid for with one smoothing of strictly fewer crossings.
Pieces are simplified and memoized by canonical code.

Conventions:

* HOMFLY: P(L+) = v z P(L0) + v^2 P(L-), P(unknot) = 1.
* R(v) = (z^{c-1} P)(v, 0).
* Kauffman, regular isotopy, mod 2: L(positive curl) = a L and
  L(D) + L(D switched) = x (L(D_A) + L(D_B)); F* = a^{-w} L.
* G^k = (x^{c-1} F*) at x = k.
"""

from __future__ import annotations

import itertools
import os
import threading
from collections import OrderedDict

from .diagram import (
    DiagramError,
    LinkDiagram,
    _component_walks,
    boundary_of_annuli,
    canonical_key,
    component_count,
    crossing_case,
    linking_matrix,
    orient,
    self_writhe,
    simplify,
    smooth_oriented,
    smooth_unoriented,
    split_pieces,
    switch_crossing,
    total_linking,
    writhe,
)
from .laurent import MOD2, Laurent

__all__ = [
    "BudgetError",
    "SkeinCache",
    "set_cache_entries",
    "cache_entries",
    "clear_caches",
    "homfly_P",
    "r_poly",
    "kauffman_L",
    "kauffman_mod2",
    "g_poly",
    "framed_polynomial",
    "congruence_sides",
]

DEFAULT_CACHE_ENTRIES = 1 << 20


class BudgetError(DiagramError):
    """The diagram is larger than the configured crossing budget."""


# ---------------------------------------------------------------------------
# cache

class SkeinCache:
    """Thread-safe LRU map with an entry-count bound; 0 disables caching."""

    def __init__(self, maxsize: int = DEFAULT_CACHE_ENTRIES):
        self.maxsize = maxsize
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        if self.maxsize <= 0:
            return None
        with self._lock:
            val = self._data.get(key)
            if val is None:
                self.misses += 1
                return None
            self._data.move_to_end(key)
            self.hits += 1
            return val

    def put(self, key, value) -> None:
        if self.maxsize <= 0:
            return
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self._data)


def _env_entries() -> int:
    raw = os.environ.get("QUASIPOS_CACHE_ENTRIES")
    if raw is None:
        return DEFAULT_CACHE_ENTRIES
    try:
        return max(0, int(raw))
    except ValueError:
        return DEFAULT_CACHE_ENTRIES


_CACHES = {kind: SkeinCache(_env_entries()) for kind in ("P", "R", "L")}


def set_cache_entries(n: int) -> None:
    """Set the memo size per polynomial kind; 0 disables memoization."""
    if n < 0:
        raise ValueError("cache size must be non-negative")
    for c in _CACHES.values():
        c.maxsize = n
        c.clear()


def cache_entries() -> int:
    return _CACHES["P"].maxsize


def clear_caches() -> None:
    for c in _CACHES.values():
        c.clear()


def _check_budget(d: LinkDiagram, budget, what: str) -> None:
    if budget is not None and len(d.crossings) > budget:
        raise BudgetError(
            f"{what} of a {len(d.crossings)}-crossing diagram exceeds the budget of "
            f"{budget} crossings (raise it with --budget-crossings)"
        )


# ---------------------------------------------------------------------------
# shared traversal

def _bad_crossings(d: LinkDiagram):
    """Crossings met first on the under-strand, in traversal order."""
    seen, bad = set(), []
    for walk in _component_walks(d):
        for (i, s) in walk:
            if i in seen:
                continue
            seen.add(i)
            if s % 2 == 0:
                bad.append(i)
    return bad


# ---------------------------------------------------------------------------
# HOMFLY

_PV = ("v", "z")


def _p(terms) -> Laurent:
    return Laurent(terms, _PV)


_P_ONE = _p({(0, 0): 1})
_P_DELTA = _p({(-1, -1): 1, (1, -1): -1})  # (v^-1 - v) z^-1


def homfly_P(d: LinkDiagram, budget: int | None = None) -> Laurent:
    """HOMFLY polynomial P(v, z) of an oriented diagram."""
    if not d.oriented:
        raise DiagramError("homfly_P needs an oriented diagram")
    _check_budget(d, budget, "HOMFLY")
    if not d.crossings and not d.loops:
        raise DiagramError("the empty diagram has no polynomial")
    return _homfly(d)


def _homfly(d: LinkDiagram) -> Laurent:
    d = simplify(d)
    pieces, loops = split_pieces(d)
    out = _P_DELTA ** (len(pieces) + loops - 1)
    for p in pieces:
        out = out * _homfly_piece(p)
    return out


def _homfly_piece(d: LinkDiagram) -> Laurent:
    key = canonical_key(d)
    cache = _CACHES["P"]
    hit = cache.get(key)
    if hit is not None:
        return hit
    coeff = _P_ONE
    total = _p({})
    cur = d
    for i in _bad_crossings(d):
        if cur.signs[i] > 0:  # P(L+) = v^2 P(L-) + v z P(L0)
            alpha, beta = _p({(2, 0): 1}), _p({(1, 1): 1})
        else:  # P(L-) = v^-2 P(L+) - v^-1 z P(L0)
            alpha, beta = _p({(-2, 0): 1}), _p({(-1, 1): -1})
        total = total + coeff * beta * _homfly(smooth_oriented(cur, i))
        coeff = coeff * alpha
        cur = switch_crossing(cur, i)
    total = total + coeff * _P_DELTA ** (component_count(cur) - 1)
    cache.put(key, total)
    return total


# ---------------------------------------------------------------------------
# R polynomial

_R_ONE = Laurent({(0,): 1}, ("v",))
_R_DELTA = Laurent({(-1,): 1, (1,): -1}, ("v",))


def r_poly(d: LinkDiagram, budget: int | None = None) -> Laurent:
    """R(v) = (z^{c-1} P)(v, 0) by its own recursion: mixed crossings switch
    at cost v^{+-2}, self crossings also smooth."""
    if not d.oriented:
        raise DiagramError("r_poly needs an oriented diagram")
    _check_budget(d, budget, "R")
    if not d.crossings and not d.loops:
        raise DiagramError("the empty diagram has no polynomial")
    return _rpoly(d)


def _rpoly(d: LinkDiagram) -> Laurent:
    d = simplify(d)
    pieces, loops = split_pieces(d)
    out = _R_DELTA ** (len(pieces) + loops - 1)
    for p in pieces:
        out = out * _rpoly_piece(p)
    return out


def _rpoly_piece(d: LinkDiagram) -> Laurent:
    key = canonical_key(d)
    cache = _CACHES["R"]
    hit = cache.get(key)
    if hit is not None:
        return hit
    _, lab = _component_labels(d)
    coeff = _R_ONE
    total = Laurent.zero(("v",))
    cur = d
    for i in _bad_crossings(d):
        same = lab[(i, 0)] == lab[(i, 1)]
        if cur.signs[i] > 0:
            alpha = Laurent({(2,): 1}, ("v",))
            beta = Laurent({(1,): 1}, ("v",))
        else:
            alpha = Laurent({(-2,): 1}, ("v",))
            beta = Laurent({(-1,): -1}, ("v",))
        if same:
            total = total + coeff * beta * _rpoly(smooth_oriented(cur, i))
        coeff = coeff * alpha
        cur = switch_crossing(cur, i)
    total = total + coeff * _R_DELTA ** (component_count(cur) - 1)
    cache.put(key, total)
    return total


def _component_labels(d: LinkDiagram):
    from .diagram import components

    return components(d)


# ---------------------------------------------------------------------------
# Kauffman mod 2

_KV = ("a", "x")


def _k(terms) -> Laurent:
    return Laurent(terms, _KV, MOD2)


_K_ONE = _k({(0, 0): 1})
_K_X = _k({(0, 1): 1})
_K_DELTA = _k({(1, -1): 1, (-1, -1): 1, (0, 0): 1})  # (a + a^-1) x^-1 - 1


def kauffman_L(d: LinkDiagram, budget: int | None = None) -> Laurent:
    """Regular-isotopy Kauffman polynomial of the unoriented diagram, mod 2."""
    _check_budget(d, budget, "Kauffman")
    if not d.crossings and not d.loops:
        raise DiagramError("the empty diagram has no polynomial")
    return _kauff(d.unoriented())


def _kauff(d: LinkDiagram) -> Laurent:
    d, kinks = simplify(d, with_kinks=True)
    pieces, loops = split_pieces(d)
    out = _K_DELTA ** (len(pieces) + loops - 1)
    out = out.shift(kinks, 0)
    for p in pieces:
        out = out * _kauff_piece(p)
    return out


def _kauff_piece(d: LinkDiagram) -> Laurent:
    key = canonical_key(d)
    cache = _CACHES["L"]
    hit = cache.get(key)
    if hit is not None:
        return hit
    total = _k({})
    cur = d
    for i in _bad_crossings(d):
        smooth = _kauff(smooth_unoriented(cur, i, 0)) + _kauff(smooth_unoriented(cur, i, 1))
        total = total + _K_X * smooth
        cur = switch_crossing(cur, i)
    c = component_count(cur)
    total = total + _K_DELTA ** (c - 1) * _k({(self_writhe(cur), 0): 1})
    cache.put(key, total)
    return total


def kauffman_mod2(d: LinkDiagram, budget: int | None = None) -> Laurent:
    """F* = a^{-w} L mod 2, with w the writhe of ``d`` (oriented by default if needed)."""
    if not d.oriented:
        d = orient(d)
    return kauffman_L(d, budget).shift(-writhe(d), 0)


def g_poly(d: LinkDiagram, k: int, budget: int | None = None) -> Laurent:
    """G^k(a) = (x^{c-1} F*)(a, k) over Z/2, k in {0, 1}."""
    if k not in (0, 1):
        raise ValueError("G^k is defined for k = 0 and k = 1")
    F = kauffman_mod2(d, budget)
    c = component_count(d)
    return F.shift(0, c - 1).substitute({"x": k})


# ---------------------------------------------------------------------------
# framed polynomial and the mod-2 congruence

def framed_polynomial(d: LinkDiagram, framing, budget: int | None = None,
                      max_components: int = 3) -> Laurent:
    """{L,f}(v,z) = (-1)^c (1 + (v^-1 - v) z^-1 sum_{L'} (-1)^{c(L')} P(bdry A(L', f|L'))).

    ``framing`` is a sequence of integers, one per component.  Annulus
    boundaries are internal constructions and are not subject to ``budget``;
    the budget applies to the input diagram.
    """
    if not d.oriented:
        d = orient(d)
    _check_budget(d, budget, "framed polynomial")
    c = component_count(d)
    framing = tuple(framing)
    if len(framing) != c:
        raise DiagramError(f"need {c} framings, got {len(framing)}")
    if c > max_components:
        raise BudgetError(f"{c} components exceed the sublink budget of {max_components}")
    acc = _p({})
    for size in range(1, c + 1):
        for sub in itertools.combinations(range(c), size):
            bd = boundary_of_annuli(d, {k: framing[k] for k in sub})
            term = homfly_P(bd)
            acc = acc + (term if size % 2 == 0 else -term)
    inner = _P_ONE + _P_DELTA * acc
    return inner if c % 2 == 0 else -inner


def congruence_sides(d: LinkDiagram, framing=None, budget: int | None = None):
    """Both sides of (1 + (v^-2 + v^2) z^-2) F(v^-2, z^2) = v^{4 tau} {L,0}, mod 2.

    ``{L,0}`` is obtained from ``{L,f}`` by the shift v^{2 phi}, so any framing
    can be used to choose a cheaper cable.
    """
    if not d.oriented:
        d = orient(d)
    c = component_count(d)
    if framing is None:
        framing = (0,) * c
    F = kauffman_mod2(d, budget)
    left = F.substitute({"a": ("v", -2), "x": ("z", 2)}, vars=_PV)
    left = left * _p({(0, 0): 1, (-2, -2): 1, (2, -2): 1}).mod2()
    phi = sum(framing)
    tau = total_linking(d)
    right = framed_polynomial(d, framing, budget).shift(2 * phi + 4 * tau, 0).mod2()
    return left, right
