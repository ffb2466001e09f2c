"""Lower and upper bounds on the modulus of quasipositivity q(K).

Lower bounds come from positive realizations: a fence (or positive plat)
gives q >= writhe - m, and a positive braid on n strands gives q >= e - n.
Upper bounds come from polynomials of a knot diagram:

    q <= -1 + ord_v R          ("R-order")
    q <= ord_v {K,0} / 2        ("framed-order")
    q <= -1 - deg_a F*          ("kauffman-degree")
    q <= -1 - deg_a G^k         ("G0-degree", "G1-degree")
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .braid import BraidWord, PlatPlan, braid_as_plat, closed_braid_diagram, plat_diagram
from .diagram import LinkDiagram, component_count, connected_sum, orient, writhe
from .fence import (
    Fence,
    fence_connected_sum,
    fence_graph_components,
    fence_m,
    fence_writhe,
    plat_to_fence,
    square_fence,
)
from .laurent import Laurent, UndefinedOrderError
from .skein import BudgetError, framed_polynomial, g_poly, kauffman_mod2, r_poly

__all__ = [
    "BoundsError",
    "Bound",
    "QBoundsReport",
    "FamilySpec",
    "Family",
    "q_lower_from_fence",
    "q_lower_closed_positive_braid",
    "q_upper_from_R",
    "q_upper_from_framed",
    "q_upper_from_F",
    "q_upper_from_G",
    "q_report",
    "family_generate",
    "torus2_plat",
    "pretzel_plat",
    "subadditivity_check",
    "pretzel_R_recursion_check",
    "granny",
    "torus_word",
    "TSV_HEADER",
]

DEFAULT_BUDGET_P = 14
DEFAULT_BUDGET_F = 10


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class Bound:
    value: int
    by: str

    def to_json(self) -> dict:
        return {"value": self.value, "by": self.by}


@dataclass
class QBoundsReport:
    knot: str
    lower: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    slice_flag: Optional[bool] = None

    @property
    def best_lower(self) -> Optional[int]:
        return max((b.value for b in self.lower), default=None)

    @property
    def best_upper(self) -> Optional[int]:
        return min((b.value for b in self.upper), default=None)

    @property
    def exact(self) -> Optional[int]:
        lo, hi = self.best_lower, self.best_upper
        return lo if lo is not None and lo == hi else None

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "lower": [b.to_json() for b in self.lower],
            "upper": [b.to_json() for b in self.upper],
            "exact": self.exact,
            "warnings": list(self.warnings),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def tsv_row(self) -> str:
        fmt = lambda bs: ",".join(f"{b.value}:{b.by}" for b in bs) or "-"
        exact = "-" if self.exact is None else str(self.exact)
        return "\t".join([self.knot, fmt(self.lower), fmt(self.upper), exact])


TSV_HEADER = "knot\tlower\tupper\texact"


# ---------------------------------------------------------------------------
# individual bounds

def _require_knot(d: LinkDiagram) -> None:
    c = component_count(d)
    if c != 1:
        raise BoundsError(f"q is defined for knots; the diagram has {c} components")


def q_lower_from_fence(f: Fence) -> int:
    count, _ = fence_graph_components(f)
    if count != 1:
        raise BoundsError(f"fence bound needs a knot, the graph has {count} circles")
    return fence_writhe(f) - fence_m(f)


def q_lower_closed_positive_braid(w: BraidWord) -> int:
    if not w.positive:
        raise BoundsError("positive-braid bound needs a positive word")
    if w.cycle_count() != 1:
        raise BoundsError("positive-braid bound needs a knot closure")
    return w.exponent_sum() - w.n


def q_upper_from_R(d: LinkDiagram, budget: Optional[int] = None) -> int:
    _require_knot(d)
    return -1 + r_poly(_oriented(d), budget).ord("v")


def framed_order(d: LinkDiagram, budget: Optional[int] = None) -> int:
    """ord_v {K,0}, computed at the blackboard framing to avoid twist crossings."""
    _require_knot(d)
    d = _oriented(d)
    w = writhe(d)
    return framed_polynomial(d, (w,), budget).ord("v") + 2 * w


def q_upper_from_framed(d: LinkDiagram, budget: Optional[int] = None):
    """Return (bound, order_is_even)."""
    order = framed_order(d, budget)
    return math.floor(order / 2), order % 2 == 0


def q_upper_from_F(d: LinkDiagram, budget: Optional[int] = None) -> int:
    _require_knot(d)
    return -1 - kauffman_mod2(_oriented(d), budget).deg("a")


def q_upper_from_G(d: LinkDiagram, k: int, budget: Optional[int] = None) -> int:
    _require_knot(d)
    return -1 - g_poly(_oriented(d), k, budget).deg("a")


def _oriented(d: LinkDiagram) -> LinkDiagram:
    return d if d.oriented else orient(d)


# ---------------------------------------------------------------------------
# report

def q_report(
    knot: str,
    diagram: Optional[LinkDiagram] = None,
    fences=(),
    positive_braids=(),
    slice_flag: Optional[bool] = None,
    budget_P: Optional[int] = DEFAULT_BUDGET_P,
    budget_F: Optional[int] = DEFAULT_BUDGET_F,
    framed: bool = False,
) -> QBoundsReport:
    """Collect every computable bound.  Bounds that exceed a budget or are
    undefined are skipped with a warning; exactness is claimed only when the
    best lower and upper bounds coincide."""
    if diagram is None and not fences and not positive_braids:
        raise BoundsError("q_report needs a diagram, a fence or a positive braid")
    rep = QBoundsReport(knot, slice_flag=slice_flag)
    for f in fences:
        rep.lower.append(Bound(q_lower_from_fence(f), "fence-writhe"))
    for w in positive_braids:
        rep.lower.append(Bound(q_lower_closed_positive_braid(w), "positive-braid"))
    if diagram is not None:
        _require_knot(diagram)
        d = _oriented(diagram)
        _try(rep, "R-order", lambda: q_upper_from_R(d, budget_P))
        if framed:
            _try(rep, "framed-order", lambda: _framed_value(rep, d, budget_P))
        degs = {}
        for name, fn in (
            ("kauffman-degree", lambda: kauffman_mod2(d, budget_F)),
            ("G0-degree", lambda: g_poly(d, 0, budget_F)),
            ("G1-degree", lambda: g_poly(d, 1, budget_F)),
        ):
            poly = _try_poly(rep, name, fn)
            if poly is not None:
                degs[name] = poly.deg("a")
                rep.upper.append(Bound(-1 - degs[name], name))
        if len(degs) == 3:
            top = max(degs["G0-degree"], degs["G1-degree"])
            if top > degs["kauffman-degree"]:
                rep.warnings.append(
                    f"INCONSISTENT: deg_a G^k = {top} exceeds deg_a F* = {degs['kauffman-degree']}"
                )
            elif top < degs["kauffman-degree"]:
                # the top a-coefficient of F* vanishes at x = 0 and at x = 1 mod 2
                rep.warnings.append(
                    "deg_a F* differs from max(deg_a G0, deg_a G1): "
                    f"{degs['kauffman-degree']} vs {degs['G0-degree']}, {degs['G1-degree']}"
                )
    lo, hi = rep.best_lower, rep.best_upper
    if lo is not None and hi is not None and lo > hi:
        rep.warnings.append(f"INCONSISTENT: lower bound {lo} exceeds upper bound {hi}")
    if slice_flag and lo is not None and lo >= 0:
        rep.warnings.append(
            f"INCONSISTENT: the knot is asserted slice but q >= {lo}; a slice knot has q < 0"
        )
    return rep


def _framed_value(rep: QBoundsReport, d: LinkDiagram, budget) -> int:
    value, even = q_upper_from_framed(d, budget)
    if not even:
        rep.warnings.append("ord_v {K,0} is odd; the framed bound uses its floor")
    return value


def _try(rep: QBoundsReport, name: str, fn) -> None:
    try:
        rep.upper.append(Bound(fn(), name))
    except BudgetError as exc:
        rep.warnings.append(f"{name} skipped: {exc}")
    except UndefinedOrderError as exc:
        rep.warnings.append(f"{name} skipped: {exc}")


def _try_poly(rep: QBoundsReport, name: str, fn) -> Optional[Laurent]:
    try:
        poly = fn()
    except BudgetError as exc:
        rep.warnings.append(f"{name} skipped: {exc}")
        return None
    if poly.is_zero():
        rep.warnings.append(f"{name} skipped: polynomial is zero")
        return None
    return poly


# ---------------------------------------------------------------------------
# families

@dataclass(frozen=True)
class FamilySpec:
    kind: str  # "torus", "torus2", "pretzel", "braid"; other kinds are named by params[0]
    params: tuple

    def describe(self) -> str:
        if self.kind == "torus":
            return f"o{{{self.params[0]},{self.params[1]}}}"
        if self.kind == "torus2":
            return f"O{{2,{2 * self.params[0] + 1}}}"
        if self.kind == "pretzel":
            return "P({},{},{})".format(*self.params)
        if self.kind == "braid":
            return f"closure of ({self.params[0]})"
        return str(self.params[0])


@dataclass
class Family:
    spec: FamilySpec
    diagram: LinkDiagram
    fences: list
    positive_braids: list
    plats: list  # (word, plan) pairs

    @property
    def description(self) -> str:
        return self.spec.describe()

    def report(self, **kw) -> QBoundsReport:
        return q_report(self.description, self.diagram, self.fences, self.positive_braids, **kw)


def torus_word(m: int, n: int) -> BraidWord:
    """(s_1 ... s_{m-1})^n in B_m."""
    return BraidWord(m, tuple(range(1, m)) * n)


def torus2_plat(k: int):
    """Positive plat on 2r strands, r = -(2k+1), presenting O{2,2k+1} for k <= -2."""
    if k > -2:
        raise BoundsError("the plat presentation is used for k <= -2")
    r = -(2 * k + 1)
    pairs = [(1, 2 * r)] + [(2 * j, 2 * j + 1) for j in range(1, r)]
    return BraidWord(2 * r, tuple(range(1, 2 * r, 2))), PlatPlan(2 * r, pairs, pairs)


def pretzel_plat(r: int, s: int, t: int):
    pairs = [(1, 6), (2, 3), (4, 5)]
    return BraidWord(6, (1,) * r + (3,) * s + (5,) * t), PlatPlan(6, pairs, pairs)


def _positive_braid_family(spec: FamilySpec, w: BraidWord) -> Family:
    if not w.positive:
        raise BoundsError("braid family members must be positive words")
    if w.cycle_count() != 1:
        raise BoundsError(f"{spec.describe()} is a {w.cycle_count()}-component link, not a knot")
    plat = braid_as_plat(w)
    fence = plat_to_fence(*plat)
    return Family(spec, closed_braid_diagram(w), [fence], [w], [plat])


def family_generate(spec: FamilySpec) -> Family:
    kind, params = spec.kind, tuple(spec.params)
    if kind == "torus":
        m, n = params
        if m <= 0 or n <= 0:
            raise BoundsError("o{m,n} needs m, n > 0")
        return _positive_braid_family(spec, torus_word(m, n))
    if kind == "braid":
        (w,) = params
        return _positive_braid_family(spec, w)
    if kind == "torus2":
        (k,) = params
        if k >= 0:
            return _positive_braid_family(spec, BraidWord(2, (1,) * (2 * k + 1)))
        if k == -1:
            return Family(spec, LinkDiagram((), (), 1), [square_fence()], [BraidWord(1, ())], [])
        word, plan = torus2_plat(k)
        plat_d = orient(plat_diagram(word, plan))
        closure = closed_braid_diagram(BraidWord(2, (-1,) * (-(2 * k + 1))))
        if r_poly(plat_d) != r_poly(closure):
            raise BoundsError(f"plat for O{{2,{2 * k + 1}}} does not match the 2-braid closure")
        return Family(spec, closure, [plat_to_fence(word, plan)], [], [(word, plan)])
    if kind == "pretzel":
        r, s, t = params
        if min(r, s, t) < 0:
            raise BoundsError("pretzel parameters must be non-negative")
        if sum(x % 2 for x in (r, s, t)) < 2:
            raise BoundsError(f"P({r},{s},{t}) is not a knot: two or three parameters must be odd")
        word, plan = pretzel_plat(r, s, t)
        return Family(spec, orient(plat_diagram(word, plan)), [plat_to_fence(word, plan)], [],
                      [(word, plan)])
    raise BoundsError(f"unknown family {kind!r}")


# ---------------------------------------------------------------------------
# consistency checks

def subadditivity_check(fences) -> dict:
    """Lower bound of the fence connected sum against the sum of (q_k + 1)."""
    parts = [q_lower_from_fence(f) for f in fences]
    combined = q_lower_from_fence(fence_connected_sum(fences))
    rhs = sum(q + 1 for q in parts)
    return {
        "parts": parts,
        "combined": combined,
        "sum_of_q_plus_1": rhs,
        "holds": combined + 1 >= rhs,
    }


def pretzel_R_recursion_check(r: int, s: int, t: int) -> bool:
    """R(P(r,s,t)) = v^-2 R(P(r,s,t-2)) - v^-1 R(O{2,r+s}) for r, s odd, t >= 2 even."""
    if r % 2 == 0 or s % 2 == 0 or r < 1 or s < 1 or t < 2 or t % 2:
        raise BoundsError("the recursion needs r, s odd positive and t even >= 2")
    left = r_poly(orient(plat_diagram(*pretzel_plat(r, s, t))))
    prev = r_poly(orient(plat_diagram(*pretzel_plat(r, s, t - 2))))
    link = r_poly(closed_braid_diagram(BraidWord(2, (1,) * (r + s))))
    vm1 = Laurent({(-1,): 1}, ("v",))
    return left == vm1 * vm1 * prev - vm1 * link


def granny() -> Family:
    """Trefoil sum trefoil with its fence and a 6-crossing diagram."""
    w = BraidWord(2, (1, 1, 1))
    t = plat_to_fence(*braid_as_plat(w))
    d = connected_sum(closed_braid_diagram(w), closed_braid_diagram(w))
    spec = FamilySpec("sum", ("3_1#3_1",))
    return Family(spec, d, [fence_connected_sum([t, t])], [], [])
