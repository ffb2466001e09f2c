"""Seeded consistency checks of the identities the package relies on.

Each check returns a :class:`CheckResult`; the ``check`` CLI verb and the
acceptance tests run them.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .bounds import FamilySpec, family_generate, granny, pretzel_R_recursion_check, q_report
from .braid import (
    BraidWord,
    PlatPlan,
    closed_braid_diagram,
    plat_diagram,
    random_annular_band_rep,
    random_positive_knot_word,
    random_word,
)
from .diagram import (
    LinkDiagram,
    component_count,
    linf_oriented,
    linking_matrix,
    orient,
    smooth_oriented,
    switch_crossing,
)
from .fence import band_rep_to_fence, fence_m, fence_writhe
from .laurent import MOD2, Laurent, a_poly
from .skein import (
    clear_caches,
    cache_entries,
    congruence_sides,
    g_poly,
    homfly_P,
    r_poly,
    set_cache_entries,
)

__all__ = ["CheckResult", "CHECKS", "run_checks", "oracle_corpus", "g1_two_braid"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    cases: int = 0
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.detail} ({self.cases} cases, {self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "cases": self.cases, "seconds": round(self.seconds, 3)}


def _timed(name, fn):
    t = time.perf_counter()
    passed, detail, cases = fn()
    return CheckResult(name, passed, detail, cases, time.perf_counter() - t)


def _a(k: int) -> Laurent:
    return Laurent({(k,): 1}, ("a",), MOD2)


def g1_two_braid(m: int) -> Laurent:
    """G^1 of O{2,m}, the closure of s_1^m with the braid orientation."""
    return g_poly(closed_braid_diagram(BraidWord(2, (1 if m > 0 else -1,) * abs(m))), 1)


# ---------------------------------------------------------------------------
# individual checks

G1_GOLDEN = {
    -3: a_poly([2, 3, 5]),
    -4: a_poly([3, 6, 7]),
    -5: a_poly([5, 8, 9]),
}


def check_g1_golden(seed=None):
    def run():
        bad = [m for m, want in G1_GOLDEN.items() if g1_two_braid(m) != want]
        return not bad, f"mismatches at m={bad}" if bad else "O{2,-3..-5} match", len(G1_GOLDEN)
    return _timed("g1-golden", run)


def _g1_recursion(first):
    bad = []
    for m in range(-6, -12, -1):
        rhs = _a(3) * g1_two_braid(m + 3) + _a(first(m)) + _a(-2 * m - 1)
        if g1_two_braid(m) != rhs:
            bad.append(m)
    return bad


def check_g1_recursion_stated(seed=None):
    """G1(O{2,m}) = a^3 G1(O{2,m+3}) + a^(-2m-3) + a^(-2m-1), m = -6..-11, as stated."""
    def run():
        bad = _g1_recursion(lambda m: -2 * m - 3)
        return not bad, f"fails at m={bad}" if bad else "holds", 6
    return _timed("g1-recursion-stated", run)


def check_g1_recursion_corrected(seed=None):
    """The same recursion with a^(-2m-2) in place of a^(-2m-3)."""
    def run():
        bad = _g1_recursion(lambda m: -2 * m - 2)
        return not bad, f"fails at m={bad}" if bad else "holds", 6
    return _timed("g1-recursion-corrected", run)


def check_g1_degree_law(seed=None):
    def run():
        bad = [m for m in range(-3, -12, -1) if g1_two_braid(m).deg("a") != -2 * m - 1]
        return not bad, f"fails at m={bad}" if bad else "deg_a = -2m-1", 9
    return _timed("g1-degree-law", run)


def check_g1_crossing_recursion(seed=0, count=40):
    """G1(L+) = a^-2 G1(L-) + a^-1 G1(L0) + a^e G1(Linf) at every crossing."""
    def run():
        rng = random.Random(seed)
        bad = total = 0
        for _ in range(count):
            d = closed_braid_diagram(random_word(rng, 4, 7))
            for i in range(len(d.crossings)):
                plus = d if d.signs[i] > 0 else switch_crossing(d, i)
                linf, ref = linf_oriented(plus, i)
                e = -4 * ref.value - 1 if ref.case == 1 else -4 * ref.value + 1
                rhs = (_a(-2) * g_poly(switch_crossing(plus, i), 1)
                       + _a(-1) * g_poly(smooth_oriented(plus, i), 1)
                       + _a(e) * g_poly(linf, 1))
                total += 1
                bad += g_poly(plus, 1) != rhs
        return bad == 0, f"{bad} failures", total
    return _timed("g1-crossing-recursion", run)


def check_torus_table(seed=None):
    def run():
        bad = []
        for k in range(-5, 6):
            want = 2 * k - 1 if k >= 0 else (-1 if k == -1 else 4 * k + 2)
            got = family_generate(FamilySpec("torus2", (k,))).report().exact
            if got != want:
                bad.append((k, got, want))
        return not bad, f"mismatches {bad}" if bad else "q(O{2,2k+1}) exact for k=-5..5", 11
    return _timed("torus-table", run)


def check_positive_braids(seed=0, count=200):
    def run():
        rng = random.Random(seed)
        bad = []
        for _ in range(count):
            w = random_positive_knot_word(rng, 5, 10)
            R = r_poly(closed_braid_diagram(w))
            lo = R.ord("v")
            e, n = w.exponent_sum(), w.n
            exact = q_report(str(w), closed_braid_diagram(w), positive_braids=[w],
                             budget_F=0).exact
            if lo != e - n + 1 or R.coeff((lo,)) <= 0 or exact != e - n:
                bad.append(str(w))
        return not bad, f"failures {bad[:3]}" if bad else "ord_v R = e-n+1, q = e-n", count
    return _timed("positive-braids", run)


def check_pretzels(seed=None):
    def run():
        bad = []
        cases = 0
        for r, s, t in itertools.product((1, 3, 5), (1, 3, 5), (0, 2, 4)):
            cases += 1
            rep = family_generate(FamilySpec("pretzel", (r, s, t))).report(budget_F=0)
            if rep.exact != -3 + r + s - t:
                bad.append((r, s, t, rep.exact))
            if t >= 2 and not pretzel_R_recursion_check(r, s, t):
                bad.append((r, s, t, "R recursion"))
        return not bad, f"failures {bad}" if bad else "q = -3+r+s-t, R recursion holds", cases
    return _timed("pretzels", run)


def check_mfw(seed=0, count=200):
    """ord_v P of a closed braid is at least e - n + 1."""
    def run():
        rng = random.Random(seed)
        bad = []
        for _ in range(count):
            w = random_word(rng, 4, 8)
            if w.exponent_sum() - w.n + 1 > homfly_P(closed_braid_diagram(w)).ord("v"):
                bad.append(str(w))
        return not bad, f"failures {bad[:3]}" if bad else "inequality holds", count
    return _timed("mfw", run)


def check_congruence(seed=None):
    def run():
        cases = [("unknot", LinkDiagram((), (), 1)),
                 ("trefoil", closed_braid_diagram(BraidWord(2, (1, 1, 1))))]
        bad = []
        for name, d in cases:
            left, right = congruence_sides(d, framing=(0,))
            if left != right:
                bad.append(name)
        return not bad, f"fails for {bad}" if bad else "unknot and trefoil at framing 0", len(cases)
    return _timed("congruence", run)


def oracle_corpus(seed=0, count=100, max_crossings=10):
    """Mixed corpus of closed braids and plats (knots and links)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if rng.random() < 0.7:
            d = closed_braid_diagram(random_word(rng, 4, max_crossings))
        else:
            n = 2 * rng.randint(1, 3)
            k = rng.randint(0, max_crossings - n // 2)
            letters = [rng.randint(1, n - 1) * rng.choice((1, -1)) for _ in range(k)]
            d = orient(plat_diagram(BraidWord(n, letters), PlatPlan.nested(n)))
        if len(d.crossings) <= max_crossings:
            out.append(d)
    return out


def _oracle_pass(corpus):
    bad = 0
    outputs = []
    for d in corpus:
        c = component_count(d)
        P, R, G0 = homfly_P(d), r_poly(d), g_poly(d, 0)
        bad += R != P.part("z", 1 - c)
        bad += G0 != R.substitute({"v": ("a", -1)}).mod2()
        outputs.append((P.dumps(), R.dumps(), G0.dumps()))
    return bad, outputs


def check_oracles(seed=0, count=100):
    def run():
        corpus = oracle_corpus(seed, count)
        saved = cache_entries()
        try:
            clear_caches()
            bad, cached = _oracle_pass(corpus)
            set_cache_entries(0)
            bad_off, uncached = _oracle_pass(corpus)
        finally:
            set_cache_entries(saved)
        same = cached == uncached
        ok = bad == 0 and bad_off == 0 and same
        return ok, f"{bad} oracle mismatches, cache-on/off identical: {same}", len(corpus)
    return _timed("oracles", run)


def check_granny(seed=None):
    def run():
        rep = granny().report()
        R = r_poly(granny().diagram)
        ok = (rep.best_lower == 3 and R.ord("v") == 4 and rep.exact == 3)
        return ok, f"lower {rep.best_lower}, ord_v R {R.ord('v')}, exact {rep.exact}", 1
    return _timed("granny", run)


def check_framing(seed=0, count=100):
    def run():
        rng = random.Random(seed)
        bad = []
        for _ in range(count):
            b = random_annular_band_rep(rng, rng.randint(2, 6))
            d = closed_braid_diagram(b.word())
            f = -linking_matrix(d)[0][1]
            fence = band_rep_to_fence(b, trim=True)
            if f != fence_writhe(fence) - fence_m(fence):
                bad.append(b.to_text())
        return not bad, f"failures {bad[:3]}" if bad else "framing = writhe - m", count
    return _timed("framing", run)


CHECKS = {
    "torus-table": check_torus_table,
    "g1-golden": check_g1_golden,
    "g1-recursion-stated": check_g1_recursion_stated,
    "g1-recursion-corrected": check_g1_recursion_corrected,
    "g1-degree-law": check_g1_degree_law,
    "g1-crossing-recursion": check_g1_crossing_recursion,
    "positive-braids": check_positive_braids,
    "pretzels": check_pretzels,
    "mfw": check_mfw,
    "congruence": check_congruence,
    "oracles": check_oracles,
    "granny": check_granny,
    "framing": check_framing,
}


def run_checks(names=None, seed=0):
    return [CHECKS[name](seed=seed) for name in names or CHECKS]
