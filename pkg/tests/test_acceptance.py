"""The acceptance checks, each at its required tolerance.

Every test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary.
"""

import itertools
import random
import time

from quasipos.bounds import (
    FamilySpec,
    family_generate,
    granny,
    pretzel_R_recursion_check,
    q_report,
)
from quasipos.braid import (
    BraidWord,
    closed_braid_diagram,
    random_annular_band_rep,
    random_positive_knot_word,
    random_word,
)
from quasipos.checks import g1_two_braid, oracle_corpus
from quasipos.diagram import LinkDiagram, component_count, linking_matrix, two_cable_boundary
from quasipos.fence import band_rep_to_fence, fence_m, fence_writhe
from quasipos.laurent import MOD2, Laurent, a_poly
from quasipos.skein import (
    cache_entries,
    clear_caches,
    framed_polynomial,
    g_poly,
    homfly_P,
    kauffman_mod2,
    r_poly,
    set_cache_entries,
)


def _a(k):
    return Laurent({(k,): 1}, ("a",), MOD2)


def test_torus_table(acceptance):
    t = time.perf_counter()
    bad = []
    for k in range(-5, 6):
        want = 2 * k - 1 if k >= 0 else (-1 if k == -1 else 4 * k + 2)
        got = family_generate(FamilySpec("torus2", (k,))).report().exact
        if got != want:
            bad.append((k, got, want))
    elapsed = time.perf_counter() - t
    acceptance("O{2,2k+1} exact q for k=-5..5", not bad and elapsed < 120,
               f"mismatches={bad}, {elapsed:.1f}s")


def test_g1_values(acceptance):
    golden = {-3: a_poly([2, 3, 5]), -4: a_poly([3, 6, 7]), -5: a_poly([5, 8, 9])}
    golden_bad = [m for m, want in golden.items() if g1_two_braid(m) != want]
    recursion_bad = [
        m for m in range(-6, -12, -1)
        if g1_two_braid(m) != _a(3) * g1_two_braid(m + 3) + _a(-2 * m - 3) + _a(-2 * m - 1)
    ]
    degree_bad = [m for m in range(-6, -12, -1) if g1_two_braid(m).deg("a") != -2 * m - 1]
    acceptance("G1 golden values, stated recursion and degree law",
               not (golden_bad or recursion_bad or degree_bad),
               f"golden failures {golden_bad}, recursion failures {recursion_bad}, "
               f"degree failures {degree_bad}")


def test_positive_braids(acceptance):
    rng = random.Random(2024)
    bad = []
    for _ in range(200):
        w = random_positive_knot_word(rng, 5, 10)
        assert w.n <= 5 and len(w) <= 10 and w.cycle_count() == 1
        d = closed_braid_diagram(w)
        R = r_poly(d)
        e, n = w.exponent_sum(), w.n
        lo = R.ord("v")
        exact = q_report(str(w), d, positive_braids=[w]).exact
        if lo != e - n + 1 or R.coeff((lo,)) <= 0 or exact != e - n:
            bad.append(str(w))
    acceptance("positive braids: ord_v R = e-n+1 and q = e-n", not bad,
               f"{len(bad)} failures of 200")


def test_pretzels(acceptance):
    bad = []
    for r, s, t in itertools.product((1, 3, 5), (1, 3, 5), (0, 2, 4)):
        rep = family_generate(FamilySpec("pretzel", (r, s, t))).report()
        want = -3 + r + s - t
        fence = [b.value for b in rep.lower if b.by == "fence-writhe"]
        R = [b.value for b in rep.upper if b.by == "R-order"]
        if fence != [want] or R != [want] or rep.exact != want:
            bad.append((r, s, t))
        if t >= 2 and not pretzel_R_recursion_check(r, s, t):
            bad.append((r, s, t, "recursion"))
    acceptance("pretzel q = -3+r+s-t and R recursion", not bad, f"failures {bad}")


def test_mfw(acceptance):
    rng = random.Random(5)
    bad = []
    for _ in range(200):
        w = random_word(rng, 4, 8)
        assert 2 <= w.n <= 4 and len(w) <= 8
        if homfly_P(closed_braid_diagram(w)).ord("v") < w.exponent_sum() - w.n + 1:
            bad.append(str(w))
    acceptance("ord_v P >= e-n+1 on 200 braids", not bad, f"failures {bad[:3]}")


def _congruence(d: LinkDiagram):
    """Both sides at framing 0; {K,0} is built by hand from the annulus boundary
    and compared with framed_polynomial."""
    assert component_count(d) == 1
    boundary = two_cable_boundary(d, 0)
    assert component_count(boundary) == 2 and linking_matrix(boundary)[0][1] == 0
    delta = Laurent({(-1, -1): 1, (1, -1): -1}, ("v", "z"))
    by_hand = -(1 - delta * homfly_P(boundary))
    framed = framed_polynomial(d, (0,))
    assert by_hand == framed
    F = kauffman_mod2(d).substitute({"a": ("v", -2), "x": ("z", 2)}, vars=("v", "z"))
    factor = Laurent({(0, 0): 1, (-2, -2): 1, (2, -2): 1}, ("v", "z"), MOD2)
    return factor * F, framed.mod2()  # total linking of a knot is 0


def test_congruence(acceptance):
    t = time.perf_counter()
    bad = []
    for name, d in (("unknot", LinkDiagram((), (), 1)),
                    ("trefoil", closed_braid_diagram(BraidWord(2, (1, 1, 1))))):
        left, right = _congruence(d)
        if left != right:
            bad.append(name)
    elapsed = time.perf_counter() - t
    acceptance("congruence mod 2 for unknot and trefoil", not bad and elapsed < 300,
               f"failures {bad}, {elapsed:.1f}s")


def _oracle_outputs(corpus):
    mismatches, out = 0, []
    for d in corpus:
        c = component_count(d)
        P, R, G0 = homfly_P(d), r_poly(d), g_poly(d, 0)
        mismatches += R != P.part("z", 1 - c)
        mismatches += G0 != R.substitute({"v": ("a", -1)}).mod2()
        out.append((P.dumps(), R.dumps(), G0.dumps()))
    return mismatches, out


def test_oracles(acceptance):
    corpus = oracle_corpus(seed=7, count=100, max_crossings=10)
    assert len(corpus) == 100 and all(len(d.crossings) <= 10 for d in corpus)
    saved = cache_entries()
    try:
        clear_caches()
        bad_on, on = _oracle_outputs(corpus)
        set_cache_entries(0)
        bad_off, off = _oracle_outputs(corpus)
    finally:
        set_cache_entries(saved)
    acceptance("R = z^(c-1)P at z=0, G0 = R(1/a) mod 2, cache on/off identical",
               bad_on == 0 and bad_off == 0 and on == off,
               f"{bad_on + bad_off} mismatches, identical={on == off}")


def test_granny(acceptance):
    fam = granny()
    assert len(fam.diagram.crossings) == 6
    rep = fam.report()
    order = r_poly(fam.diagram).ord("v")
    lower = [b.value for b in rep.lower if b.by == "fence-writhe"]
    upper = [b.value for b in rep.upper if b.by == "R-order"]
    ok = lower == [3] and order == 4 and upper == [3] and rep.exact == 3
    acceptance("granny knot exact q = 3", ok,
               f"fence lower {lower}, ord_v R {order}, exact {rep.exact}")


def test_framing(acceptance):
    rng = random.Random(9)
    bad = []
    for _ in range(100):
        b = random_annular_band_rep(rng, rng.randint(2, 6))
        assert b.quasipositive
        d = closed_braid_diagram(b.word())
        f = -linking_matrix(d)[0][1]
        fence = band_rep_to_fence(b, trim=True)
        if f != fence_writhe(fence) - fence_m(fence):
            bad.append(b.to_text())
    acceptance("annulus framing = fence writhe - m", not bad, f"{len(bad)} failures of 100")
