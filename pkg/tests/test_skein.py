import random

import pytest
from hypothesis import given, settings, strategies as st

from quasipos.braid import BraidWord, closed_braid_diagram, random_word
from quasipos.checks import check_g1_crossing_recursion, check_g1_recursion_corrected, g1_two_braid
from quasipos.diagram import LinkDiagram, component_count, mirror, writhe
from quasipos.laurent import MOD2, Laurent, a_poly
from quasipos.skein import (
    BudgetError,
    cache_entries,
    clear_caches,
    congruence_sides,
    framed_polynomial,
    g_poly,
    homfly_P,
    kauffman_L,
    kauffman_mod2,
    r_poly,
    set_cache_entries,
)

TREFOIL = closed_braid_diagram(BraidWord(2, (1, 1, 1)))
HOPF = closed_braid_diagram(BraidWord(2, (1, 1)))
FIG8 = closed_braid_diagram(BraidWord(3, (1, -2, 1, -2)))
UNKNOT = LinkDiagram((), (), 1)


def P(terms):
    return Laurent(terms, ("v", "z"))


def F(terms):
    return Laurent({k: 1 for k in terms}, ("a", "x"), MOD2)


def test_homfly_values():
    assert homfly_P(UNKNOT) == P({(0, 0): 1})
    assert homfly_P(TREFOIL) == P({(2, 0): 2, (2, 2): 1, (4, 0): -1})
    assert homfly_P(HOPF) == P({(1, -1): 1, (1, 1): 1, (3, -1): -1})
    assert homfly_P(FIG8) == P({(-2, 0): 1, (0, 0): -1, (0, 2): -1, (2, 0): 1})
    # split union with a circle multiplies by (v^-1 - v) z^-1
    assert homfly_P(LinkDiagram((), (), 2)) == P({(-1, -1): 1, (1, -1): -1})


def test_r_polynomial_values():
    v = lambda t: Laurent(t, ("v",))
    assert r_poly(TREFOIL) == v({(2,): 2, (4,): -1})
    assert r_poly(HOPF) == v({(1,): 1, (3,): -1})
    assert r_poly(FIG8) == v({(-2,): 1, (0,): -1, (2,): 1})


def test_kauffman_values():
    assert kauffman_mod2(TREFOIL) == F([(-4, 0), (-5, 1), (-3, 1), (-4, 2), (-2, 2)])
    assert kauffman_mod2(UNKNOT) == F([(0, 0)])
    # regular isotopy: L = a^w F*
    L = kauffman_L(TREFOIL)
    assert L == kauffman_mod2(TREFOIL).shift(writhe(TREFOIL), 0)


def test_g_polynomials():
    assert g_poly(TREFOIL, 1) == a_poly([-5, -3, -2])
    assert g_poly(TREFOIL, 0) == a_poly([-4])
    assert g_poly(HOPF, 1) == a_poly([-2])
    assert g_poly(UNKNOT, 1) == a_poly([0])
    with pytest.raises(ValueError):
        g_poly(TREFOIL, 2)


def test_g1_two_braid_golden_values_and_corrected_recursion():
    assert g1_two_braid(-3) == a_poly([2, 3, 5])
    assert g1_two_braid(-4) == a_poly([3, 6, 7])
    assert g1_two_braid(-5) == a_poly([5, 8, 9])
    for m in range(-3, -13, -1):
        assert g1_two_braid(m).deg("a") == -2 * m - 1
    assert check_g1_recursion_corrected().passed


def test_g1_crossing_recursion_with_smoothing_terms():
    result = check_g1_crossing_recursion(seed=11, count=25)
    assert result.passed, result.detail


def test_framed_polynomial_of_unknot():
    expected = P({(-2, -2): 1, (0, -2): -2, (2, -2): 1, (0, 0): -1})
    assert framed_polynomial(UNKNOT, (0,)) == expected
    assert framed_polynomial(UNKNOT, (0,)).ord("v") == -2


def test_framing_shift():
    """{L,f} = v^(-2 phi) {L,0}."""
    base = framed_polynomial(TREFOIL, (0,))
    for f in (1, 3, -1):
        assert framed_polynomial(TREFOIL, (f,)).shift(2 * f, 0) == base


@pytest.mark.parametrize("framing", [(0,), (3,), (-2,)])
def test_congruence_for_trefoil(framing):
    left, right = congruence_sides(TREFOIL, framing=framing)
    assert left == right


def test_congruence_for_two_component_link():
    left, right = congruence_sides(HOPF, framing=(0, 0))
    assert left == right


def test_budget_guard():
    big = closed_braid_diagram(BraidWord(2, (1,) * 9))
    with pytest.raises(BudgetError, match="budget"):
        homfly_P(big, budget=8)
    with pytest.raises(BudgetError):
        kauffman_mod2(big, budget=8)
    assert homfly_P(big, budget=9) == homfly_P(big)


def test_cache_controls():
    saved = cache_entries()
    try:
        set_cache_entries(0)
        off = homfly_P(FIG8)
        set_cache_entries(100)
        clear_caches()
        assert homfly_P(FIG8) == off
        with pytest.raises(ValueError):
            set_cache_entries(-1)
    finally:
        set_cache_entries(saved)


def diagrams():
    return st.integers(0, 10_000).map(lambda s: closed_braid_diagram(random_word(random.Random(s), 4, 7)))


@settings(max_examples=50)
@given(diagrams())
def test_r_is_the_lowest_z_coefficient(d):
    c = component_count(d)
    assert r_poly(d) == homfly_P(d).part("z", 1 - c)
    assert homfly_P(d).ord("z") >= 1 - c


@settings(max_examples=50)
@given(diagrams())
def test_g0_is_r_at_inverse_a_mod_2(d):
    assert g_poly(d, 0) == r_poly(d).substitute({"v": ("a", -1)}).mod2()


@settings(max_examples=50)
@given(diagrams())
def test_kauffman_of_mirror_inverts_a(d):
    assert kauffman_mod2(mirror(d)) == kauffman_mod2(d).invert_var("a")


@settings(max_examples=40)
@given(diagrams())
def test_g_degrees_never_exceed_f_degree(d):
    top = kauffman_mod2(d).deg("a")
    for k in (0, 1):
        g = g_poly(d, k)
        if not g.is_zero():
            assert g.deg("a") <= top
