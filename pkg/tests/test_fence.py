import random

import pytest
from hypothesis import given, settings, strategies as st

from quasipos.bounds import pretzel_plat, torus2_plat
from quasipos.braid import (
    Band,
    BandRepresentation,
    BraidWord,
    PlatPlan,
    braid_as_plat,
    closed_braid_diagram,
    plat_diagram,
    random_annular_band_rep,
)
from quasipos.diagram import component_count, linking_matrix, orient, writhe
from quasipos.fence import (
    Fence,
    FenceError,
    Post,
    Wire,
    band_rep_to_fence,
    fence_connected_sum,
    fence_graph_components,
    fence_m,
    fence_to_band_rep,
    fence_to_diagram,
    fence_to_positive_plat,
    fence_writhe,
    is_annular,
    plat_to_fence,
    square_fence,
)
from quasipos.skein import homfly_P, r_poly

TREFOIL_PLAT = braid_as_plat(BraidWord(2, (1, 1, 1)))


def test_square_fence_is_the_unknot():
    f = square_fence()
    assert is_annular(f)
    assert fence_graph_components(f)[0] == 1
    assert (fence_writhe(f), fence_m(f)) == (0, 1)


def test_validation():
    with pytest.raises(FenceError):
        Fence((Post(0, 0, 1), Post(0, 0, 2)))
    with pytest.raises(FenceError):
        Fence((Post(0, 0, 2), Post(1, 0, 2)), (Wire(0, 1, 3),))
    with pytest.raises(FenceError):
        Fence((Post(0, 0, 2), Post(1, 0, 2)), (Wire(0, 1, 1), Wire(0, 1, 1, -1)))
    with pytest.raises(FenceError):
        Fence((Post(0, 0, 2), Post(1, 0, 2)), (Wire(0, 1, 1, 2),))


def test_json_round_trip():
    f = plat_to_fence(*TREFOIL_PLAT)
    assert Fence.from_json(f.dumps()) == f
    assert Fence.from_json(f.to_json()) == f
    with pytest.raises(FenceError):
        Fence.from_json({"posts": [{"x": 0}]})


def test_trefoil_fence():
    f = plat_to_fence(*TREFOIL_PLAT)
    assert is_annular(f)
    assert (fence_writhe(f), fence_m(f)) == (3, 2)
    assert homfly_P(orient(fence_to_diagram(f))) == homfly_P(closed_braid_diagram(BraidWord(2, (1, 1, 1))))


@pytest.mark.parametrize("k", [-2, -3, -4])
def test_left_handed_torus_plats(k):
    word, plan = torus2_plat(k)
    f = plat_to_fence(word, plan)
    r = -(2 * k + 1)
    assert (fence_writhe(f), fence_m(f)) == (-r, r)
    closure = closed_braid_diagram(BraidWord(2, (-1,) * r))
    assert homfly_P(orient(fence_to_diagram(f))) == homfly_P(closure)


@pytest.mark.parametrize("rst", [(3, 1, 2), (1, 3, 4), (5, 3, 0), (1, 1, 2)])
def test_pretzel_fences(rst):
    r, s, t = rst
    f = plat_to_fence(*pretzel_plat(r, s, t))
    assert (fence_writhe(f), fence_m(f)) == (r + s - t, 3)


@pytest.mark.parametrize("rst", [(1, 1, 1), (3, 1, 5)])
def test_all_odd_pretzel_fences(rst):
    # every twist region is antiparallel, so each crossing is negative
    f = plat_to_fence(*pretzel_plat(*rst))
    assert (fence_writhe(f), fence_m(f)) == (-sum(rst), 3)


def test_fence_to_plat_round_trip():
    f = plat_to_fence(*pretzel_plat(3, 1, 2))
    word, plan = fence_to_positive_plat(f)
    assert word.positive and word.n == 2 * fence_m(f)
    d = orient(plat_diagram(word, plan))
    assert writhe(d) == fence_writhe(f)
    assert homfly_P(d) == homfly_P(orient(plat_diagram(*pretzel_plat(3, 1, 2))))


def test_band_representation_round_trip():
    b = BandRepresentation(3, (Band(1, 3, 1), Band(1, 2, -1), Band(2, 3, 1)))
    f = band_rep_to_fence(b)
    assert fence_to_band_rep(f) == b
    assert [w.charge for w in f.wires] == [1, -1, 1]


def test_connected_sums():
    t = plat_to_fence(*TREFOIL_PLAT)
    g = fence_connected_sum([t, t])
    assert is_annular(g) and fence_graph_components(g)[0] == 1
    assert (fence_writhe(g), fence_m(g)) == (6, 3)
    g3 = fence_connected_sum([t, t, t])
    assert fence_writhe(g3) - fence_m(g3) == 5
    assert fence_connected_sum([t, square_fence()]) == t.normalized()
    with pytest.raises(FenceError):
        fence_connected_sum([])


def test_non_annular_fence_is_rejected_by_plat_conversion():
    f = band_rep_to_fence(BandRepresentation(3, (Band(1, 3, 1),)))
    assert not is_annular(f)
    with pytest.raises(FenceError):
        fence_to_positive_plat(f)


def positive_plats():
    """Random positive plats with the nested plan whose closure is a knot."""
    def build(seed):
        rng = random.Random(seed)
        while True:
            n = 2 * rng.randint(1, 3)
            letters = [rng.randint(1, n - 1) for _ in range(rng.randint(0, 6))]
            plat = (BraidWord(n, letters), PlatPlan.nested(n))
            if component_count(plat_diagram(*plat)) == 1:
                return plat
    return st.integers(0, 10_000).map(build)


@settings(max_examples=40, deadline=None)
@given(positive_plats())
def test_plat_to_fence_keeps_writhe_m_and_knot_type(plat):
    word, plan = plat
    f = plat_to_fence(word, plan)
    d = orient(plat_diagram(word, plan))
    assert is_annular(f)
    assert fence_m(f) == word.n // 2
    assert fence_writhe(f) == writhe(d)
    assert homfly_P(orient(fence_to_diagram(f))) == homfly_P(d)


@settings(max_examples=40, deadline=None)
@given(positive_plats())
def test_fence_plat_fence_round_trip(plat):
    f = plat_to_fence(*plat)
    word, plan = fence_to_positive_plat(f)
    assert word.n == 2 * fence_m(f)
    assert r_poly(orient(plat_diagram(word, plan))) == r_poly(orient(plat_diagram(*plat)))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 6))
def test_annulus_framing_equals_writhe_minus_m(seed, n):
    b = random_annular_band_rep(random.Random(seed), n)
    f = band_rep_to_fence(b, trim=True)
    assert is_annular(f)
    d = closed_braid_diagram(b.word())
    assert -linking_matrix(d)[0][1] == fence_writhe(f) - fence_m(f)
