import pytest

from quasipos.bounds import (
    BoundsError,
    FamilySpec,
    QBoundsReport,
    family_generate,
    granny,
    q_lower_closed_positive_braid,
    q_lower_from_fence,
    q_report,
    q_upper_from_F,
    q_upper_from_framed,
    q_upper_from_G,
    q_upper_from_R,
    subadditivity_check,
)
from quasipos.braid import BraidWord, braid_as_plat, closed_braid_diagram
from quasipos.diagram import LinkDiagram
from quasipos.fence import plat_to_fence, square_fence

UNKNOT = LinkDiagram((), (), 1)
TREFOIL_WORD = BraidWord(2, (1, 1, 1))
TREFOIL = closed_braid_diagram(TREFOIL_WORD)


def test_unknot_bounds_are_all_minus_one():
    assert q_lower_from_fence(square_fence()) == -1
    assert q_upper_from_R(UNKNOT) == -1
    assert q_upper_from_F(UNKNOT) == -1
    assert q_upper_from_G(UNKNOT, 1) == -1
    assert q_upper_from_framed(UNKNOT) == (-1, True)


def test_trefoil_report_is_exact():
    rep = q_report("3_1", TREFOIL, positive_braids=[TREFOIL_WORD])
    assert rep.best_lower == 1 and rep.best_upper == 1 and rep.exact == 1
    assert q_lower_closed_positive_braid(TREFOIL_WORD) == 1
    value, even = q_upper_from_framed(TREFOIL)
    assert value >= 1 and even


def test_left_handed_trefoil_via_g1():
    fam = family_generate(FamilySpec("torus2", (-2,)))
    assert q_upper_from_G(fam.diagram, 1) == -6
    assert fam.report().exact == -6


@pytest.mark.parametrize("k", [-3, -4, -5])
def test_g1_bound_for_left_handed_torus_knots(k):
    m = 2 * k + 1
    d = closed_braid_diagram(BraidWord(2, (-1,) * -m))
    assert q_upper_from_G(d, 1) == 2 * m


def test_granny_is_exact_three():
    rep = granny().report()
    assert rep.exact == 3
    assert {b.by for b in rep.lower} == {"fence-writhe"}


def test_report_json_and_tsv():
    rep = q_report("3_1", TREFOIL, positive_braids=[TREFOIL_WORD])
    data = rep.to_json()
    assert set(data) == {"knot", "lower", "upper", "exact", "warnings"}
    assert data["exact"] == 1
    assert rep.tsv_row().split("\t")[0] == "3_1"
    assert rep.tsv_row().split("\t")[-1] == "1"


def test_no_exact_value_when_bounds_differ():
    rep = QBoundsReport("k")
    assert rep.exact is None
    rep = q_report("O{2,-3} without fence", closed_braid_diagram(BraidWord(2, (-1, -1, -1))),
                   budget_F=0)
    assert rep.best_lower is None and rep.exact is None
    assert any("skipped" in w for w in rep.warnings)


def test_slice_flag_raises_an_alarm():
    rep = q_report("3_1", TREFOIL, positive_braids=[TREFOIL_WORD], slice_flag=True)
    assert any("slice" in w and "INCONSISTENT" in w for w in rep.warnings)
    quiet = q_report("unknot", UNKNOT, fences=[square_fence()], slice_flag=True)
    assert not quiet.warnings


def test_report_needs_an_input():
    with pytest.raises(BoundsError):
        q_report("nothing")


def test_bounds_reject_links():
    with pytest.raises(BoundsError):
        q_upper_from_R(closed_braid_diagram(BraidWord(2, (1, 1))))
    with pytest.raises(BoundsError):
        q_lower_closed_positive_braid(BraidWord(2, (1, 1)))
    with pytest.raises(BoundsError):
        q_lower_closed_positive_braid(BraidWord(2, (1, -1, 1)))


def test_family_validation():
    with pytest.raises(BoundsError, match="link"):
        family_generate(FamilySpec("torus", (2, 4)))
    with pytest.raises(BoundsError, match="not a knot"):
        family_generate(FamilySpec("pretzel", (2, 2, 1)))
    with pytest.raises(BoundsError):
        family_generate(FamilySpec("pretzel", (-1, 1, 1)))
    with pytest.raises(BoundsError):
        family_generate(FamilySpec("moebius", (1,)))


def test_torus_knot_family():
    rep = family_generate(FamilySpec("torus", (3, 4))).report()
    assert rep.exact == (3 - 1) * 4 - 3  # e - n for (s1 s2)^4 in B_3


def test_subadditivity():
    t = plat_to_fence(*braid_as_plat(TREFOIL_WORD))
    out = subadditivity_check([t, t, t])
    assert out == {"parts": [1, 1, 1], "combined": 5, "sum_of_q_plus_1": 6, "holds": True}


def test_degree_identity_warning_is_informative():
    rep = family_generate(FamilySpec("pretzel", (3, 1, 2))).report()
    assert rep.exact == -1
    assert any("differs" in w for w in rep.warnings)
    assert not any("INCONSISTENT" in w for w in rep.warnings)
