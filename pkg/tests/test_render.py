import xml.etree.ElementTree as ET

import pytest

from quasipos.bounds import FamilySpec, family_generate, pretzel_plat
from quasipos.braid import BandRepresentation, Band, parse_braid_text
from quasipos.diagram import LinkDiagram
from quasipos.fence import plat_to_fence, square_fence
from quasipos.plotting import bounds_figure
from quasipos.render import RenderError, render_svg

NS = "{http://www.w3.org/2000/svg}"


def classes(svg: str):
    root = ET.fromstring(svg)
    return [el.get("class") for el in root if el.get("class")]


def test_square_fence_has_two_posts_and_two_wires():
    c = classes(render_svg(square_fence()))
    assert c.count("post") == 2 and c.count("wire") == 2 and c.count("charge") == 2


def test_braid_has_one_over_strand_per_letter():
    c = classes(render_svg(parse_braid_text("braid n=4\n1 3 -2")))
    assert c.count("over") == 3 and c.count("under") == 6


def test_posts_are_broken_under_wires():
    f = plat_to_fence(*pretzel_plat(1, 1, 2))
    c = classes(render_svg(f))
    assert c.count("wire") == len(f.wires)
    assert c.count("post") > len(f.posts)


def test_plat_and_bands():
    c = classes(render_svg(pretzel_plat(1, 1, 2)))
    assert c.count("cup") == 3 and c.count("cap") == 3
    svg = render_svg(BandRepresentation(3, (Band(1, 3, 1), Band(1, 2, -1))))
    assert "<text" in svg and ">-</text>" in svg


def test_rendering_is_deterministic():
    fam = family_generate(FamilySpec("pretzel", (3, 1, 2)))
    assert render_svg(fam.fences[0]) == render_svg(fam.fences[0])
    assert render_svg(fam.plats[0]) == render_svg(fam.plats[0])


def test_unsupported_objects():
    with pytest.raises(RenderError):
        render_svg(LinkDiagram((), (), 1))


def test_bounds_figure_writes_a_file(tmp_path):
    reports = [family_generate(FamilySpec("torus2", (k,))).report() for k in (-2, 0, 1)]
    out = tmp_path / "bounds.svg"
    bounds_figure(reports, str(out), title="O{2,2k+1}")
    first = out.read_bytes()
    bounds_figure(reports, str(out), title="O{2,2k+1}")
    assert first.startswith(b"<?xml") and out.read_bytes() == first
