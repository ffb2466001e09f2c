import json
import subprocess
import sys

import pytest

from quasipos.cli import main, parse_input
from quasipos.braid import BraidError, BraidWord
from quasipos.fence import Fence


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_input_formats():
    assert parse_input("braid n=4\n1 3 -2") == BraidWord(4, (1, 3, -2))
    word, plan = parse_input("plat n=4 bottom=(1 2)(3 4) top=(1 2)(3 4)\n2 1 1 3 3 2")
    assert word.letters == (2, 1, 1, 3, 3, 2)
    assert isinstance(parse_input('{"posts":[{"x":0,"y0":0,"y1":1}],"wires":[]}'), Fence)
    assert parse_input("X[1,1,2,2]").crossings == ((1, 1, 2, 2),)
    with pytest.raises(BraidError, match="nesting"):
        parse_input("plat n=4 bottom=(1 3)(2 4) top=(1 2)(3 4)\n1")


def test_qbounds_torus2(capsys):
    code, out, _ = run(capsys, "qbounds", "--family", "torus2", "-k", "1")
    assert code == 0 and json.loads(out)["exact"] == 1


def test_family_pretzel_with_bounds(capsys):
    code, out, _ = run(capsys, "family", "--pretzel", "3", "3", "2", "--qbounds")
    assert code == 0 and json.loads(out)["exact"] == 1


def test_invariant_g1(capsys):
    code, out, _ = run(capsys, "invariant", "--kind", "G1", "--family", "torus2", "-k", "-2")
    assert code == 0 and json.loads(out)["text"] == "a^2+a^3+a^5"


def test_tsv_table_keeps_input_order(capsys):
    code, out, _ = run(capsys, "qbounds", "--torus2", "1", "-2", "0", "--format", "tsv")
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == "knot\tlower\tupper\texact"
    assert [l.split("\t")[0] for l in lines[1:]] == ["O{2,3}", "O{2,-3}", "O{2,1}"]
    assert [l.split("\t")[-1] for l in lines[1:]] == ["1", "-6", "-1"]


def test_slice_warning_goes_to_stderr_for_tsv(capsys):
    code, _, err = run(capsys, "qbounds", "braid n=2\\n1 1 1", "--slice", "--format", "tsv")
    assert code == 0 and "slice" in err


def test_convert_round_trip_preserves_r(capsys):
    code, out, _ = run(capsys, "convert", "braid n=3\\n1 2 1 2", "--to", "fence")
    fence_json = json.loads(out)["result"]
    code2, out2, _ = run(capsys, "invariant", "--kind", "R", fence_json)
    code3, out3, _ = run(capsys, "invariant", "--kind", "R", "braid n=3\\n1 2 1 2")
    assert code == code2 == code3 == 0
    assert json.loads(out2)["text"] == json.loads(out3)["text"]


def test_figure_option(capsys, tmp_path):
    path = tmp_path / "q.png"
    code, _, _ = run(capsys, "qbounds", "--torus2", "-2", "1", "--figure", str(path))
    assert code == 0 and path.stat().st_size > 0


def test_render_is_byte_identical(capsys):
    _, a, _ = run(capsys, "render", "--pretzel", "3", "1", "2")
    _, b, _ = run(capsys, "render", "--pretzel", "3", "1", "2")
    assert a == b and a.startswith("<svg")


def test_check_reports_each_property(capsys):
    code, out, _ = run(capsys, "check", "--only", "granny", "mfw")
    assert code == 0
    assert [l.split()[0] for l in out.strip().split("\n")] == ["PASS", "PASS"]
    code, out, _ = run(capsys, "check", "--only", "g1-recursion-stated")
    assert code == 1 and out.startswith("FAIL")


def test_domain_errors_exit_1_without_stdout(capsys):
    code, out, err = run(capsys, "qbounds", "--torus", "2", "4")
    assert code == 1 and out == "" and "link" in err
    code, out, err = run(capsys, "invariant", "--kind", "P", "--torus", "3", "5", "--budget-crossings", "8")
    assert code == 1 and out == "" and "budget" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "qbounds")[0] == 2
    assert run(capsys, "invariant", "--kind", "nope", "--torus2", "1")[0] == 2
    assert run(capsys, "qbounds", "gibberish")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quasipos", "qbounds", "--torus2", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["exact"] == -1
