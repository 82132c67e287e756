import json
import subprocess
import sys

import pytest

from ordrank.cli import run
from ordrank.dsl import parse_order, parse_series
from ordrank.oag import OAGroup, Z


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ef_reports_equivalence(capsys):
    code, out, _ = call(capsys, "ef", "fin(7)", "fin(9)", "--k", "3")
    assert code == 0 and out.splitlines()[0] == "equivalent: true"
    code, out, _ = call(capsys, "ef", "w", "w + fin(1)", "--k", "2")
    assert out.splitlines()[0] == "equivalent: false"


def test_spine_table(capsys):
    code, out, _ = call(capsys, "spine", "sum over fin(3) of [Z,Z,Z]", "--n", "2")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 5 and lines[0].split()[:4] == ["point", "A", "F", "D"]
    assert lines[-1] == "constant colours: true"


def test_gallery_cursed(capsys):
    code, out, _ = call(capsys, "gallery", "cursed-0-vs-0")
    assert code == 0
    assert "[EVIDENCE]" in out and "X = inv(wsum(; inv(Q + fin(2)))) + wsum(; Q + fin(2))" in out


def test_cutdef_and_coaug(capsys):
    code, out, _ = call(capsys, "cutdef", "wsum(; Q + fin(2))", "inv(wsum(; Q + fin(3)))", "--k", "6")
    assert code == 0 and "status: DefinableParamFree" in out
    code, out, _ = call(capsys, "coaug", "Q", "Q", "Q", "--k", "3")
    assert code == 0 and "status: CoAugmentEvidence" in out


def test_rank_and_drk(capsys):
    code, out, _ = call(capsys, "rank", "fin(3)")
    assert out.splitlines()[:3] == ["∅", "{2}", "{1, 2}"]
    code, out, _ = call(capsys, "drk", "fin(2) + inv(fin(2))")
    assert code == 0 and "no dense part: true" in out


def test_group_and_hahn(capsys):
    code, out, _ = call(capsys, "group", "sum over fin(2) of [Z_(2), Z_(3)]", "--n", "2",
                        "--element", "{0: 1, 1: 1}")
    assert code == 0 and "largest proper 2-divisible convex subgroup: Σ{1}" in out
    code, out, _ = call(capsys, "hahn", "1 - t^{0: 1}", "--group", "sum over fin(2) of [Z, Z]",
                        "--invert", "--max-terms", "3")
    assert code == 0
    inverse = next(l for l in out.splitlines() if l.startswith("inverse: "))[len("inverse: "):]
    # what the tool prints must parse back
    G = OAGroup.power(Z, 2)
    assert parse_series(G, inverse).terms == parse_series(G, "1 + t^{0: 1} + t^{0: 2}").terms


def test_verify_exit_codes(capsys):
    code, out, _ = call(capsys, "verify", "sum over fin(2) of [Z, Q]")
    assert code == 0 and out.strip().endswith("1/1 passed")
    code, _, err = call(capsys, "verify")
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["ef", "fin(1)"],
    ["ef", "fin(1)", "fin(2)", "--bogus"],
    ["ef", "fin(", "fin(2)"],
    ["ef", "fin(1)", "fin(2)", "--k", "99"],
    ["rank", "w"],
    ["spine", "sum over fin(1) of [Z]", "--n", "1"],
    ["gallery", "missing"],
])
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_record_format_is_stable(capsys):
    outs = [call(capsys, "cutdef", "w", "w*", "--k", "2", "--format", "record")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    rec = json.loads(outs[0])
    assert rec["verb"] == "cutdef" and rec["status"] == "NotSeparableUpTo"
    rec = json.loads(call(capsys, "gallery", "all", "--format", "record", "--seed", "5")[1])
    assert rec["ok"] and len(rec["reports"]) == 8


def test_printed_orders_reparse(capsys):
    _, out, _ = call(capsys, "ef", "wsum(fin(1); Q, fin(2))", "zsum(fin(1))", "--k", "1",
                     "--format", "record")
    rec = json.loads(out)
    for key in ("left", "right"):
        assert parse_order(rec[key]) is not None


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ordrank", "ef", "Q", "Q + Q", "--k", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("equivalent: true")
