import csv
import io
import json
import subprocess
import sys

import pytest

from tlcalc.cli import emit_json, main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bratteli_ascii_marks_critical_columns(capsys):
    code, out, _ = run(capsys, "--mode", "root:16", "--n", "12", "bratteli")
    assert code == 0
    lines = out.splitlines()
    r = lines.index("dimR")
    assert lines[r + 12].split() == ["12", "100", "265", "|", "10", "54", "|", "0", "1", "|", "0"]
    assert lines[r + 4].split() == ["4", "0", "1", "|", "0"]


def test_bratteli_generic_no_radicals(capsys):
    code, out, _ = run(capsys, "--mode", "generic", "--n", "6", "--format", "json", "bratteli")
    data = json.loads(out)
    assert code == 0 and data["ell"] is None
    assert all(c["dimR"] == 0 for row in data["rows"] for c in row["cells"])
    assert "|" not in main_ascii(capsys, "--n", "6", "bratteli")


def main_ascii(capsys, *args):
    return run(capsys, *args)[1]


def test_beta_zero_row_flags(capsys):
    _, out, _ = run(capsys, "--mode", "beta:0/1", "--n", "7", "--format", "json", "bratteli")
    rows = json.loads(out)["rows"]
    odd = [all(c["dimR"] == 0 for c in r["cells"]) for r in rows if r["n"] % 2]
    assert all(odd)


@pytest.mark.parametrize(
    "args",
    [
        ("--n", "4", "--p", "1", "gram"),
        ("--mode", "root:24", "--n", "4", "central"),
        ("--mode", "root:12", "--n", "2", "--p", "0", "induce"),
        ("--mode", "beta:0/1", "--n", "2", "hom"),
        ("--mode", "root:16", "--n", "5", "projective"),
        ("--mode", "root:16", "--n", "6", "decompose"),
        ("--mode", "beta:1/3", "--n", "5", "bratteli"),
    ],
)
def test_json_roundtrip(capsys, args):
    code, out, _ = run(capsys, *args, "--format", "json")
    assert code == 0
    assert emit_json(json.loads(out)) == out


def test_gram_outputs(capsys):
    _, out, _ = run(capsys, "--n", "4", "--p", "1", "--format", "json", "gram")
    cell = json.loads(out)["gram"][0]
    assert cell["states"] == ["()..", ".().", "..()"]
    assert cell["det_beta"] == "beta^3-2*beta"
    _, out, _ = run(capsys, "--n", "4", "--p", "2", "--format", "json", "gram")
    assert json.loads(out)["gram"][0]["det_beta"] == "beta^4-beta^2"
    _, out, _ = run(capsys, "--n", "5", "--p", "0", "--format", "json", "gram")
    assert json.loads(out)["gram"][0]["det"] == "1"


def test_csv_output(capsys):
    _, out, _ = run(capsys, "--mode", "root:16", "--n", "4", "--format", "csv", "bratteli")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "p", "dimV", "dimR", "dimL", "critical", "orbit"]
    assert ["4", "1", "3", "1", "2", "0", "1"] in rows


def test_central_table(capsys):
    _, out, _ = run(capsys, "--mode", "root:24", "--n", "4", "--format", "json", "central")
    data = json.loads(out)
    assert data["F_central"] and data["C_central"]
    for e in data["eigenvalues"]:
        assert e["f_computed"] == e["f_expected"]
        assert e["c_computed"] == e["c_expected"]
    assert [e["c_computed"] for e in data["eigenvalues"]] == ["1", "-s^4", "1"]


def test_exceptional_hom_beta_zero(capsys):
    _, out, _ = run(capsys, "--mode", "beta:0/1", "--n", "2", "--format", "json", "hom")
    cells = {(c["p"], c["p2"]): c["dim"] for c in json.loads(out)["hom"]}
    assert cells[(1, 0)] == 1


def test_projective_report(capsys):
    _, out, _ = run(capsys, "--mode", "root:16", "--n", "5", "--p", "0", "--format", "json", "projective")
    cell = json.loads(out)["projective"][0]
    assert cell["dim"] == 6 and cell["ok"]


def test_flags_after_command_and_out_file(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "gram", "--n", "3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["n"] == 3


def test_jobs(capsys):
    _, serial, _ = run(capsys, "--mode", "root:16", "--n", "6", "--format", "json", "decompose")
    _, par, _ = run(capsys, "--mode", "root:16", "--n", "6", "--format", "json", "--jobs", "2", "decompose")
    assert serial == par


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--mode", "bogus", "--n", "2", "hom"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["hom"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--n", "3", "frobnicate"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "--n", "3", "--p", "5", "gram")
    assert code == 2 and "out of range" in err


def test_mode_unsupported_exit(capsys):
    code, _, err = run(capsys, "--mode", "beta:1/3", "--n", "3", "central")
    assert code == 3 and "not available" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "tlcalc", "--n", "3", "--format", "json", "bratteli"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["command"] == "bratteli"
