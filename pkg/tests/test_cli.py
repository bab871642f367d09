import json

import pytest

from sl2fusion.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_char_fusion_json(capsys):
    code, out, _ = call(capsys, "char", "fusion", "--a", "2,2", "--qmax4", "8")
    assert code == 0
    terms = json.loads(out)["terms"]
    assert [(t["q4"], t["z2"], t["c"]) for t in terms] == [
        (0, 0, "1"), (0, 2, "1"), (4, 2, "1"), (8, 4, "1")]


def test_char_irrep_text(capsys):
    code, out, _ = call(capsys, "--format", "text", "char", "irrep", "--j", "0", "--k", "1",
                        "--qmax4", "8")
    assert code == 0
    assert out.strip() == "1 + z^-1 q + q + z q + z^-1 q^2 + 2 q^2 + z q^2"


def test_decompose(capsys):
    code, out, _ = call(capsys, "decompose", "--d", "0,2,0", "--verify")
    assert code == 0
    obj = json.loads(out)
    assert obj["verlinde"] == [1, 0, 1] and obj["verified"] is True
    assert [(k["j"], k["poly"]) for k in obj["K"]] == [(0, "1"), (2, "q")]
    code, out, _ = call(capsys, "--format", "text", "decompose", "--d", "0,2,0")
    assert out.splitlines() == ["K_0 = 1", "K_2 = q", "verlinde: 1 0 1"]


def test_verlinde(capsys):
    assert call(capsys, "verlinde", "--d", "0,2,0")[:2] == (0, "[1,0,1]\n")


def test_basis_count_reports_mismatch(capsys):
    code, out, _ = call(capsys, "basis", "count", "--d", "0,0,0", "--bound", "scaled",
                        "--qmax4", "40")
    obj = json.loads(out)
    assert code == 0
    assert obj["matches_character"] is False
    code, out, _ = call(capsys, "basis", "count", "--d", "0,0,0", "--qmax4", "40")
    assert json.loads(out)["matches_character"] is True


def test_oracle_commands(capsys):
    assert call(capsys, "oracle", "dim", "--a", "2,3")[:2] == (0, "6\n")
    code, out, _ = call(capsys, "oracle", "embed", "--d", "0,1")
    assert json.loads(out) == {"constant": "-12", "d": [0, 1], "ok": True}
    code, out, _ = call(capsys, "oracle", "annihilate", "--a", "2,2", "--imax", "3")
    assert json.loads(out)["ok"] is True
    code, out, _ = call(capsys, "oracle", "extremal", "--b", "2,1", "--qmax4", "16")
    assert json.loads(out)["ok"] is True


def test_verify_exit_codes(capsys):
    code, out, _ = call(capsys, "verify", "verlinde", "--max-level", "4")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = call(capsys, "verify", "basis", "--bound", "scaled", "--k", "2")
    assert code == 1 and json.loads(out)["ok"] is False


@pytest.mark.parametrize("argv", [
    ["char", "ld", "--d", "0,2"],
    ["char", "fusion", "--a", "0"],
    ["decompose", "--d", "1,1,1"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_output_file_and_determinism(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert run(["--output", str(target), "char", "ld", "--d", "0,1,1", "--qmax4", "20"]) == 0
    first = target.read_text()
    run(["--output", str(target), "char", "ld", "--d", "0,1,1", "--qmax4", "20"])
    assert target.read_text() == first
    assert json.loads(first)["qmax4"] == 20
