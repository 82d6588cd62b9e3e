import json

from cotensor.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_validate_fixture(capsys):
    code, out = run(capsys, "validate", "fixtures/f1.coalg")
    assert code == 0 and "pass" in out
    code, out = run(capsys, "validate", "f4.coalg")
    assert code == 0 and "cocommutative" in out


def test_homology(capsys):
    code, out = run(capsys, "--format", "machine", "homology", "f3.coalg", "--maxdeg", "6")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == 0


def test_cotor_benchmark_line(capsys):
    code, out = run(capsys, "cotor", "--left", "fixtures/triv-k.cm", "--right", "fixtures/triv-k.cm", "--q", "3")
    assert code == 0
    assert "CoTor^3: dim 1 at chain degree 6" in out


def test_cotor_verify(capsys):
    code, out = run(capsys, "--verify", "cotor", "--left", "triv-k-f2.cm", "--right", "triv-k-f2.cm",
                    "--q", "2", "--maxdeg", "8")
    assert code == 0 and "agrees" in out


def test_fibrant_and_fibration(capsys):
    code, out = run(capsys, "--format", "machine", "fibrant", "triv-k-f2.cm")
    assert code == 0 and json.loads(out)["fibrant"] is False
    code, out = run(capsys, "--format", "machine", "fibrant", "cofree-k-f2.cm")
    assert json.loads(out)["fibrant"] is True
    code, out = run(capsys, "--format", "machine", "fibration", "gen-d2-s2-f2.cmap")
    assert code == 0 and json.loads(out)["fibration"] is True
    code, out = run(capsys, "--format", "machine", "fibration", "triv-k-to-zero.cmap")
    assert json.loads(out)["fibration"] is False


def test_postnikov_verify(capsys):
    code, out = run(capsys, "postnikov", "fixtures/triv-k.cm", "--stages", "5", "--verify")
    assert code == 0 and "verify_tower: pass" in out
    code, out = run(capsys, "--verify", "--maxdeg", "7", "postnikov", "triv-k-f2.cm", "--stages", "7")
    assert code == 0
    assert "verify_tower: pass" in out and "fibrant: True" in out


def test_factorize_verify(capsys):
    code, out = run(capsys, "--verify", "--maxdeg", "6", "factorize", "triv-k-to-zero.cmap")
    assert code == 0 and "verify: pass" in out


def test_emss_verify(capsys):
    code, out = run(capsys, "--verify", "--maxdeg", "8", "--qmax", "3", "--format", "machine",
                    "emss", "--left", "triv-k-f4.cm", "--right", "triv-k-f4.cm")
    assert code == 0
    data = json.loads(out)
    assert all(data["checks"].values())
    assert [0, 0, 1] in data["E2"] and [2, 6, 1] in data["E2"]


def test_ext_and_cotensor(capsys):
    code, out = run(capsys, "ext", "--left", "triv-d2-f2.cm", "--right", "triv-k-f2.cm", "--q", "1", "--maxdeg", "6")
    assert code == 0 and "Ext^1: dim" in out
    code, out = run(capsys, "cotensor", "--left", "cofree-k-f2.cm", "--right", "triv-k-f2.cm")
    assert code == 0


def test_fixtures_listing(capsys):
    code, out = run(capsys, "--format", "machine", "fixtures")
    names = {r["file"] for r in json.loads(out)["fixtures"]}
    assert code == 0 and "f2.coalg" in names and "f3-to-f2.map" in names


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "validate", "no-such-file.cm")[0] == 2
    bad = tmp_path / "bad.cm"
    bad.write_text('{"kind": "complex", "field": 2, "dims": [1, 1, 1], "diff": {"1": [[1]], "2": [[1]]}}')
    code, out = run(capsys, "validate", str(bad))
    # an invalid input is a failed precondition, not a breach
    assert code == 1 and "FAIL at degree 2" in out
    assert run(capsys, "--maxdeg", "1", "fixtures")[0] == 1
    assert run(capsys, "postnikov", "triv-k-f2.cm", "--stages", "12")[0] == 1
    assert run(capsys, "cotor", "--left", "triv-k-f2.cm", "--right", "triv-k-f4.cm", "--q", "1")[0] == 1
