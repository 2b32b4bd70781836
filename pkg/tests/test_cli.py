from __future__ import annotations

import json
import subprocess
import sys

import pytest

from thinrep.cli import main
from thinrep.field import QQ
from thinrep.formats import emit_instance
from thinrep.quiver import Interval, Orientation, Representation, thin


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def planted(tmp_path, capsys):
    path = tmp_path / "planted.json"
    code, _, _ = run(capsys, "generate", "--orientation", "fbf", "--barcode", "1-4:1,2-3:2,4-4",
                     "--field", "GF(101)", "--seed", "5", "--out", str(path))
    assert code == 0
    return path


def test_decompose_thin(tmp_path, capsys):
    p = tmp_path / "thin.json"
    p.write_text(emit_instance(thin(Orientation.parse("fb"), Interval(1, 3), QQ)))
    assert run(capsys, "decompose", str(p)) == (0, "1 3 1\n", "")


def test_decompose_zero(tmp_path, capsys):
    p = tmp_path / "zero.json"
    p.write_text(emit_instance(Representation.zero(Orientation.parse("ff"), QQ)))
    assert run(capsys, "decompose", str(p), "--verify") == (0, "", "")
    assert run(capsys, "oracle", str(p)) == (0, "", "")


def test_planted_decompose_verify_oracle(planted, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "decompose", str(planted), "--verify", "--certificate", str(cert))
    assert code == 0 and out == "1 4 1\n2 3 2\n4 4 1\n"
    assert run(capsys, "verify", str(planted), str(cert))[:2] == (0, out)
    assert run(capsys, "oracle", str(planted))[:2] == (0, out)


def test_verify_rejects_tampered_certificate(planted, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    run(capsys, "decompose", str(planted), "--certificate", str(cert))
    doc = json.loads(cert.read_text())
    doc["column_tags"][1] = doc["column_tags"][1][::-1]
    cert.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(planted), str(cert))
    assert code == 1 and "verification failed" in err


def test_generate_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "generate", "--n", "6", "--seed", "42", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "generate", "--n", "6", "--seed", "42")
    assert code == 0 and out == a.read_text()


@pytest.mark.parametrize("argv", [
    ["generate", "--n", "3", "--barcode", "1-4"],
    ["generate", "--orientation", "ff", "--n", "4"],
    ["generate"],
    ["generate", "--n", "0"],
    ["generate", "--orientation", "fx"],
])
def test_generate_rejects_bad_flags(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_bad_field_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--n", "3", "--field", "GF(6)"])
    assert exc.value.code == 2


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "GF(6)", "n": 1, "orientation": [], "dims": [0], "maps": []}')
    code, _, err = run(capsys, "decompose", str(bad))
    assert code == 2 and "not prime" in err
    assert run(capsys, "decompose", str(tmp_path / "missing.json"))[0] == 2


def test_oracle_bound(tmp_path, capsys):
    p = tmp_path / "big.json"
    run(capsys, "generate", "--n", "11", "--max-dim", "1", "--out", str(p))
    code, _, err = run(capsys, "oracle", str(p))
    assert code == 2 and "--max-n" in err
    assert run(capsys, "oracle", str(p), "--max-n", "11")[0] == 0


def test_refine(tmp_path, capsys):
    p = tmp_path / "filt.json"
    p.write_text(json.dumps({"field": "Q", "dim": 2, "chain1": [[["1", "0"]]], "chain2": [[["0", "1"]]]}))
    code, out, _ = run(capsys, "refine", str(p))
    assert code == 0 and sorted(out.splitlines()) == ["[0 1] : U'1", "[1 0] : U1"]
    p.write_text(json.dumps({"field": "Q", "dim": 2, "chain1": [[["1", "0"]], [["0", "1"]]], "chain2": []}))
    assert run(capsys, "refine", str(p))[0] == 2


def test_bench(capsys):
    assert run(capsys, "bench", "--count", "0") == (0, "instances: 0\n", "")
    code, out, _ = run(capsys, "bench", "--count", "5", "--n", "5", "--dim", "4", "--seed", "3")
    assert code == 0 and "verified: 5/5 (100.0%)" in out
    code, out, _ = run(capsys, "bench", "--count", "3", "--n", "4", "--backend", "both")
    assert code == 0 and out.count("verified: 3/3") == len([b for b in ("python", "compiled") if f"backend: {b}" in out])
    assert run(capsys, "bench", "--count", "-1")[0] == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "thin.json"
    p.write_text(emit_instance(thin(Orientation.parse("f"), Interval(1, 2), QQ)))
    res = subprocess.run([sys.executable, "-m", "thinrep", "decompose", str(p)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1 2 1\n"
