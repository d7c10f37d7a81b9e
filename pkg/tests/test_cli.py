import json
import subprocess
import sys

import pytest

from ternalg import catalog
from ternalg.cli import main
from ternalg.evolalg import EvolutionAlgebra
from ternalg.field import QQ
from ternalg.matrix import Matrix


def write_algebra(tmp_path, name, F=QQ, alpha=2, beta=3, fname=None):
    A = catalog.instantiate(name, {"alpha": alpha, "beta": beta}, F)
    p = tmp_path / (fname or f"{name}.json")
    p.write_text(json.dumps(A.to_json()))
    return p


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_A8a(tmp_path, capsys):
    code, out, _ = run(["info", write_algebra(tmp_path, "A8a")], capsys)
    assert code == 0
    assert "rank 1, not perfect" in out
    assert "e2^2 = 2*e1^2" in out


def test_info_A1_json(tmp_path, capsys):
    code, out, _ = run(["--json", "info", write_algebra(tmp_path, "A1")], capsys)
    data = json.loads(out)
    assert code == 0 and data["perfect"] is True and data["rank"] == 2


def test_info_malformed(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(["info", p], capsys)
    assert code == 2 and "parse error" in err


def test_info_invariant(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"field": "rational", "dimension": 3, "structure_matrix": [["1"]]}))
    assert run(["info", p], capsys)[0] == 3


def test_missing_file(tmp_path, capsys):
    assert run(["info", tmp_path / "nope.json"], capsys)[0] == 2


def test_tder_compare(tmp_path, capsys):
    code, out, _ = run(["tder", write_algebra(tmp_path, "A5"), "--compare"], capsys)
    assert code == 0
    assert "dimension 7" in out and "conformance PASS" in out


def test_tder_plain(tmp_path, capsys):
    code, out, _ = run(["tder", write_algebra(tmp_path, "A1")], capsys)
    assert code == 0 and out.startswith("dimension 4")


def test_tder_json_schema(tmp_path, capsys):
    code, out, _ = run(["tder", write_algebra(tmp_path, "A6"), "--json", "--compare"], capsys)
    data = json.loads(out)
    assert data["dimension"] == 8 == len(data["basis"])
    assert set(data["basis"][0]) == {"d1", "d2", "d3"}
    assert data["conformance"]["pass"] is True
    assert data["report"]["d1_homogeneous_dim"] == 2


def test_tder_oracle(tmp_path, capsys):
    code, out, _ = run(["tder", write_algebra(tmp_path, "A0"), "--oracle"], capsys)
    assert code == 0 and "dimension 12" in out


def test_tder_oracle_bound(tmp_path, capsys):
    A = EvolutionAlgebra(QQ, Matrix.identity(QQ, 8))
    p = tmp_path / "big.json"
    p.write_text(json.dumps(A.to_json()))
    assert run(["tder", p, "--oracle"], capsys)[0] == 5


def test_taut_sample_verify_decompose(tmp_path, capsys):
    alg = write_algebra(tmp_path, "A1")
    trip = tmp_path / "t.json"
    code, _, _ = run(["taut", "sample", alg, "--seed", "7", "-o", trip], capsys)
    assert code == 0
    code, out, _ = run(["taut", "verify", alg, trip], capsys)
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(["--json", "taut", "decompose", alg, trip], capsys)
    assert code == 0 and set(json.loads(out)) == {"sigma", "lambda", "mu"}


def test_taut_sample_deterministic(tmp_path, capsys):
    alg = write_algebra(tmp_path, "A3a")
    outs = [run(["--seed", "3", "taut", "sample", alg], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_taut_sample_sigma(tmp_path, capsys):
    alg = write_algebra(tmp_path, "A1")
    code, out, _ = run(["taut", "sample", alg, "--sigma", "2,1"], capsys)
    f2 = json.loads(out)["f2"]
    assert f2[0][0] == "0" and f2[1][0] != "0"
    assert run(["taut", "sample", alg, "--sigma", "1,1"], capsys)[0] == 3


def test_taut_verify_false(tmp_path, capsys):
    alg = write_algebra(tmp_path, "A1")
    trip = tmp_path / "t.json"
    trip.write_text(json.dumps({"f1": [["1", "0"], ["0", "1"]], "f2": [["1", "0"], ["0", "1"]],
                                "f3": [["2", "0"], ["0", "2"]]}))
    code, out, _ = run(["taut", "verify", alg, trip], capsys)
    assert code == 4 and out.strip() == "false"


def test_taut_decompose_failure(tmp_path, capsys):
    alg = write_algebra(tmp_path, "A1")
    trip = tmp_path / "t.json"
    trip.write_text(json.dumps({"f1": [["1", "0"], ["0", "1"]], "f2": [["1", "1"], ["0", "1"]],
                                "f3": [["1", "0"], ["0", "1"]]}))
    assert run(["taut", "decompose", alg, trip], capsys)[0] == 4


def test_taut_non_perfect(tmp_path, capsys):
    assert run(["taut", "sample", write_algebra(tmp_path, "A0")], capsys)[0] == 6


def test_catalog_default(capsys):
    code, out, _ = run(["catalog"], capsys)
    assert code == 0 and "10/10 PASS" in out


def test_catalog_prime(capsys):
    code, out, _ = run(["catalog", "--field", "prime:7", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["passed"] == 10


def test_catalog_bad_params(capsys):
    assert run(["catalog", "--param", "alpha=0"], capsys)[0] == 3
    assert run(["catalog", "--param", "alpha=2", "--param", "beta=1/2"], capsys)[0] == 3
    assert run(["catalog", "--param", "gamma=2"], capsys)[0] == 2


def test_module_entry_point_bytes_identical(tmp_path):
    alg = write_algebra(tmp_path, "A5")
    cmd = [sys.executable, "-m", "ternalg", "tder", str(alg), "--json"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert json.loads(a.stdout)["dimension"] == 7
