import json
import subprocess
import sys

import numpy as np
import pytest

from anncat import (AnnStructure, apply_structure_coboundary, enumerate_structures, make_cyclic_ring, random_pair,
                    regular_bimodule)
from anncat.cli import main, run


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def _json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def ring_file(tmp_path):
    R = make_cyclic_ring(4)
    return _write(tmp_path / "z4.json", R.to_json())


@pytest.fixture
def z3_pair(tmp_path):
    R = make_cyclic_ring(3)
    M = regular_bimodule(R)
    structs = list(enumerate_structures(R, M))
    f = structs[5]
    g = apply_structure_coboundary(f, random_pair(R, M, np.random.default_rng(3)))
    return _write(tmp_path / "f.json", f.to_json()), _write(tmp_path / "g.json", g.to_json())


def test_validate_ring_ok(ring_file, capsys):
    assert main(["validate", ring_file]) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_broken_ring_reports_witness(tmp_path, capsys):
    R = make_cyclic_ring(3).to_json()
    R["mul"][1][1] = 2
    path = _write(tmp_path / "bad.json", R)
    assert main(["--format", "json", "validate", path]) == 1
    rep = _json(capsys)["results"][0]["report"]
    assert not rep["ok"] and rep["violations"]


def test_structure_with_unnormalized_xi(tmp_path, capsys):
    R = make_cyclic_ring(2)
    doc = AnnStructure.zero(R, regular_bimodule(R)).to_json()
    doc["xi"][0 * 4 + 1 * 2 + 1] = 1
    path = _write(tmp_path / "s.json", doc)
    assert main(["validate", "--format", "json", path]) == 1
    res = _json(capsys)["results"][0]
    assert res["ok"] is False
    assert [0, 1, 1] in res["witnesses"]


def test_structure_failing_relations(tmp_path, capsys):
    R = make_cyclic_ring(2)
    doc = AnnStructure.zero(R, regular_bimodule(R)).to_json()
    doc["xi"][1 * 4 + 1 * 2 + 1] = 1
    path = _write(tmp_path / "s.json", doc)
    assert main(["validate", "--cross-check", "--format", "json", path]) == 1
    res = _json(capsys)["results"][0]
    assert not res["relations"]["ok"]
    assert res["agree"] is True


def test_valid_structure_cross_check(z3_pair, capsys):
    assert main(["validate", "--cross-check", z3_pair[0], z3_pair[1]]) == 0


def test_bimodule_law_d_reported(tmp_path, capsys):
    R = make_cyclic_ring(2)
    doc = {"type": "bimodule", "ring": R.to_json(), "invariant_factors": [2],
           "left_action": [[0, 0], [0, 0]], "right_action": [[0, 0], [0, 1]]}
    path = _write(tmp_path / "m.json", doc)
    assert main(["validate", path]) == 1
    out = capsys.readouterr().out
    assert "[d]" in out and "1u=u" in out


def test_unknown_flag_is_format_error(capsys):
    assert main(["h3", "Z/2", "--bogus"]) == 2


def test_missing_file_names_location(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["--format", "json", "validate", missing]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["location"] == missing


def test_bad_json_is_format_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["validate", str(path)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_ring_of_order_one_rejected(tmp_path):
    path = _write(tmp_path / "r.json", {"type": "ring", "order": 1, "add": [[0]], "mul": [[0]]})
    assert main(["validate", path]) in (1, 2)
    assert run(["h3", path]).code == 2


def test_h3_cross_check(capsys):
    assert main(["--format", "json", "h3", "Z/2", "--cross-check"]) == 0
    doc = _json(capsys)
    assert doc["order_h3"] == 1
    assert all(v["agrees"] for v in doc["cross_check"].values())


def test_h3_trivial_module(capsys):
    assert main(["--format", "json", "h3", "Z/3", "trivial"]) == 0
    assert _json(capsys)["order_h3"] == 1


def test_h3_nontrivial(capsys):
    assert main(["--format", "json", "h3", "Z/4", "Z/2"]) == 0
    doc = _json(capsys)
    assert doc["invariant_factors"] == [2]
    assert doc["order_z3"] == doc["order_b3"] * doc["order_h3"]


def test_classify_budget_refusal(capsys):
    assert main(["classify", "Z/3", "--budget", "10", "--method", "diagram"]) == 3


def test_classify_over_z3_kernel_route(capsys):
    assert main(["--format", "json", "classify", "Z/3", "--budget", "1000"]) == 0
    doc = _json(capsys)
    assert doc["valid_structures"] == 27 and doc["method"] == "kernel"
    assert doc["regular_classes_closed"]


def test_size_refusal_exit_code():
    assert run(["h3", "Z/6", "Z/2"]).code == 3


def test_enumerate_z2(capsys):
    assert main(["--format", "json", "enumerate", "Z/2"]) == 0
    doc = _json(capsys)
    assert doc["count"] == 1


def test_enumerate_budget_refusal():
    assert run(["enumerate", "Z/3", "--budget", "5"]).code == 3


def test_witness_roundtrip(z3_pair, capsys):
    assert main(["--format", "json", "witness", *z3_pair, "--cross-check", "--budget", "100000"]) == 0
    doc = _json(capsys)
    assert doc["cohomologous"] and doc["verified"] and doc["bruteforce_cohomologous"]


def test_witness_rejects_invalid_input(tmp_path, z3_pair):
    doc = json.loads(open(z3_pair[0]).read())
    doc["eta"][1 * 3 + 2] = (doc["eta"][1 * 3 + 2] + 1) % 3
    bad = _write(tmp_path / "bad.json", doc)
    out = run(["witness", z3_pair[0], bad])
    assert out.code == 1 and out.doc["invalid"] == "second"


def test_witness_ambient_mismatch(tmp_path, z3_pair):
    R = make_cyclic_ring(2)
    other = _write(tmp_path / "z2.json", AnnStructure.zero(R, regular_bimodule(R)).to_json())
    assert run(["witness", z3_pair[0], other]).code == 2


def test_sigma_cross_check(z3_pair, capsys):
    assert main(["--format", "json", "sigma", z3_pair[0], "--cross-check"]) == 0
    doc = _json(capsys)
    assert doc["comparison"]["differences"] == 0
    assert doc["comparison"]["factorization_mismatches"] == []
    assert doc["cocycle"]["ok"]


def test_json_output_is_deterministic(tmp_path, z3_pair):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        assert main(["--out", str(path), "witness", *z3_pair]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "anncat", "--format", "json", "h3", "Z/2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order_h3"] == 1
