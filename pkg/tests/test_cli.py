import json
from fractions import Fraction

import pytest

from kakeya import bounds, certify, core, search
from kakeya.cli import main
from kakeya.core import PointSet, to_set_text
from kakeya.field import FieldSpec

from conftest import gf


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def full33(tmp_path):
    path = tmp_path / "full.txt"
    path.write_text(to_set_text(PointSet.full(FieldSpec(3), 2)))
    return path


def test_verify_kakeya_exit_codes(capsys, tmp_path, full33):
    assert run(capsys, "verify", full33, "--kakeya")[0] == 0
    single = tmp_path / "single.txt"
    single.write_text("q=3 n=2\n0,0\n")
    code, out, _ = run(capsys, "verify", single, "--kakeya")
    assert code == 1 and "(0, 1)" in out


def test_verify_delta_gamma_matches_library(capsys, tmp_path):
    k = PointSet.from_points(FieldSpec(5), 2, [(a, 0) for a in range(5)] + [(0, b) for b in range(3)])
    path = tmp_path / "k.txt"
    path.write_text(to_set_text(k))
    for delta, gamma in [("0.5", "0.5"), ("1/25", "3/5"), ("8/25", "1/2"), ("0.1", "1")]:
        code, out, _ = run(capsys, "verify", path, "--delta", delta, "--gamma", gamma, "--format", "json")
        lib = core.check_delta_gamma(k, Fraction(delta), Fraction(gamma))
        payload = json.loads(out)
        assert payload["ok"] == lib.ok and code == (0 if lib.ok else 1)
        assert payload["qualifying_vectors"] == lib.qualifying_vectors


def test_verify_profile_output(capsys, full33):
    code, out, _ = run(capsys, "verify", full33, "--profile", "--format", "json")
    rows = json.loads(out)["profile"]
    assert code == 0 and len(rows) == 4 and all(r["count"] == 3 for r in rows)


def test_malformed_set_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("q=3 n=2\n0,0\n1,7\n")
    code, _, err = run(capsys, "verify", bad)
    assert code == 2 and "line 3" in err


def test_bound_outputs(capsys):
    code, out, _ = run(capsys, "bound", "--q", 3, "--n", 2)
    assert code == 0 and out.split("\n")[0].split()[:2] == ["alon_tao", "3"]
    code, out, _ = run(capsys, "bound", "--q", 5, "--n", 2, "--delta", 1, "--gamma", 1, "--format", "json")
    rep = {b["formula"]: b for b in json.loads(out)["bounds"]}
    assert rep["thm2"] == bounds.thm2_bound(5, 2, 1, 1).to_dict() and rep["thm2"]["bound"] == 4
    code, out, _ = run(capsys, "bound", "--q", 2, "--n", 2, "--delta", 0.5, "--gamma", 0.5, "--format", "json")
    rep = {b["formula"]: b for b in json.loads(out)["bounds"]}
    assert rep["thm2"]["bound"] == 0
    code, out, _ = run(capsys, "bound", "--q", "2^2", "--n", 2, "--r", 2, "--format", "json")
    rep = {b["formula"]: b for b in json.loads(out)["bounds"]}
    assert rep["corollary_scheme"]["bound"] == 4


def test_zeros(capsys):
    code, out, _ = run(capsys, "zeros", "--poly", "1*x1^1", "--q", 3, "--n", 2)
    assert code == 0 and out.strip() == "3"
    code, out, _ = run(capsys, "zeros", "--poly", "1*x1^1*x2^1", "--q", "2^2", "--mod", "1,1,1",
                       "--n", 2, "--format", "json")
    assert json.loads(out)["zeros"] == 7


def test_zeros_resource_limit(capsys):
    code, _, err = run(capsys, "zeros", "--poly", "1", "--q", 7, "--n", 3, "--max-points", 100)
    assert code == 3 and "limit" in err


def test_construct_matches_library(capsys, tmp_path):
    spec = gf(4)
    out_path = tmp_path / "g.txt"
    code, _, _ = run(capsys, "construct", "--kind", "union_random_lines", "--q", "2^2", "--mod", "1,1,1",
                     "--n", 2, "--seed", 9, "-o", out_path)
    assert code == 0
    assert out_path.read_text() == to_set_text(core.construct("union_random_lines", spec, 2, 9))
    code, out, _ = run(capsys, "construct", "--kind", "full", "--q", 3, "--n", 2, "--format", "json")
    assert json.loads(out) == core.to_json_dict(PointSet.full(FieldSpec(3), 2))


def test_construct_extension_field_needs_modulus(capsys):
    code, _, err = run(capsys, "construct", "--q", "2^2", "--n", 2)
    assert code == 2 and "modulus" in err


def test_certify_and_verify_certificate(capsys, tmp_path):
    setfile = tmp_path / "g.txt"
    certfile = tmp_path / "c.json"
    run(capsys, "construct", "--kind", "greedy_lines", "--q", 3, "--n", 3, "-o", setfile)
    code, _, _ = run(capsys, "certify", setfile, "--cascade", "-o", certfile)
    assert code == 0
    data = json.loads(certfile.read_text())
    assert data["kind"] == "consistency"
    assert certfile.read_text() == certify.certify_cascade(core.read_set_file(setfile)).to_json()
    code, out, _ = run(capsys, "verify-certificate", certfile)
    assert code == 0 and "verified" in out
    data["points"] = data["points"][1:]
    certfile.write_text(json.dumps(data))
    assert run(capsys, "verify-certificate", certfile)[0] == 1


def test_certify_thm2(capsys, tmp_path):
    setfile = tmp_path / "k.txt"
    setfile.write_text("q=5 n=2\n0,0\n1,1\n")
    code, out, _ = run(capsys, "certify", setfile, "--thm2", "--delta", 1, "--gamma", 1)
    assert code == 0 and json.loads(out)["kind"] == "refutation"


def test_certify_cascade_on_non_kakeya(capsys, tmp_path):
    setfile = tmp_path / "k.txt"
    setfile.write_text("q=3 n=2\n0,0\n")
    code, _, err = run(capsys, "certify", setfile, "--cascade")
    assert code == 1 and "(0, 1)" in err


def test_search_json(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--exact", "--q", 2, "--n", 2, "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["size"] == 3 and payload["optimal"] == "exact"
    assert payload["witness"] == [list(x) for x in search.minimal_kakeya_exact(FieldSpec(2), 2).witness]
    witness = tmp_path / "w.txt"
    run(capsys, "search", "--greedy", "--q", 5, "--n", 2, "--restarts", 3, "-o", witness)
    assert core.is_kakeya(core.read_set_file(witness)).ok


def test_search_resource_limit(capsys, monkeypatch):
    monkeypatch.setenv("KAKEYA_EXACT_LIMIT", "8")
    code, _, err = run(capsys, "search", "--exact", "--q", 3, "--n", 2)
    assert code == 3 and "greedy" in err


def test_dump_config_round_trips(capsys, monkeypatch):
    monkeypatch.setenv("KAKEYA_NODE_BUDGET", "1234")
    argv = ["search", "--exact", "--q", "3", "--n", "2", "--seed", "4", "--dump-config"]
    code, out, _ = run(capsys, *argv)
    cfg = json.loads(out)
    assert code == 0
    assert cfg["limits"]["node_budget"] == 1234 and cfg["seed"] == 4 and cfg["options"]["mode"] == "exact"
    assert run(capsys, *argv)[1] == out


def test_profile_command(capsys, full33):
    code, out, _ = run(capsys, "profile", full33, "--format", "json")
    lib = core.direction_profile(core.read_set_file(full33))
    assert code == 0
    assert json.loads(out)["profile"] == [{"direction": list(d), "base": list(b), "count": c}
                                          for d, b, c in lib.as_rows()]
