import json

import pytest

from ibforms.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_ibf_builtin_sl2_z(capsys):
    code, rep = run_cli(capsys, "ibf", "--algebra", "sl2@Z")
    assert code == 0
    assert rep["results"]["ibf"]["invariant_factors"] == ["2", "2", "2"]
    assert rep["results"]["ibf"]["free_rank"] == 1


def test_check_principle_gamma(capsys):
    code, rep = run_cli(capsys, "check-principle", "--algebra", "sl2@Q",
                        "--form", "gamma")
    assert code == 0 and rep["results"]["holds"]


def test_check_principle_fails_over_z(capsys):
    code, rep = run_cli(capsys, "check-principle", "--algebra", "sl2@Z",
                        "--form", "gamma")
    assert code == 1
    assert not rep["results"]["holds"]


def test_killing_reports_gamma_constant(capsys):
    code, rep = run_cli(capsys, "killing", "--algebra", "sl2@Q")
    assert code == 0
    prop = rep["results"]["gamma_proportionality"]
    assert prop["constant"] == "4" and not prop["matches_literature"]


def test_centroid_zorn(capsys):
    code, rep = run_cli(capsys, "centroid", "--algebra", "zorn@Q")
    assert code == 0
    assert rep["results"]["central"]


def test_forms_trace_mat3(capsys):
    code, rep = run_cli(capsys, "forms", "--algebra", "mat3@Z",
                        "--form", "trace")
    assert code == 0
    assert rep["results"]["flags"]["nonsingular"]


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code = main(["ibf", "--algebra", str(bad)])
    err = capsys.readouterr().err
    assert code == 2
    assert "line" in err and "column" in err


def test_missing_file_exits_2(capsys):
    code = main(["ibf", "--algebra", "/nonexistent/nope.json"])
    assert code == 2


def test_bad_builtin_exits_2(capsys):
    code = main(["ibf", "--algebra", "nope@Q"])
    assert code == 2


def test_reports_are_deterministic(tmp_path, capsys):
    code1, _ = run_cli(capsys, "ibf", "--algebra", "zorn@Q")
    out1 = capsys.readouterr()
    main(["ibf", "--algebra", "zorn@Q", "--out", str(tmp_path / "a.json")])
    first = capsys.readouterr().out
    main(["ibf", "--algebra", "zorn@Q", "--out", str(tmp_path / "b.json")])
    second = capsys.readouterr().out
    assert first == second
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_algebra_file_round_trip(tmp_path, capsys):
    from ibforms.algebras import zorn
    from ibforms.domains import ZZ
    spec = zorn(ZZ).to_spec()
    path = tmp_path / "zorn.json"
    path.write_text(json.dumps(spec))
    code, rep = run_cli(capsys, "ibf", "--algebra", str(path))
    assert code == 0
    assert rep["results"]["ibf"]["free_rank"] == 1


def test_twist_and_verify_descent(tmp_path, capsys):
    coc = {"d": 2, "U": [[[0, 0], [0, 0], [2, 0]],
                         [[0, 0], [-1, 0], [0, 0]],
                         [["1/2", 0], [0, 0], [0, 0]]]}
    path = tmp_path / "coc.json"
    path.write_text(json.dumps(coc))
    code, rep = run_cli(capsys, "twist", "--algebra", "sl2@Q",
                        "--cocycle", str(path))
    assert code == 0
    assert rep["results"]["twisted_algebra"]["rank"] == 3

    code, rep = run_cli(capsys, "verify-descent", "--algebra", "sl2@Q",
                        "--cocycle", str(path), "--form", "killing")
    assert code == 0
    assert rep["results"]["principle"]["holds"]
    assert rep["results"]["functor_descent"]["ok"]


def test_multiloop_and_graded(tmp_path, capsys):
    spec = {"g": "sl2@Q",
            "sigmas": [[[-1, 0, 0], [0, 1, 0], [0, 0, -1]]],
            "orders": [2], "roots": [-1]}
    path = tmp_path / "loop.json"
    path.write_text(json.dumps(spec))
    code, rep = run_cli(capsys, "multiloop", "--spec", str(path))
    assert code == 0
    assert rep["results"]["uniqueness"]["ok"]

    code, rep = run_cli(capsys, "graded", "--spec", str(path),
                        "--window=-2..2")
    assert code == 0
    assert rep["results"]["delta_formula_violation"] is None
    assert all(p["nonsingular"] for p in rep["results"]["pairings"].values())


def test_seed_echoed(capsys):
    code, rep = run_cli(capsys, "ibf", "--algebra", "sl2@Q", "--seed", "42")
    assert code == 0 and rep["seed"] == 42
