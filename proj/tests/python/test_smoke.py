import json
import math
import os
import subprocess

import pytest

import h1pick

COARSE = h1pick.SphereDomain(n_r=16, n_theta=32, refine_rounds=6)


def test_golden_minimal_norm():
    value, (r, theta) = h1pick.minimal_norm([0, 0.5], [0, 1])
    assert value == pytest.approx(4.0, abs=1e-6)
    assert 0.0 <= r <= 1.0
    assert h1pick.minimal_norm_zero([0, 0.5], [0, 1]) == pytest.approx(4.0, abs=1e-12)


def test_feasibility_and_solve():
    nodes = [0.3 + 0.1j, -0.5 + 0.2j, 0.1 - 0.6j]
    targets = [0.01, 0.05 + 0.02j, -0.03]
    assert h1pick.family_feasibility(nodes, targets, 1.0, COARSE)["status"] == "feasible"
    assert h1pick.moebius_feasibility(nodes, targets, 1.0, COARSE)["status"] != "infeasible"
    sol = h1pick.solve(nodes, targets, 1.0)
    f = sol["interpolant"]
    for z, w in zip(nodes, targets):
        assert abs(f(z) - w) < 1e-7
    assert sol["derivative_at_zero"] < 1e-7
    assert sol["sup_norm"] <= 1.0 + 1e-7


def test_errors_carry_a_kind():
    with pytest.raises(h1pick.Error) as info:
        h1pick.solve([0, 0.5], [0, 0.5], 1.0)
    assert info.value.kind == "infeasible"
    with pytest.raises(h1pick.Error) as info:
        h1pick.minimal_norm([1.5], [0])
    assert info.value.kind == "invalid-input"


def test_metrics_and_two_point():
    d1, _ = h1pick.constrained_metric_d1(0.5, 0)
    assert d1 == pytest.approx(0.25, abs=1e-6)
    assert h1pick.pseudo_metric_dH(0.5, -0.5) == pytest.approx(0.8)
    rep = h1pick.two_point_representation([[0]], [[1]], 0.25)
    assert rep["norm"] == pytest.approx(4.0)
    assert rep["envelope"] == "M2"


def test_distance_and_matrix_scan():
    value, err = h1pick.dist_to_subalgebra({-1: 1.0}, 16, COARSE)
    assert abs(value - 1.0) <= err + 1e-9
    out = h1pick.counterexample_scan([0, 0.5, -0.5], 2, 3, 1, COARSE)
    assert len(out["gaps"]) == 3
    assert min(out["gaps"]) >= -1e-7
    assert out["csv"].startswith("trial,gap,A_true,A_family,seed\n")


def test_cli_entry_points(tmp_path):
    problem = tmp_path / "p.json"
    problem.write_text(json.dumps({"version": 1, "kind": "scalar", "nodes": [[0, 0], [0.5, 0]],
                                   "targets": [[0, 0], [1, 0]]}))
    code, out, err = h1pick.run_cli(["norm", str(problem)])
    assert code == 0, err
    assert math.isclose(json.loads(out)["minimal_norm"], 4.0, abs_tol=1e-6)
    cli = os.environ.get("H1PICK_CLI")
    if cli:
        proc = subprocess.run([cli, "check", str(problem), "--bound", "3"], capture_output=True, text=True)
        assert proc.returncode == 2
        assert json.loads(proc.stdout)["status"] == "infeasible"
