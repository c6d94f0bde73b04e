import math

import numpy as np
import pytest

import bcscg


def test_halton_prefix():
    expected = [1 / 2, 1 / 4, 3 / 4, 1 / 8, 5 / 8, 3 / 8, 7 / 8, 1 / 16]
    for index, value in enumerate(expected, start=1):
        assert bcscg.halton_value(index, 2) == pytest.approx(value, abs=1e-15)


def test_equiangular_basis_invariants():
    for n in (1, 2, 5, 8):
        basis = bcscg.equiangular_basis(n)
        assert basis.shape == (n + 1, n)
        norms = np.linalg.norm(basis, axis=1)
        assert np.allclose(norms, 1.0, atol=1e-12)
        assert np.linalg.norm(basis.sum(axis=0)) <= 1e-10
        gram = basis @ basis.T
        off_diagonal = gram[~np.eye(n + 1, dtype=bool)]
        assert np.allclose(off_diagonal, -1.0 / n, atol=1e-10)


def test_psi_at_origin():
    assert bcscg.psi(np.zeros(3)) == pytest.approx(-0.296, abs=1e-15)
    assert bcscg.chebyshev_u3(1.0) == pytest.approx(1.0)


def test_simplex_gradient_affine():
    center = np.zeros(2)
    neighbors = np.array([[1.0, 0.0], [0.0, 1.0]])
    grad = bcscg.simplex_gradient(center, neighbors, 0.0, [3.0, -2.0])
    assert np.allclose(grad, [3.0, -2.0], atol=1e-10)


def test_minimize_python_callable():
    target = np.array([1.0, -2.0, 3.0])

    def objective(x):
        return float(np.sum((x - target) ** 2))

    n = 3
    trace = bcscg.minimize(
        objective,
        lower=-50.0 * np.ones(n),
        upper=50.0 * np.ones(n),
        x0=30.0 * np.ones(n),
    )
    assert trace["termination"] in ("budget", "stationary")
    assert trace["evaluations_used"] <= 40 * (n + 1)
    history = trace["best_history"]
    values = [v for _, v in history]
    assert values == sorted(values, reverse=True) or all(
        a >= b for a, b in zip(values, values[1:])
    )
    assert trace["final_value"] <= 1e-3 * values[0]
    assert np.all(np.abs(trace["final_point"]) <= 50.0)


def test_catalog_solve_monotone():
    record = bcscg.solve("gen_broyden_tridiagonal", 8, variant="smooth", seed=3)
    history = record["best_history"]
    assert record["initial_value"] == history[0][1]
    counts = [c for c, _ in history]
    values = [v for _, v in history]
    assert counts == sorted(counts)
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert counts[-1] <= record["budget"]
    assert record["final_value"] < record["initial_value"]


def test_problem_catalog_and_convergence_helpers():
    names = bcscg.problem_names()
    assert "singular_broyden" in names and "chained_wood" in names
    ones = np.ones(6)
    assert bcscg.problem_value("chained_rosenbrock", ones, "smooth", 0.0) == 0.0
    assert bcscg.convergence_test(100.0, 0.5, 0.0, 1e-2)
    assert not bcscg.convergence_test(100.0, 99.5, 0.0, 1e-2)
    assert math.isinf(bcscg.performance_ratio(20.0, 10.0, False))
