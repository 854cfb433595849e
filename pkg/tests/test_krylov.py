import numpy as np
import pytest
from hypothesis import given, strategies as st

from slimex import oracles as orc
from slimex.errors import BreakdownError, SolverError
from slimex.gridfields import Grid1D, d2
from slimex.krylov import LinearOperator, bicgstab_solve, cg_solve, solve


def _resid(A, x, b):
    return np.linalg.norm(A(x) - b)


@pytest.mark.parametrize("solver", [cg_solve, bicgstab_solve])
def test_identity_in_one_iteration(solver):
    b = np.array([1.0, -2.0, 0.5])
    x, it, res = solver(np.eye(3), b)
    np.testing.assert_array_equal(x, b)
    assert it == 1 and res == 0.0


def test_scaled_identity():
    x, _, _ = cg_solve(2 * np.eye(2), [4.0, 6.0])
    np.testing.assert_allclose(x, [2.0, 3.0], rtol=1e-15)


def test_upper_triangular_nonsymmetric():
    res = bicgstab_solve(np.array([[2.0, 1.0], [0.0, 3.0]]), [3.0, 3.0])
    np.testing.assert_allclose(res.x, [1.0, 1.0], atol=1e-12)
    assert res.method == "bicgstab"


def test_zero_rhs_returns_zero():
    x, it, res = cg_solve(np.eye(4), np.zeros(4))
    assert it == 0 and not x.any() and res == 0.0


def test_helmholtz_residual_by_reapplication():
    g = Grid1D(0.0, 1.0, 64)
    A = LinearOperator(lambda v: v - 1e-3 * d2(v, g), 64)
    b = np.random.default_rng(3).standard_normal(64)
    out = cg_solve(A, b)
    true = _resid(A, out.x, b)
    assert true <= 1e-12 * np.linalg.norm(b)
    assert abs(out.residual - true) <= 1e-13


def test_dam_break_pressure_operator():
    g = Grid1D(-10.0, 10.0, 400, "extrapolate")
    h, _ = orc.RP2.initial(g.x)
    dt = 2.0 * g.dx / np.sqrt(orc.G)
    A = LinearOperator(lambda v: v - dt * dt * 0.5 * orc.G * d2(h * v, g), 400, symmetric=False)
    b = h + 0.01 * np.sin(g.x)
    out = bicgstab_solve(A, b)
    true = _resid(A, out.x, b)
    assert true <= 1e-12 * np.linalg.norm(b)
    assert abs(out.residual - true) <= 1e-13


@st.composite
def spd(draw):
    n = draw(st.integers(1, 256))
    seed = draw(st.integers(0, 2 ** 31))
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eig = rng.uniform(0.5, 20.0, n)
    return (q * eig) @ q.T, rng.standard_normal(n)


@given(spd())
def test_cg_on_spd_within_two_n(case):
    M, b = case
    n = b.size
    out = cg_solve(M, b, tol=1e-12, max_iter=2 * n)
    assert out.iterations <= 2 * n
    true = np.linalg.norm(M @ out.x - b)
    assert true <= 1e-12 * np.linalg.norm(b)
    assert abs(out.residual - true) <= 1e-13


@given(st.integers(2, 40), st.integers(0, 2 ** 31))
def test_bicgstab_on_diagonally_dominant(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((n, n)) + 2 * n * np.eye(n)
    b = rng.standard_normal(n)
    out = bicgstab_solve(M, b)
    assert np.linalg.norm(M @ out.x - b) <= 1e-12 * np.linalg.norm(b)


def test_indefinite_operator_breaks_cg_and_falls_back():
    M = np.diag([1.0, -2.0, 3.0])
    b = np.array([1.0, 1.0, 1.0])
    with pytest.raises(BreakdownError):
        cg_solve(M, b)
    out = solve(M, b, symmetric=True)
    np.testing.assert_allclose(out.x, [1.0, -0.5, 1 / 3], rtol=1e-12)


def test_iteration_cap_raises_with_residual():
    M = np.diag(np.linspace(1, 1e4, 50))
    with pytest.raises(SolverError) as err:
        cg_solve(M, np.ones(50), max_iter=3)
    assert err.value.residual > 0
