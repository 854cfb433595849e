import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from slimex import advdiff as ad
from slimex.errors import ConfigError, NumericalError
from slimex.gridfields import Grid1D, ScalarField
from slimex.slcore import VelocitySampler, transport
from slimex.tableaux import SCHEME_IDS, make_tableau


def _problem(alpha, u, algorithm, name="sassp332", n=64, bc="periodic", steps=3, tf=0.3):
    g = Grid1D(0.0, 1.0, n, bc)
    q0 = ScalarField(g, np.exp(-40 * (g.x - 0.5) ** 2) + 0.2 * np.sin(2 * np.pi * g.x))
    return ad.AdvDiffProblem(g, make_tableau(name), alpha, u, q0, 0.0, tf, steps, algorithm)


def _dense_d2(n, dx):
    D = np.zeros((n, n))
    for k, c in zip((-2, -1, 0, 1, 2), (-1, 16, -30, 16, -1)):
        for i in range(n):
            D[i, (i + k) % n] += c
    return D / (12 * dx * dx)


def _dirk_diffusion(q, p):
    """Implicit RK for q_t = alpha q_xx with a dense direct solve."""
    tb, g, dt = p.tableau, p.grid, p.dt
    D = p.alpha * _dense_d2(g.n_cells, g.dx)
    eye = np.eye(g.n_cells)
    K = []
    for i in range(tb.s):
        rhs = q + dt * sum(tb.a[i, j] * K[j] for j in range(i))
        qi = np.linalg.solve(eye - dt * tb.a[i, i] * D, rhs)
        K.append(D @ qi)
    return q + dt * sum(tb.b[i] * K[i] for i in range(tb.s))


# --- implicit diffusion stage ------------------------------------------------------
def test_stage_solve_examples():
    g = Grid1D(0.0, 1.0, 32)
    rhs = ScalarField(g, np.cos(2 * np.pi * g.x))
    np.testing.assert_array_equal(ad.diffusion_stage_solve(rhs, 0.0).q_I.values, rhs.values)
    const = ad.diffusion_stage_solve(ScalarField(g, np.full(32, 1.5)), 0.7)
    np.testing.assert_allclose(const.q_I.values, 1.5, rtol=1e-13)
    np.testing.assert_allclose(const.flux, 0.0, atol=1e-10)


@given(st.integers(1, 7), st.floats(1e-5, 1e-1))
def test_stage_solve_matches_fourier_symbol(k, coeff):
    g = Grid1D(0.0, 1.0, 64)
    kk = 2 * np.pi * k
    th = kk * g.dx
    symbol = (30 - 32 * np.cos(th) + 2 * np.cos(2 * th)) / (12 * g.dx ** 2)
    out = ad.diffusion_stage_solve(ScalarField(g, np.sin(kk * g.x)), coeff).q_I.values
    np.testing.assert_allclose(out, np.sin(kk * g.x) / (1 + coeff * symbol), atol=1e-11)


def test_negative_stage_coefficient_is_rejected():
    with pytest.raises(ConfigError):
        ad.solve_diffusion(np.zeros(8), Grid1D(0.0, 1.0, 8), -1.0)


# --- reductions ---------------------------------------------------------------------
@pytest.mark.parametrize("alg", ad.ALGORITHMS)
def test_nothing_happens_without_flow_or_diffusion(alg):
    p = _problem(0.0, VelocitySampler.constant(0.0), alg)
    v = p.q0.values
    np.testing.assert_allclose(ad.STEPPERS[alg](v, p), v, atol=1e-15)


@pytest.mark.parametrize("alg", ad.ALGORITHMS)
@pytest.mark.parametrize("name", SCHEME_IDS)
def test_pure_advection_is_one_sl_step(alg, name):
    p = _problem(0.0, VelocitySampler.constant(0.8), alg, name)
    v = p.q0.values
    ref = transport(v, p.grid, p.dt, p.velocity, p.tableau)
    np.testing.assert_allclose(ad.STEPPERS[alg](v, p), ref, atol=1e-13)


@pytest.mark.parametrize("alg", ["alg1", "alg2"])
@pytest.mark.parametrize("name", SCHEME_IDS)
def test_still_flow_reduces_to_implicit_rk(alg, name):
    p = _problem(0.01, VelocitySampler.constant(0.0), alg, name)
    v = p.q0.values
    np.testing.assert_allclose(ad.STEPPERS[alg](v, p), _dirk_diffusion(v, p), atol=1e-10)


@pytest.mark.parametrize("name", ["sp111", "sassp332"])
def test_algorithms_agree_when_shifts_land_on_nodes(name):
    # u dt = 12 dx makes every partial shift a whole number of cells
    g = Grid1D(0.0, 1.0, 96)
    q0 = ScalarField(g, np.exp(-40 * (g.x - 0.5) ** 2))
    u = VelocitySampler.constant(12 * g.dx / 0.05)
    out = [ad.run_advdiff(ad.AdvDiffProblem(g, make_tableau(name), 0.01, u, q0, 0.0, 0.15, 3,
                                            alg)).q.values for alg in ("alg1", "alg2")]
    assert np.max(np.abs(out[0] - out[1])) <= 1e-10


def test_algorithms_differ_only_by_interpolation_error():
    tb = make_tableau("sassp332")
    gaps = []
    for n in (1000, 2000, 4000):
        r1 = ad.run_advdiff(ad.make_problem("test1", tb, 4, "alg1", n))
        r2 = ad.run_advdiff(ad.make_problem("test1", tb, 4, "alg2", n))
        gaps.append(np.max(np.abs(r1.q.values - r2.q.values)))
    assert gaps[-1] < 1e-7
    assert all(math.log2(a / b) > 3.5 for a, b in zip(gaps, gaps[1:]))


def test_mass_defect_of_uniform_transport_converges():
    defects = []
    for n in (32, 64, 128):
        p = _problem(0.0, VelocitySampler.constant(0.37), "alg1", n=n, steps=5, tf=1.0)
        r = ad.run_advdiff(p)
        defects.append(abs((r.q.values.sum() - p.q0.values.sum()) * p.grid.dx))
    assert defects[-1] <= 1e-10 or defects[-1] < defects[0]


# --- problem set-up and runs --------------------------------------------------------
def test_problem_validation():
    g = Grid1D(0.0, 1.0, 8)
    q0 = ScalarField(g, np.zeros(8))
    tb = make_tableau("sp111")
    with pytest.raises(ConfigError):
        ad.AdvDiffProblem(g, tb, -1.0, 0.0, q0)
    with pytest.raises(ConfigError):
        ad.AdvDiffProblem(g, tb, 0.0, 0.0, q0, n_steps=0)
    with pytest.raises(ConfigError):
        ad.AdvDiffProblem(g, tb, 0.0, 0.0, q0, algorithm="alg3")
    with pytest.raises(ConfigError):
        ad.make_problem("test9", tb, 1)


def test_frame_bookkeeping_rejects_mismatched_additions():
    ctx = ad._Ctx(Grid1D(0.0, 1.0, 8), make_tableau("sp111"), VelocitySampler.constant(0.0), 0.1)
    a = ad.Framed(np.zeros(8), 0.5)
    b = ad.Framed(np.ones(8), 0.25)
    with pytest.raises(NumericalError):
        a.add(b, 1.0, ctx)


def test_history_and_errors_are_recorded():
    r = ad.run_advdiff(ad.make_problem("test3", make_tableau("sp111"), 2, "alg1", n_cells=200),
                       record_history=True)
    assert [h[0] for h in r.history] == [0, 1, 2]
    assert set(r.errors) == {"L1", "L2", "Linf"}
    assert r.history[-1][2] == pytest.approx(r.errors["L2"])


def _orders(test, name, alg, n_cells=1000):
    e = [ad.run_advdiff(ad.make_problem(test, make_tableau(name), n, alg, n_cells)).errors["L2"]
         for n in (1, 2, 4, 8, 16)]
    return [math.log2(e[k] / e[k + 1]) for k in range(4)], e


def test_expanding_flow_second_order():
    orders, _ = _orders("test3", "sassp332", "alg1")
    assert all(abs(o - 2.0) < 0.1 for o in orders)


def test_compressive_flow_second_order():
    orders, e = _orders("test2", "sassp332", "alg1")
    assert orders[-1] == pytest.approx(2.03, abs=0.15)


def test_parabolic_step_scaling():
    g = Grid1D(-10.0, 10.0, 1000, "linear")
    assert ad.kappa_step(g, 0.1) == pytest.approx(400 * g.dx ** 2 / 0.1)
    with pytest.raises(ConfigError):
        ad.kappa_step(g, 0.0)
