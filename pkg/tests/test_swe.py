import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slimex import swe
from slimex.harness import CATALOG, RunConfig, run
from slimex.errors import ConfigError, DomainError
from slimex.gridfields import Grid1D, ScalarField
from slimex.slcore import FeetSet
from slimex.tableaux import make_tableau

TABLEAUX = ("sp111", "sassp332", "ssp3433")
SCHEMES = ("slimexh", "slimex")


def _wave_dt(state, cfl):
    h, u = state.h.values, state.u
    return cfl * state.grid.dx / np.max(np.abs(u) + np.sqrt(swe.G * h))


@pytest.mark.parametrize("boundary", ["periodic", "extrapolate"])
@pytest.mark.parametrize("tb", TABLEAUX)
@pytest.mark.parametrize("scheme", SCHEMES)
def test_lake_at_rest_stays_at_rest(scheme, tb, boundary):
    g = Grid1D(-10.0, 10.0, 80, boundary)
    st0 = swe.SWEState.from_velocity(g, np.full(80, 1.0), np.zeros(80))
    s = st0
    for _ in range(3):
        s, _ = swe.advance(s, _wave_dt(s, 2.0), make_tableau(tb), scheme=scheme)
    assert np.max(np.abs(s.h.values - 1.0)) <= 1e-12
    assert np.max(np.abs(s.V.values)) <= 1e-12


@settings(max_examples=12)
@given(amp=st.floats(0.0, 0.3), vel=st.floats(-0.5, 0.5), phase=st.floats(0, 6.3),
       tb=st.sampled_from(TABLEAUX), scheme=st.sampled_from(SCHEMES))
def test_periodic_mass_is_conserved(amp, vel, phase, tb, scheme):
    g = Grid1D(0.0, 1.0, 48)
    h = 1 + amp * np.sin(2 * np.pi * g.x + phase)
    s = swe.SWEState.from_velocity(g, h, vel + 0.1 * np.cos(2 * np.pi * g.x))
    m0 = s.h.values.sum()
    for _ in range(2):
        s, _ = swe.advance(s, _wave_dt(s, 1.5), make_tableau(tb), scheme=scheme)
    assert abs(s.h.values.sum() - m0) <= 1e-12 * m0


def test_outflow_is_booked_on_open_boundaries():
    g = Grid1D(0.0, 1.0, 60, "extrapolate")
    s = swe.SWEState.from_velocity(g, np.full(60, 1.0), np.full(60, 0.5))
    m0 = s.h.values.sum() * g.dx
    new, info = swe.advance(s, 0.002, make_tableau("sassp332"))
    m1 = new.h.values.sum() * g.dx
    assert m0 - m1 == pytest.approx(info.mass_outflow, abs=1e-13)


@settings(max_examples=25)
@given(st.lists(st.floats(-3, 3), min_size=12, max_size=40), st.floats(0, 1), st.floats(0, 0.5))
def test_conservative_F_telescopes(vals, hscale, speed):
    n = len(vals)
    g = Grid1D(0.0, 1.0, n)
    q = ScalarField(g, np.array(vals))
    H = ScalarField(g, hscale * np.roll(vals, 1))
    F = swe.conservative_F(q, H, speed, span=0.01)
    assert F.values.sum() * g.dx == pytest.approx(q.values.sum() * g.dx, abs=1e-13)


def test_conservative_F_keeps_constants():
    g = Grid1D(0.0, 1.0, 32)
    q = ScalarField(g, np.full(32, 2.5))
    H = ScalarField(g, np.full(32, 0.7))
    np.testing.assert_allclose(swe.conservative_F(q, H, 1.0, 0.02).values, 2.5, rtol=1e-15)


def test_conservative_H_examples():
    g = Grid1D(0.0, 1.0, 40)
    c, u0, dt = 1.7, 0.3, 0.01
    q = ScalarField(g, np.full(40, c))
    H = swe.conservative_H(q, FeetSet(g, g.x - u0 * dt, dt))
    np.testing.assert_allclose(H.values, c * u0 * dt, rtol=1e-13)
    still = FeetSet(g, g.x.copy(), dt)
    assert np.all(swe.conservative_H(q, still).values == 0.0)
    P = ScalarField(g, np.linspace(0, 1, 40))
    np.testing.assert_allclose(swe.conservative_H(q, still, P).values, -P.values)


def test_ck_predictor_lake_and_linear_wave():
    g = Grid1D(0.0, 2 * np.pi, 64)
    lake = swe.ck_predictor(swe.SWEState.from_velocity(g, np.full(64, 1.3), np.zeros(64)))
    assert np.max(np.abs(lake.ht)) < 1e-14 and np.max(np.abs(lake.htt)) < 1e-12

    # the nonlinear slope weights need a few refinements to settle on smooth extrema
    errs = []
    for n in (512, 1024, 2048):
        g = Grid1D(0.0, 2 * np.pi, n)
        s = swe.SWEState.from_arrays(g, np.ones(n), np.sin(g.x))
        errs.append(np.max(np.abs(swe.ck_predictor(s).ht + np.cos(g.x))))
    assert errs[1] / errs[2] > 2 ** 2.8


def test_eval_h_squared():
    g = Grid1D(0.0, 1.0, 50)
    h = 1 + 0.1 * np.sin(2 * np.pi * g.x)
    s = swe.SWEState.from_velocity(g, h, 0.2 * np.ones(50))
    ser = swe.ck_predictor(s)
    np.testing.assert_allclose(swe.eval_h_squared(ser, 0.0, g.x), h * h, rtol=1e-15)
    lake = swe.ck_predictor(swe.SWEState.from_velocity(g, np.full(50, 2.0), np.zeros(50)))
    np.testing.assert_allclose(swe.eval_h_squared(lake, 0.0, g.x + 0.013), 4.0, rtol=1e-13)


@pytest.mark.parametrize("order", [2, 4])
def test_pressure_integral_vanishes_for_lake_and_still_paths(order):
    g = Grid1D(0.0, 1.0, 50)
    lake = swe.ck_predictor(swe.SWEState.from_velocity(g, np.full(50, 1.1), np.zeros(50)))
    path = swe.TrajectoryPath(0.01, g.x - 0.003, g.x - 0.0015)
    assert np.max(np.abs(swe.pressure_integral(lake, path, order).values)) < 1e-13
    h = 1 + 0.2 * np.sin(2 * np.pi * g.x)
    ser = swe.ck_predictor(swe.SWEState.from_velocity(g, h, np.zeros(50)))
    still = swe.TrajectoryPath(0.01, g.x.copy(), g.x.copy())
    assert np.max(np.abs(swe.pressure_integral(ser, still, order).values)) == 0.0


def test_pressure_integral_rejects_bad_order():
    g = Grid1D(0.0, 1.0, 20)
    ser = swe.ck_predictor(swe.SWEState.from_velocity(g, np.ones(20), np.zeros(20)))
    with pytest.raises(ConfigError):
        swe.pressure_integral(ser, swe.TrajectoryPath(0.1, g.x, g.x), 3)


def test_bad_pressure_rule_and_scheme():
    with pytest.raises(ConfigError):
        swe.SWEOptions(pressure_integral="simpson")
    g = Grid1D(0.0, 1.0, 20)
    s = swe.SWEState.from_velocity(g, np.ones(20), np.zeros(20))
    with pytest.raises(ConfigError):
        swe.advance(s, 0.01, make_tableau("sp111"), scheme="explicit")


def test_velocity_refuses_dry_cells():
    with pytest.raises(DomainError, match="cell 2"):
        swe.velocity([1.0, 1.0, 0.0], [0.0, 0.0, 0.0])


def test_csv_header_and_precision():
    g = Grid1D(0.0, 1.0, 4)
    s = swe.SWEState.from_velocity(g, [1.0, 2.0, 3.0, 1.0 / 3.0], [0.0, 0.5, -1.0, 3.0])
    lines = s.to_csv().splitlines()
    assert lines[0] == "x,h,u,V"
    assert len(lines) == 5
    assert float(lines[4].split(",")[1]) == 1.0 / 3.0


_WAVE_CASES = [(n, sch) for n, c in CATALOG.items() if c.family != "scalar" for sch in c.schemes]


@pytest.mark.parametrize("cfl", [2.0, 3.0])
@pytest.mark.parametrize("name,scheme", _WAVE_CASES)
def test_catalog_runs_stay_finite_and_positive_at_large_courant(name, scheme, cfl):
    rep = run(RunConfig(name, scheme=scheme, n_cells=100, cfl=cfl), write=False)
    h = rep.fields["h"]
    assert np.all(np.isfinite(h)) and np.all(np.isfinite(rep.fields["V"]))
    assert np.min(h) > 0
