import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from slimex import swe
from slimex.errors import ConfigError
from slimex.gridfields import Grid1D
from slimex.relax import (RelaxOptions, ap_advance, equilibrium_defect, low_froude_step,
                          slimex_ap_step, slimexh_ap_step)
from slimex.tableaux import make_tableau

TABLEAUX = ("sp111", "sassp332", "ssp3433")


def _wavy(n=100):
    g = Grid1D(0.0, 1.0, n)
    h = 1 + 0.2 * np.sin(2 * np.pi * g.x)
    return swe.SWEState.from_velocity(g, h, 0.3 + 0.1 * np.cos(2 * np.pi * g.x))


@given(st.floats(1e-16, 1e16), st.floats(1e-6, 1.0))
def test_gamma_algebra(eps, dt):
    r = RelaxOptions(eps)
    assert r.gamma(dt) >= 1.0
    assert r.gamma(dt) * r.inv_gamma(dt) == pytest.approx(1.0, rel=1e-12)
    assert r.stiff_factor(dt) + r.inv_gamma(dt) == pytest.approx(1.0, rel=1e-12)


def test_stiff_factor_limits():
    assert abs(RelaxOptions(1e-14).stiff_factor(0.01) - 1.0) <= 1e-10
    assert RelaxOptions(1e12).gamma(0.01) == pytest.approx(1.0, abs=1e-13)
    off = RelaxOptions(math.inf)
    assert (off.gamma(0.1), off.inv_gamma(0.1), off.stiff_factor(0.1)) == (1.0, 1.0, 0.0)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_epsilon_must_be_positive(bad):
    with pytest.raises(ConfigError):
        RelaxOptions(bad)


@pytest.mark.parametrize("tb", TABLEAUX)
def test_vanishing_source_reduces_to_plain_steps(tb):
    s = _wavy()
    pair = make_tableau(tb)
    r = RelaxOptions(1e30)
    a, b = slimexh_ap_step(s, 2e-3, pair, r), swe.slimexh_step(s, 2e-3, pair)
    assert np.max(np.abs(a.h.values - b.h.values)) <= 1e-10
    assert np.max(np.abs(a.V.values - b.V.values)) <= 1e-10
    a, b = slimex_ap_step(s, 2e-3, pair, r), swe.slimex_step(s, 2e-3, pair)
    assert np.max(np.abs(a.h.values - b.h.values)) <= 1e-10
    assert np.max(np.abs(a.V.values - b.V.values)) <= 1e-10


@pytest.mark.parametrize("tb", TABLEAUX)
def test_stiff_limit_keeps_flat_equilibrium(tb):
    g = Grid1D(0.0, 1.0, 60)
    c = 1.7
    s = swe.SWEState.from_velocity(g, np.full(60, c), np.zeros(60))
    out = slimexh_ap_step(s, 1e-2, make_tableau(tb), RelaxOptions(1e-14))
    np.testing.assert_allclose(out.h.values, c, atol=1e-14)
    np.testing.assert_allclose(out.V.values, 0.5 * c * c, atol=1e-13)
    assert equilibrium_defect(out) < 1e-13


@pytest.mark.parametrize("tb", TABLEAUX)
@pytest.mark.parametrize("scheme", ["slimexh", "slimex"])
def test_stiff_limit_relaxes_velocity_and_keeps_mass(scheme, tb):
    s = _wavy()
    m0 = s.h.values.sum()
    out, _ = ap_advance(s, 5e-3, make_tableau(tb), RelaxOptions(1e-14), scheme=scheme)
    assert abs(out.h.values.sum() - m0) <= 1e-13 * m0
    assert equilibrium_defect(out) < 1e-10


def test_equilibrium_defect_value():
    g = Grid1D(0.0, 1.0, 3)
    s = swe.SWEState.from_velocity(g, [1.0, 2.0, 4.0], [0.5, 1.3, 2.0])
    assert equilibrium_defect(s) == pytest.approx(0.3, abs=1e-15)


def test_low_froude_flat_state_is_steady():
    g = Grid1D(0.0, 1.0, 40)
    s = swe.SWEState.from_velocity(g, np.full(40, 1.4), np.full(40, 0.7))
    r = RelaxOptions(1e-14, froude_scaling=True)
    for tb in TABLEAUX:
        out = low_froude_step(s, 0.01, r, make_tableau(tb))
        np.testing.assert_allclose(out.h.values, 1.4, atol=1e-14)
        np.testing.assert_allclose(out.V.values, 0.98, atol=1e-13)


@pytest.mark.parametrize("tb", TABLEAUX)
def test_weak_froude_relaxation_matches_weak_gravity(tb):
    # a huge eps in the scaled model is plain shallow water with g = 1/eps
    g = Grid1D(0.0, 1.0, 100)
    h = 1 + 0.2 * np.sin(2 * np.pi * g.x)
    s = swe.SWEState.from_velocity(g, h, 0.5 * h)
    eps = 1e8
    a = low_froude_step(s, 2e-3, RelaxOptions(eps, froude_scaling=True), make_tableau(tb))
    b = swe.slimexh_step(s, 2e-3, make_tableau(tb), swe.SWEOptions(g=1 / eps))
    assert np.max(np.abs(a.h.values - b.h.values)) <= 1e-12
    assert np.max(np.abs(a.V.values - b.V.values)) <= 1e-9


def test_routing_errors():
    s = _wavy(20)
    pair = make_tableau("sp111")
    with pytest.raises(ConfigError):
        slimexh_ap_step(s, 0.01, pair, RelaxOptions(1.0, froude_scaling=True))
    with pytest.raises(ConfigError):
        slimex_ap_step(s, 0.01, pair, RelaxOptions(1.0, froude_scaling=True))
    with pytest.raises(ConfigError):
        low_froude_step(s, 0.01, RelaxOptions(1.0))
