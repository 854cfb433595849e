"""Semi-Lagrangian building blocks: characteristic feet and transport.

Convention: ``L(q, dt_L, u)`` samples q at the upstream foot of the
trajectory dx/dt = u that ends at each cell centre after ``dt_L``.  For a
constant velocity the foot is ``x - u*dt_L``; a negative ``dt_L`` sends the
field backwards (downstream feet).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError, NumericalError
from .gridfields import Grid1D, ScalarField, make_spline, sample
from .tableaux import ButcherPair


class VelocitySampler:
    """Velocity u(x) frozen at a reference time.

    Built either from a closed form (``analytic``) or from cell values
    (``discrete``), in which case a cubic spline supplies values and
    derivatives.
    """

    def __init__(self, fn: Callable, dfn: Optional[Callable] = None,
                 d2fn: Optional[Callable] = None, kind: str = "analytic"):
        self._fn, self._dfn, self._d2fn = fn, dfn, d2fn
        self.kind = kind

    @classmethod
    def analytic(cls, fn, dfn=None, d2fn=None):
        return cls(fn, dfn, d2fn, "analytic")

    @classmethod
    def constant(cls, c):
        c = float(c)
        z = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        return cls(lambda x: np.full_like(np.asarray(x, dtype=float), c), z, z)

    @classmethod
    def linear(cls, k0):
        """u = k0 * x."""
        return cls(lambda x: k0 * np.asarray(x, dtype=float),
                   lambda x: np.full_like(np.asarray(x, dtype=float), k0),
                   lambda x: np.zeros_like(np.asarray(x, dtype=float)))

    @classmethod
    def discrete(cls, u: ScalarField):
        g = u.grid
        sp = make_spline(u.values, g)
        d1, d2 = sp.derivative(1), sp.derivative(2)
        wrapped = g.periodic

        def ev(s):
            def f(x):
                x = np.asarray(x, dtype=float)
                if wrapped:
                    xw = g.wrap(x)
                    xw = np.where(xw < g.x[0], xw + g.length, xw)
                else:
                    xw = np.clip(x, g.x[0], g.x[-1])
                return s(xw)
            return f

        obj = cls(ev(sp), ev(d1), ev(d2), "discrete")
        obj.field = u
        return obj

    def __call__(self, x):
        return self._fn(x)

    def dx(self, x, h=1e-5):
        if self._dfn is not None:
            return self._dfn(x)
        x = np.asarray(x, dtype=float)
        return (self._fn(x + h) - self._fn(x - h)) / (2 * h)

    def dxx(self, x, h=1e-4):
        if self._d2fn is not None:
            return self._d2fn(x)
        x = np.asarray(x, dtype=float)
        return (self._fn(x + h) - 2 * self._fn(x) + self._fn(x - h)) / (h * h)


@dataclass
class FeetSet:
    grid: Grid1D
    feet: np.ndarray
    dt_L: float


def _as_sampler(u):
    if isinstance(u, VelocitySampler):
        return u
    if isinstance(u, ScalarField):
        return VelocitySampler.discrete(u)
    if np.isscalar(u):
        return VelocitySampler.constant(u)
    if callable(u):
        return VelocitySampler.analytic(u)
    raise ConfigError(f"cannot interpret {type(u).__name__} as a velocity")


def _finish(grid, feet, dt_L):
    bad = ~np.isfinite(feet)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NumericalError(f"non-finite characteristic foot at cell {i}")
    return FeetSet(grid, grid.wrap(feet), dt_L)


def stage_positions(tb: ButcherPair, x0, dt_L: float, u) -> tuple:
    """Explicit RK stages for dx/dt = -u backwards over dt_L.

    Returns (stage positions, stage fluxes H^L = -u(x_E)) with shape (s, n).
    """
    u = _as_sampler(u)
    at = tb.a_tilde
    s = tb.s
    x0 = np.asarray(x0, dtype=float)
    xs = np.empty((s,) + x0.shape)
    hl = np.empty_like(xs)
    for i in range(s):
        xi = x0.copy()
        for j in range(i):
            if at[i, j] != 0.0:
                xi += dt_L * at[i, j] * hl[j]
        xs[i] = xi
        hl[i] = -u(xi)
    return xs, hl


def rk_feet(tb: ButcherPair, grid: Grid1D, dt_L: float, u, x0=None, wrap=True) -> FeetSet:
    """Feet of the trajectories ending at ``x0`` (cell centres by default).

    ``wrap=False`` keeps periodic feet unwrapped, which integrals need.
    """
    x0 = grid.x if x0 is None else np.asarray(x0, dtype=float)
    if dt_L == 0.0:
        return FeetSet(grid, x0.copy(), 0.0)
    _, hl = stage_positions(tb, x0, dt_L, u)
    feet = x0 + dt_L * (tb.b @ hl)
    if not wrap:
        _finish(grid, feet, dt_L)
        return FeetSet(grid, feet, dt_L)
    return _finish(grid, feet, dt_L)


def taylor_feet(order: int, grid: Grid1D, dt_L: float, u, x0=None) -> FeetSet:
    if order not in (1, 2, 3):
        raise ConfigError(f"Taylor feet support orders 1-3, got {order}")
    u = _as_sampler(u)
    x = grid.x if x0 is None else np.asarray(x0, dtype=float)
    uu = u(x)
    feet = x - dt_L * uu
    if order >= 2:
        ux = u.dx(x)
        feet = feet + 0.5 * dt_L ** 2 * uu * ux
        if order >= 3:
            feet = feet - dt_L ** 3 / 6.0 * uu * (ux * ux + uu * u.dxx(x))
    return _finish(grid, feet, dt_L)


def sl_apply(q: ScalarField, feet: FeetSet) -> ScalarField:
    return ScalarField(q.grid, sample(q.values, q.grid, feet.feet, clamp=True))


def transport(v, grid: Grid1D, dt_L: float, u, tb: ButcherPair) -> np.ndarray:
    """Array form of L(q, dt_L, u); identity when dt_L == 0."""
    if dt_L == 0.0:
        return np.array(v, dtype=float)
    feet = rk_feet(tb, grid, dt_L, u)
    return sample(v, grid, feet.feet, clamp=True)


def lagrangian(q: ScalarField, dt_L: float, u, tb: ButcherPair) -> ScalarField:
    return ScalarField(q.grid, transport(q.values, q.grid, dt_L, u, tb))


def closure_residual(tb: ButcherPair, grid: Grid1D, dt_L: float, u, q) -> float:
    v = q.values if isinstance(q, ScalarField) else np.asarray(q, dtype=float)
    there = transport(v, grid, dt_L, u, tb)
    back = transport(there, grid, -dt_L, u, tb)
    return float(np.max(np.abs(v - back)))
