"""SL-IMEX time stepping for q_t + u q_x = alpha q_xx.

Three couplings of the semi-Lagrangian advection with the implicit
diffusion stages are provided:

* ``alg0``: naive coupling, implicit fluxes added without transport.
  First order whatever the tableau.
* ``alg1``: the whole solution is shuttled along characteristics so each
  implicit flux is added in the frame where it was computed.
* ``alg2``: only the implicit fluxes are shuttled, to the frame of the
  stage (or final) state.

"Frame" below is a time fraction of the step: a field in frame tau has been
advected by tau*dt.  ``transport(v, dt_L)`` moves a field forward by dt_L.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from . import krylov
from .errors import ConfigError, NumericalError
from .gridfields import Grid1D, ScalarField, d2, sample
from .slcore import VelocitySampler, _as_sampler, stage_positions, transport
from .tableaux import ButcherPair

log = logging.getLogger(__name__)

FRAME_TOL = 1e-14
ALGORITHMS = ("alg0", "alg1", "alg2")


@dataclass
class AdvDiffProblem:
    grid: Grid1D
    tableau: ButcherPair
    alpha: float
    velocity: VelocitySampler
    q0: ScalarField
    t0: float = 0.0
    t_final: float = 1.0
    n_steps: int = 1
    algorithm: str = "alg1"
    exact: Optional[Callable] = None  # exact(x, t) when known
    source: Optional[Callable] = None  # reserved

    def __post_init__(self):
        if self.alpha < 0:
            raise ConfigError("diffusion coefficient must be non-negative")
        if not self.t_final > self.t0:
            raise ConfigError("t_final must exceed t0")
        if int(self.n_steps) < 1:
            raise ConfigError("n_steps must be at least 1")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        self.velocity = _as_sampler(self.velocity)

    @property
    def dt(self) -> float:
        return (self.t_final - self.t0) / self.n_steps


class Framed:
    """Field values tagged with the frame they live in.

    Shifts are kept pending until a flux is actually added, so consecutive
    moves collapse into one trajectory (and one interpolation).  With
    ``lazy=False`` every shift is applied immediately.
    """

    __slots__ = ("v", "frame", "pending", "lazy")

    def __init__(self, v, frame, pending=0.0, lazy=True):
        self.v = v
        self.frame = frame
        self.pending = pending
        self.lazy = lazy

    def shift(self, omega, ctx: "_Ctx") -> "Framed":
        out = Framed(self.v, self.frame + omega, self.pending + omega, self.lazy)
        return out if self.lazy else out.settle(ctx)

    def settle(self, ctx) -> "Framed":
        if self.pending == 0.0:
            return self
        return Framed(ctx.move(self.v, self.pending * ctx.dt), self.frame, 0.0, self.lazy)

    def add(self, other: "Framed", weight, ctx) -> "Framed":
        if abs(self.frame - other.frame) > FRAME_TOL:
            raise NumericalError(f"adding contributions at frames {self.frame:.16g} "
                                 f"and {other.frame:.16g}")
        if weight == 0.0 or other.v is None:
            return self
        me = self.settle(ctx)
        ov = other.settle(ctx).v
        return Framed(me.v + weight * ov, me.frame, 0.0, self.lazy)


@dataclass
class _Ctx:
    grid: Grid1D
    tb: ButcherPair
    u: VelocitySampler
    dt: float

    def move(self, v, dt_L):
        return transport(v, self.grid, dt_L, self.u, self.tb)


# --- implicit diffusion ---------------------------------------------------------
@dataclass
class DiffusionSolve:
    q_I: ScalarField
    flux: np.ndarray  # alpha * q_I,xx
    iterations: int = 0


def solve_diffusion(rhs, grid: Grid1D, coeff: float, tol=krylov.DEFAULT_TOL):
    """Solve (I - coeff d_xx) q = rhs; returns (q, iterations)."""
    rhs = np.asarray(rhs, dtype=float)
    if coeff < 0:
        raise ConfigError("diffusion stage coefficient must be non-negative")
    if coeff == 0.0:
        return rhs.copy(), 0
    op = krylov.LinearOperator(lambda v: v - coeff * d2(v, grid), grid.n_cells,
                               symmetric=grid.periodic)
    res = krylov.solve(op, rhs, tol=tol, symmetric=grid.periodic)
    return res.x, res.iterations


def diffusion_stage_solve(q_rhs: ScalarField, coeff: float, alpha: float = 1.0) -> DiffusionSolve:
    q, it = solve_diffusion(q_rhs.values, q_rhs.grid, coeff)
    return DiffusionSolve(ScalarField(q_rhs.grid, q), alpha * d2(q, q_rhs.grid), it)


def _stage_flux(rhs, ctx, alpha, aii):
    if alpha == 0.0:
        return None  # no diffusion: nothing to add
    q, _ = solve_diffusion(rhs, ctx.grid, aii * ctx.dt * alpha)
    return alpha * d2(q, ctx.grid)


# --- algorithms -------------------------------------------------------------------
def step_algorithm0(q, p: AdvDiffProblem, dt=None):
    dt = p.dt if dt is None else dt
    ctx = _Ctx(p.grid, p.tableau, p.velocity, dt)
    tb = ctx.tb
    a = tb.a
    v0 = np.asarray(q.values if isinstance(q, ScalarField) else q, dtype=float)
    hi = []
    # shifts are pending until a flux is added; frames are deliberately ignored
    for i in range(tb.s):
        qs = Framed(v0, 0.0)
        for j in range(i):
            qs = qs.shift(a[i, j], ctx)
            if hi[j] is not None and a[i, j]:
                qs = qs.settle(ctx)
                qs = Framed(qs.v + dt * a[i, j] * hi[j], qs.frame)
        rhs = qs.shift(a[i, i], ctx).settle(ctx).v
        hi.append(_stage_flux(rhs, ctx, p.alpha, a[i, i]))
    # final combine follows the stage pattern with the weights b
    out = Framed(v0, 0.0)
    for i in range(tb.s):
        out = out.shift(tb.b[i], ctx)
        if hi[i] is not None and tb.b[i]:
            out = out.settle(ctx)
            out = Framed(out.v + dt * tb.b[i] * hi[i], out.frame)
    return out.settle(ctx).v


def step_algorithm1(q, p: AdvDiffProblem, dt=None, lazy=True):
    dt = p.dt if dt is None else dt
    ctx = _Ctx(p.grid, p.tableau, p.velocity, dt)
    tb = ctx.tb
    a, b, s = tb.a, tb.b, tb.s
    v0 = np.asarray(q.values if isinstance(q, ScalarField) else q, dtype=float)
    c = a.sum(axis=1)
    fluxes: List[Framed] = []
    for i in range(s):
        qs = Framed(v0, 0.0, lazy=lazy)
        for j in range(i):
            omega = c[j] - a[i, :j].sum()
            qt = qs.shift(omega, ctx).add(fluxes[j], dt * a[i, j], ctx)
            qs = qt.shift(a[i, j] - omega, ctx)
        rhs = qs.shift(a[i, i], ctx).settle(ctx)
        fluxes.append(Framed(_stage_flux(rhs.v, ctx, p.alpha, a[i, i]), rhs.frame))
    qs = Framed(v0, 0.0, lazy=lazy)
    for i in range(s):
        omega = c[i] - b[:i].sum()
        qt = qs.shift(omega, ctx).add(fluxes[i], dt * b[i], ctx)
        qs = qt.shift(b[i] - omega, ctx)
    return qs.settle(ctx).v


def step_algorithm2(q, p: AdvDiffProblem, dt=None):
    dt = p.dt if dt is None else dt
    ctx = _Ctx(p.grid, p.tableau, p.velocity, dt)
    tb = ctx.tb
    at, a, b, s = tb.a_tilde, tb.a, tb.b, tb.s
    grid = p.grid
    v0 = np.asarray(q.values if isinstance(q, ScalarField) else q, dtype=float)
    x = grid.x
    c = a.sum(axis=1)
    u = p.velocity
    hl = []
    fluxes: List[Framed] = []
    for i in range(s):
        xe = x.copy()
        xs = x.copy()
        for j in range(i):
            xe = xe + at[i, j] * dt * hl[j]
            xs = xs + a[i, j] * dt * hl[j]
        hl.append(-u(xe))
        frame = a[i, :i].sum()
        qs = Framed(sample(v0, grid, xs, clamp=True), frame)
        for j in range(i):
            omega = c[j] - frame
            qs = qs.add(fluxes[j].shift(-omega, ctx), dt * a[i, j], ctx)
        if p.alpha == 0.0:
            fluxes.append(Framed(None, c[i]))
            continue
        # first order foot for the stage solve
        rhs = qs.v
        if a[i, i]:
            rhs = sample(qs.v, grid, x + a[i, i] * dt * hl[i], clamp=True)
        fluxes.append(Framed(_stage_flux(rhs, ctx, p.alpha, a[i, i]), c[i]))
    xe = x.copy()
    for i in range(s):
        xe = xe + b[i] * dt * hl[i]
    out = Framed(sample(v0, grid, xe, clamp=True), float(b.sum()))
    for i in range(s):
        omega = c[i] - b.sum()
        out = out.add(fluxes[i].shift(-omega, ctx), dt * b[i], ctx)
    return out.v


STEPPERS = {"alg0": step_algorithm0, "alg1": step_algorithm1, "alg2": step_algorithm2}


@dataclass
class AdvDiffResult:
    q: ScalarField
    t: float
    steps: int
    errors: dict = field(default_factory=dict)
    history: list = field(default_factory=list)  # (step, time, L2, Linf, mass)


def error_norms(v, exact, dx):
    e = np.asarray(v) - np.asarray(exact)
    return {"L1": float(dx * np.abs(e).sum()),
            "L2": float(math.sqrt(dx * np.sum(e * e))),
            "Linf": float(np.abs(e).max())}


def run_advdiff(p: AdvDiffProblem, record_history: bool = False) -> AdvDiffResult:
    grid = p.grid
    dt = p.dt
    if grid.dx ** 4 >= dt ** 3:
        log.warning("dx^4 >= dt^3: spatial error may pollute the temporal order")
    stepper = STEPPERS[p.algorithm]
    v = p.q0.values.copy()
    t = p.t0
    hist = []

    def rec(k, t, v):
        if not record_history:
            return
        if p.exact is not None:
            en = error_norms(v, p.exact(grid.x, t), grid.dx)
            hist.append((k, t, en["L2"], en["Linf"], float(v.sum() * grid.dx)))
        else:
            hist.append((k, t, float("nan"), float("nan"), float(v.sum() * grid.dx)))

    rec(0, t, v)
    for k in range(1, p.n_steps + 1):
        v = stepper(v, p, dt)
        if not np.all(np.isfinite(v)):
            raise NumericalError(f"non-finite values after step {k}")
        t = p.t0 + k * dt
        rec(k, t, v)
    res = AdvDiffResult(ScalarField(grid, v), t, p.n_steps, history=hist)
    if p.exact is not None:
        res.errors = error_norms(v, p.exact(grid.x, t), grid.dx)
    return res


def kappa_step(grid: Grid1D, alpha: float, kappa: float = 400.0) -> float:
    """Parabolic-scaled step dt = kappa dx^2 / alpha."""
    if alpha <= 0:
        raise ConfigError("kappa scaling needs alpha > 0")
    return kappa * grid.dx ** 2 / alpha


def make_problem(test: str, tableau: ButcherPair, n_steps: int, algorithm: str = "alg1",
                 n_cells: int = 1000, dt: Optional[float] = None) -> AdvDiffProblem:
    """Catalog setups; ``dt`` overrides the step so t_final = n_steps * dt."""
    from . import oracles as orc

    if test == "test1":
        c = orc.TEST1
        grid = Grid1D(*c["domain"], n_cells, "extrapolate")
        vel = VelocitySampler.constant(c["u"])
        alpha = c["alpha"]
        exact = orc.exact_test1
    elif test == "test2":
        c = orc.TEST2
        grid = Grid1D(*c["domain"], n_cells, "extrapolate")
        vel = VelocitySampler.linear(c["k0"])
        alpha = 0.0
        exact = orc.exact_test2
    elif test == "test3":
        c = orc.TEST3
        # inflow at both ends with a linear profile there
        grid = Grid1D(*c["domain"], n_cells, "linear")
        vel = VelocitySampler.linear(-1.0)
        alpha = c["alpha"]
        exact = orc.exact_test3
    else:
        raise ConfigError(f"unknown advection-diffusion test {test!r}")
    tf = c["t_final"] if dt is None else n_steps * dt
    q0 = ScalarField(grid, exact(grid.x, 0.0))
    return AdvDiffProblem(grid, tableau, alpha, vel, q0, 0.0, tf, n_steps, algorithm, exact)
