"""Conservative semi-Lagrangian IMEX schemes for the 1-D shallow water equations.

Two schemes share one stage engine:

* ``slimexh``: momentum convection by conservative SL fluxes, depth from an
  implicit pressure system.
* ``slimex``: depth and momentum both transported by conservative SL fluxes;
  the pressure then only needs the already known new depth.

Higher order uses IMEX Runge-Kutta stages.  The explicit convective part of
stage ``i`` is the space-time flux integral over ``[t^n, t^n + c_i dt]``
computed from the state at ``t^n`` along the matching partial trajectory, so
the explicit contribution is already an Eulerian quantity and needs no
shifting.  Pressure (and relaxation, see :mod:`slimex.relax`) is
semi-implicit: the depth of the explicit stage multiplies the unknown depth.
"""
from __future__ import annotations

import io
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import krylov
from .cweno import Reconstruction, interface_jumps, reconstruct
from .errors import ConfigError, DomainError, NumericalError
from .gridfields import Grid1D, ScalarField, d1, d2, make_spline, pad, sample
from .slcore import FeetSet, VelocitySampler, rk_feet
from .tableaux import ButcherPair

log = logging.getLogger(__name__)

G = 9.81
H_FLOOR = 1e-12
PRESSURE_RULES = ("auto", "midpoint", "kepler", "off")
JUMP_CAP = 0.5
SUB_COURANT = 1.0


class SWEState:
    """Depth ``h`` and momentum ``V = h u`` on a common grid."""

    __slots__ = ("h", "V")

    def __init__(self, h: ScalarField, V: ScalarField):
        if h.grid != V.grid:
            raise ConfigError("h and V live on different grids")
        self.h, self.V = h, V

    @classmethod
    def from_arrays(cls, grid: Grid1D, h, V):
        return cls(ScalarField(grid, h), ScalarField(grid, V))

    @classmethod
    def from_velocity(cls, grid: Grid1D, h, u):
        h = np.asarray(h, dtype=float)
        return cls.from_arrays(grid, h, h * np.asarray(u, dtype=float))

    @property
    def grid(self) -> Grid1D:
        return self.h.grid

    @property
    def u(self) -> np.ndarray:
        return velocity(self.h.values, self.V.values)

    def copy(self):
        return SWEState(self.h.copy(), self.V.copy())

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,h,u,V\n")
        for row in zip(self.grid.x, self.h.values, self.u, self.V.values):
            buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
        return buf.getvalue()


def velocity(h, V) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    low = h < H_FLOOR
    if np.any(low):
        i = int(np.argmax(low))
        raise DomainError(f"depth {h[i]:g} below {H_FLOOR:g} at cell {i}")
    return np.asarray(V, dtype=float) / h


@dataclass
class SWEOptions:
    """Switches shared by both schemes.

    ``steady_source`` keeps the depth fixed, which is the exact discrete
    effect of a continuity source equal to the momentum divergence.
    """

    pressure_integral: str = "auto"
    viscosity: bool = False
    steady_source: bool = False
    g: float = G
    tol: float = krylov.DEFAULT_TOL

    def __post_init__(self):
        if self.pressure_integral not in PRESSURE_RULES:
            raise ConfigError(f"pressure_integral must be one of {PRESSURE_RULES}")

    def rule(self, tb: ButcherPair) -> Optional[int]:
        """Quadrature order used for the pressure integral, None when off."""
        p = self.pressure_integral
        if p == "off":
            return None
        if p == "auto":
            return 2 if tb.order_p <= 2 else 4
        return 2 if p == "midpoint" else 4


# --- Cauchy-Kovalevskaya predictor --------------------------------------------
@dataclass
class CKSeries:
    """Per-cell Taylor coefficients of the depth about ``t^n``."""

    grid: Grid1D
    h0: np.ndarray
    ht: np.ndarray
    htt: np.ndarray
    dt: Optional[float] = None

    def at(self, tau: float) -> np.ndarray:
        return self.h0 + tau * self.ht + 0.5 * tau * tau * self.htt


def ck_predictor(state: SWEState, g: float = G) -> CKSeries:
    h, V = state.h.values, state.V.values
    grid = state.grid
    u = velocity(h, V)
    ht = -reconstruct(V, grid).derivative()
    flux = u * V + 0.5 * g * h * h
    htt = reconstruct(flux, grid).second_derivative()
    return CKSeries(grid, h.copy(), ht, htt)


def frozen_series(state: SWEState) -> CKSeries:
    """Series of a depth held fixed in time (steady-source runs)."""
    z = np.zeros(state.grid.n_cells)
    return CKSeries(state.grid, state.h.values.copy(), z, z.copy())


def eval_h_squared(series: CKSeries, tau: float, x_query) -> np.ndarray:
    if tau < 0 or (series.dt is not None and tau > series.dt * (1 + 1e-12)):
        warnings.warn(f"tau={tau:g} outside the step; clamped", RuntimeWarning)
        tau = min(max(tau, 0.0), series.dt if series.dt is not None else tau)
    hv = series.at(tau)
    x_query = np.asarray(x_query, dtype=float)
    grid = series.grid
    if x_query.shape == grid.x.shape and np.array_equal(x_query, grid.x):
        return hv * hv
    hq = sample(hv, grid, x_query, clamp=True)
    return hq * hq


@dataclass
class TrajectoryPath:
    """Positions at ``t^n`` and at mid-span of the trajectories that reach the
    cell centres after ``span``."""

    span: float
    foot: np.ndarray
    mid: Optional[np.ndarray] = None


def trajectory_path(tb, grid, span, u, need_mid=True) -> TrajectoryPath:
    """Paths of the frozen field ``u`` integrated with the explicit tableau."""
    foot = rk_feet(tb, grid, span, u, wrap=False).feet
    mid = rk_feet(tb, grid, 0.5 * span, u, wrap=False).feet if need_mid else None
    return TrajectoryPath(span, foot, mid)


@dataclass
class ParticleMotion:
    """Velocity, acceleration and jerk of the fluid particles at ``t^n``.

    A particle leaving ``xi`` at ``t^n`` is at
    ``xi + s*u + s^2/2*acc + s^3/6*jerk`` after time ``s``, all coefficients
    sampled at ``xi``.  Feet are found by inverting this map, so the state
    enters through upstream values only.
    """

    grid: Grid1D
    u: np.ndarray
    acc: np.ndarray
    jerk: np.ndarray

    def mean_velocity(self, s: float) -> np.ndarray:
        return self.u + 0.5 * s * self.acc + s * s / 6.0 * self.jerk

    def _sampler(self, s):
        v = self.mean_velocity(s)
        sp = make_spline(v, self.grid)
        return v, sp

    def position(self, xi, s: float) -> np.ndarray:
        """Where particles starting at ``xi`` are after time ``s``."""
        v, sp = self._sampler(s)
        return xi + s * sample(v, self.grid, xi, clamp=True, spline=sp)

    def feet(self, span: float, bisections: int = 60) -> np.ndarray:
        """Unwrapped departure points of the particles reaching the centres."""
        g = self.grid
        x = g.x
        if span == 0.0:
            return x.copy()
        v, sp = self._sampler(span)
        dsp = sp.derivative()

        def residual(xi):
            return xi + span * sample(v, g, xi, clamp=True, spline=sp) - x

        pad_ = abs(span) * (np.max(np.abs(v)) + 1.0) + g.dx
        lo, hi = x - pad_, x + pad_
        for _ in range(bisections):
            mid = 0.5 * (lo + hi)
            pos = residual(mid) > 0
            hi = np.where(pos, mid, hi)
            lo = np.where(pos, lo, mid)
        xi = 0.5 * (lo + hi)
        # Newton polish where the map is clearly monotone
        for _ in range(2):
            slope = 1.0 + span * sample(v, g, xi, clamp=True, spline=dsp)
            ok = slope > 0.25
            step = np.where(ok, residual(xi) / np.where(ok, slope, 1.0), 0.0)
            xi = np.where(np.abs(step) < g.dx, xi - step, xi)
        if not np.all(np.isfinite(xi)):
            raise NumericalError("non-finite trajectory foot")
        return xi

    def path(self, span: float, need_mid: bool = True) -> TrajectoryPath:
        foot = self.feet(span)
        mid = self.position(foot, 0.5 * span) if need_mid else None
        return TrajectoryPath(span, foot, mid)


def particle_motion(state: "SWEState", g: float = G, steady_source: bool = False,
                    dynamics: str = "swe") -> ParticleMotion:
    """Material derivatives of the velocity along particle paths.

    ``dynamics`` picks the law the velocity follows:

    * ``"swe"``: acceleration ``-g h_x`` and jerk ``g V_xx - g u h_xx``.  With
      the steady source the depth is frozen, so the acceleration follows from
      the momentum equation alone and the jerk keeps only its advective part.
    * ``"equilibrium"``: u = h/2 with h obeying Burgers, so that
      ``Du/Dt = -u u_x`` and the jerk is ``3 u u_x^2 + u^2 u_xx``.
    * ``"straight"``: constant velocity along each path.
    """
    grid = state.grid
    h, V = state.h.values, state.V.values
    u = velocity(h, V)
    z = np.zeros_like(u)
    if dynamics == "straight":
        return ParticleMotion(grid, u, z, z.copy())
    if dynamics == "equilibrium":
        ur = reconstruct(u, grid)
        ux, uxx = ur.derivative(), ur.second_derivative()
        return ParticleMotion(grid, u, -u * ux, 3 * u * ux * ux + u * u * uxx)
    if dynamics != "swe":
        raise ConfigError(f"unknown particle dynamics {dynamics!r}")
    hr = reconstruct(h, grid)
    hx, hxx = hr.derivative(), hr.second_derivative()
    if steady_source:
        ux = reconstruct(u, grid).derivative()
        acc = -u * ux - u * u * hx / h - g * hx
        jerk = u * reconstruct(acc, grid).derivative()
    else:
        acc = -g * hx
        jerk = g * reconstruct(V, grid).second_derivative() - g * u * hxx
    return ParticleMotion(grid, u, acc, jerk)


def pressure_integral(series: CKSeries, path: TrajectoryPath, order: int, g: float = G,
                      t0: float = 0.0) -> ScalarField:
    """(g/2) times the time integral of h^2(x_i) - h^2(x^L(t)) over the span.

    The span starts ``t0`` after the anchor time of ``series``.
    """
    grid = series.grid
    half = t0 + 0.5 * path.span
    if order == 2:
        mid = series.at(half) ** 2 - eval_h_squared(series, half, path.mid)
        val = path.span * mid
    elif order == 4:
        start = series.at(t0) ** 2 - eval_h_squared(series, t0, path.foot)
        mid = series.at(half) ** 2 - eval_h_squared(series, half, path.mid)
        # the end term vanishes because x^L(t^n + span) = x_i
        val = path.span * (start / 6.0 + 2.0 * mid / 3.0)
    else:
        raise ConfigError(f"pressure quadrature order must be 2 or 4, got {order}")
    return ScalarField(grid, 0.5 * g * val)


# --- conservative SL fluxes ------------------------------------------------------
def to_averages(v, grid: Grid1D) -> np.ndarray:
    """Fourth-order conversion of point values to cell averages."""
    p = pad(np.asarray(v, dtype=float), grid, 1)
    return p[1:-1] + (p[2:] - 2 * p[1:-1] + p[:-2]) / 24.0


def conservative_H(transported: ScalarField, feet: FeetSet,
                   pressure: Optional[ScalarField] = None,
                   rec: Optional[Reconstruction] = None) -> ScalarField:
    """Integral of the transported quantity from each foot to its cell centre.

    ``feet`` must be unwrapped on periodic grids.  With ``pressure`` given the
    pressure integral is subtracted (momentum equation).
    """
    grid = transported.grid
    if rec is None:
        rec = reconstruct(to_averages(transported.values, grid), grid)
    H = rec.integrate(feet.feet, grid.x)
    if pressure is not None:
        H = H - pressure.values
    return ScalarField(grid, H)


def _face_max(s, grid: Grid1D) -> np.ndarray:
    p = pad(np.asarray(s, dtype=float), grid, 1)
    return np.maximum(p[:-1], p[1:])


def face_fluxes(q_n: ScalarField, H: ScalarField, dissipation_speed, span: float,
                q_rec: Optional[Reconstruction] = None) -> np.ndarray:
    """Local Lax-Friedrichs fluxes at the n+1 faces (index k is face k-1/2).

    The jump coefficient ``s * span`` is capped at half a cell width: beyond
    that the explicit jump term amplifies the shortest waves.
    """
    grid = q_n.grid
    hr = reconstruct(H.values, grid)
    h_minus, h_plus = hr.interfaces()
    if q_rec is None:
        q_rec = reconstruct(to_averages(q_n.values, grid), grid)
    q_minus, q_plus = q_rec.interfaces()
    s = np.asarray(getattr(dissipation_speed, "values", dissipation_speed), dtype=float)
    if s.ndim == 0:
        s = np.full(grid.n_cells, float(s))
    sf = _face_max(s, grid)
    jump = q_plus - q_minus
    if not grid.periodic:
        jump[0] = jump[-1] = 0.0
    coef = np.minimum(sf * span, JUMP_CAP * grid.dx)
    return 0.5 * (h_plus + h_minus) - 0.5 * coef * jump


def conservative_F(q_n: ScalarField, H: ScalarField, dissipation_speed, span: float = 0.0,
                   q_rec: Optional[Reconstruction] = None) -> ScalarField:
    """q^n minus the difference of the face fluxes over the cell width."""
    f = face_fluxes(q_n, H, dissipation_speed, span, q_rec)
    return ScalarField(q_n.grid, q_n.values - (f[1:] - f[:-1]) / q_n.grid.dx)


def d1_face_flux(v, grid: Grid1D):
    """Left and right boundary face values of the flux form of :func:`d1`."""
    p = pad(np.asarray(v, dtype=float), grid, 2)
    n = grid.n_cells
    left = (-p[3] + 7 * p[2] + 7 * p[1] - p[0]) / 12.0
    right = (-p[n + 3] + 7 * p[n + 2] + 7 * p[n + 1] - p[n]) / 12.0
    return left, right


# --- the stage engine ---------------------------------------------------------------
@dataclass
class StepInfo:
    """Bookkeeping of one step: net mass leaving through the boundaries and
    the linear solves performed."""

    mass_outflow: float = 0.0
    solves: list = field(default_factory=list)


@dataclass
class _Relax:
    """Relaxation weights for a stage of length tau, in grouped form."""

    epsilon: float = math.inf
    froude: bool = False

    def weights(self, tau, g):
        eps = self.epsilon
        if math.isinf(eps):
            w0, w1, r = 1.0, 0.0, 0.0
        else:
            w0, w1, r = eps / (eps + tau), tau / (eps + tau), 1.0 / (eps + tau)
        # pressure weight in V_I and its per-time counterpart in the stage flux
        if self.froude:
            pw, prate = 0.5 * tau * r, 0.5 * r
        else:
            pw, prate = 0.5 * g * tau * w0, 0.5 * g * w0
        return w0, w1, r, pw, prate

    def dynamics(self, tau):
        """Particle law for a sub-step: the source dominates once eps < tau."""
        if self.froude:
            return "straight"
        return "equilibrium" if self.epsilon < tau else "swe"


class _Engine:
    def __init__(self, state: SWEState, dt: float, tb: ButcherPair, opts: SWEOptions,
                 continuity: str, relax: Optional[_Relax]):
        if dt <= 0:
            raise ConfigError("dt must be positive")
        self.state, self.dt, self.tb, self.opts = state, dt, tb, opts
        self.continuity = continuity
        self.relax = relax or _Relax()
        self.grid = state.grid
        g = self.grid
        h, V = state.h.values, state.V.values
        self.u = velocity(h, V)
        # Froude-scaled pressure lives entirely in the implicit solve
        self.rule = None if self.relax.froude else opts.rule(tb)
        if opts.steady_source:
            self.series = frozen_series(state)
        else:
            self.series = ck_predictor(state, opts.g)
        self.series.dt = dt
        self._F = self._G = None
        self.substeps = 0
        self.info = StepInfo()
        if opts.viscosity:
            lam = np.abs(self.u) + np.sqrt(opts.g * h) if not self.relax.froude else np.abs(self.u)
            self.lam_face = _face_max(lam, g)
            self.jump_weights = reconstruct(h, g).weights

    # explicit conservative transport from t^n to every stage fraction
    def _chain(self):
        tb, g, dt = self.tb, self.grid, self.dt
        fracs = np.concatenate([tb.a.sum(axis=1), tb.a_tilde.sum(axis=1), [1.0]])
        thetas = sorted({float(t) for t in fracs if t > 0.0})
        h0, V0 = self.state.h.values, self.state.V.values
        hk, Vk = h0.copy(), V0.copy()
        fV = np.zeros(g.n_cells + 1)
        fh = np.zeros(g.n_cells + 1)
        t = 0.0
        self._F, self._G = {0.0: V0.copy()}, {0.0: h0.copy()}
        self._out = {0.0: np.zeros(2)}
        for th in thetas:
            seg = th * dt - t
            umax = float(np.max(np.abs(velocity(hk, Vk))))
            m = max(1, math.ceil(umax * seg / (SUB_COURANT * g.dx) - 1e-9))
            self.substeps += m
            for _ in range(m):
                tau = seg / m
                hk, Vk, dV, dh = self._substep(hk, Vk, t, tau)
                fV += dV
                fh += dh
                t += tau
            self._F[th] = V0 - (fV[1:] - fV[:-1]) / g.dx
            self._G[th] = h0 - (fh[1:] - fh[:-1]) / g.dx
            self._out[th] = fh[[0, -1]].copy()

    def _substep(self, hk, Vk, t, tau):
        """Advance the explicit transport by ``tau`` starting at ``t^n + t``.

        Only the convective fluxes are returned for accumulation; the pressure
        force applied to the intermediate momentum just keeps the particle
        velocities of the next sub-step physical.
        """
        g, opts = self.grid, self.opts
        sub = SWEState.from_arrays(g, hk, Vk)
        motion = particle_motion(sub, opts.g, opts.steady_source, self.relax.dynamics(tau))
        path = motion.path(tau, need_mid=self.rule is not None)
        feet = FeetSet(g, path.foot, tau)
        speed = np.abs(motion.u)
        V_rec = reconstruct(to_averages(Vk, g), g)
        P = None
        if self.rule is not None:
            P = pressure_integral(self.series, path, self.rule, opts.g, t0=t)
        fV = face_fluxes(sub.V, conservative_H(sub.V, feet, P, V_rec), speed, tau, V_rec)
        V_new = Vk - (fV[1:] - fV[:-1]) / g.dx
        if opts.steady_source:
            fh = np.zeros(g.n_cells + 1)
            h_new = hk
        else:
            h_rec = reconstruct(to_averages(hk, g), g)
            fh = face_fluxes(sub.h, conservative_H(sub.h, feet, None, h_rec), speed, tau, h_rec)
            h_new = hk - (fh[1:] - fh[:-1]) / g.dx
        # pressure and relaxation act implicitly-in-time on the intermediate
        # momentum, with the same grouped weights as the stage solves
        w0, w1, _, pw, _ = self.relax.weights(tau, opts.g)
        hm = 0.5 * (hk + h_new)
        V_new = w0 * V_new - pw * d1(hm * hm, g) + 0.5 * w1 * h_new * h_new
        return h_new, V_new, fV, fh

    def F(self, theta):
        if self._F is None:
            self._chain()
        return self._F[float(theta)]

    def G(self, theta):
        if self._G is None:
            self._chain()
        return self._G[float(theta)]

    def visc(self, hv):
        """Implicit interface dissipation of the continuity equation."""
        flux = 0.5 * self.lam_face * interface_jumps(hv, self.grid, self.jump_weights)
        return (flux[1:] - flux[:-1]) / self.grid.dx

    def _solve(self, apply, rhs, symmetric):
        A = krylov.LinearOperator(apply, rhs.size, symmetric)
        res = krylov.solve(A, rhs, tol=self.opts.tol, symmetric=symmetric)
        self.info.solves.append((res.method, res.iterations, res.residual))
        return res.x

    def depth_solve(self, h_E, h_pre, V_pre, tau, w0, w1, pw):
        """Depth at an implicit stage of the SL-IMEX-H scheme."""
        g = self.grid
        c2 = tau * pw
        c1 = 0.5 * tau * w1
        rhs = h_pre - tau * w0 * d1(V_pre, g)
        visc = self.opts.viscosity
        if g.periodic and c1 == 0.0 and not visc:
            # y = h_E h turns the pressure operator into diag(1/h_E) - c2 d2
            inv = 1.0 / h_E
            y = self._solve(lambda y: inv * y - c2 * d2(y, g), rhs, True)
            return y * inv

        def apply(x):
            hx = h_E * x
            out = x - c2 * d2(hx, g)
            if c1:
                out = out + c1 * d1(hx, g)
            if visc:
                out = out - tau * self.visc(x)
            return out
        return self._solve(apply, rhs, False)

    def run(self) -> SWEState:
        tb, dt, g = self.tb, self.dt, self.grid
        at, a, b, s = tb.a_tilde, tb.a, tb.b, tb.s
        c = a.sum(axis=1)
        ct = at.sum(axis=1)
        h0, V0 = self.state.h.values, self.state.V.values
        steady = self.opts.steady_source
        hcont = self.continuity == "h"
        mass_flux, visc_flux, impl = [], [], []
        out_faces = []  # boundary d1 face values of each stage momentum (SL-IMEX-H)
        for i in range(s):
            tau = a[i, i] * dt
            w0, w1, r, pw, prate = self.relax.weights(tau, self.opts.g)
            V_pre = self.F(c[i]) + dt * sum(a[i, j] * impl[j] for j in range(i))
            if steady:
                h_E = h_I = h0
            elif hcont:
                h_E = h0 + dt * sum(at[i, j] * mass_flux[j] for j in range(i))
                h_pre = h0 + dt * sum(a[i, j] * mass_flux[j] for j in range(i))
                h_I = self.depth_solve(h_E, h_pre, V_pre, tau, w0, w1, pw)
            else:
                h_E = self.G(ct[i]) + dt * sum(at[i, j] * visc_flux[j] for j in range(i))
                h_pre = self.G(c[i]) + dt * sum(a[i, j] * visc_flux[j] for j in range(i))
                if self.opts.viscosity:
                    h_I = self._solve(lambda x: x - tau * self.visc(x), h_pre, False)
                else:
                    h_I = h_pre
            prod = h_E * h_I
            grad = d1(prod, g)
            V_I = w0 * V_pre - pw * grad + 0.5 * w1 * prod
            impl.append((0.5 * prod - V_pre) * r - prate * grad)
            if not steady:
                vflux = self.visc(h_I) if self.opts.viscosity else np.zeros(g.n_cells)
                visc_flux.append(vflux)
                if hcont:
                    mass_flux.append(-d1(V_I, g) + vflux)
                    out_faces.append(d1_face_flux(V_I, g))
        V_new = self.F(1.0) + dt * sum(b[j] * impl[j] for j in range(s))
        if steady:
            h_new = h0.copy()
        elif hcont:
            h_new = h0 + dt * sum(b[j] * mass_flux[j] for j in range(s))
            if not g.periodic:
                self.info.mass_outflow = dt * sum(b[j] * (out_faces[j][1] - out_faces[j][0]) for j in range(s))
        else:
            h_new = self.G(1.0) + dt * sum(b[j] * visc_flux[j] for j in range(s))
            if not g.periodic:
                f = self._out[1.0]
                self.info.mass_outflow = f[1] - f[0]
        if not math.isinf(self.relax.epsilon):
            V_new = self._close_relaxation(h_new, V_new, a[-1, -1] * dt)
        _check(h_new, V_new)
        return SWEState.from_arrays(g, h_new, V_new)

    def _close_relaxation(self, h, V, tau):
        """Relax the assembled momentum towards the new depth.

        The weighted sum of stage sources is not at equilibrium for pairs
        that are not stiffly accurate; this brings V to h^2/2 (plus the
        scaled pressure in Froude mode) as eps -> 0 and does nothing as
        eps -> inf.
        """
        w0, w1, _, pw, _ = self.relax.weights(tau, self.opts.g)
        out = w0 * V + 0.5 * w1 * h * h
        if self.relax.froude:
            out = out - pw * d1(h * h, self.grid)
        return out


def _check(h, V):
    bad = ~(np.isfinite(h) & np.isfinite(V))
    if np.any(bad):
        raise NumericalError(f"non-finite state at cell {int(np.argmax(bad))}")
    neg = h <= 0
    if np.any(neg):
        i = int(np.argmax(neg))
        raise DomainError(f"depth {h[i]:g} not positive at cell {i}")


def advance(state: SWEState, dt: float, tableau: ButcherPair, options: Optional[SWEOptions] = None,
            scheme: str = "slimexh", relax: Optional[_Relax] = None):
    """One step of either scheme; returns ``(new_state, StepInfo)``."""
    if scheme not in ("slimexh", "slimex"):
        raise ConfigError(f"unknown SWE scheme {scheme!r}")
    eng = _Engine(state, dt, tableau, options or SWEOptions(), "h" if scheme == "slimexh" else "sl", relax)
    new = eng.run()
    return new, eng.info


def slimexh_step(state: SWEState, dt: float, tableau: ButcherPair,
                 options: Optional[SWEOptions] = None) -> SWEState:
    return advance(state, dt, tableau, options, "slimexh")[0]


def slimex_step(state: SWEState, dt: float, tableau: ButcherPair,
                options: Optional[SWEOptions] = None) -> SWEState:
    return advance(state, dt, tableau, options, "slimex")[0]
