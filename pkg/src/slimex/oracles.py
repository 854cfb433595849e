"""Reference solutions and SWE diagnostics.

Closed forms for the three advection-diffusion cases, the smooth SWE steady
state, an exact two-wave SWE Riemann solver, and Burgers Riemann fans.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import erf, erfc

from .errors import NumericalError

G = 9.81

# advection-diffusion case parameters
TEST1 = dict(u=0.1, alpha=1e-3, x0=-0.25, t0=1e-2, domain=(-2.0, 2.0), t_final=0.3)
TEST2 = dict(k0=0.2, alpha=0.0, domain=(-3.0, 3.0), t_final=9.0)
TEST3 = dict(alpha=0.1, domain=(-10.0, 10.0), t_final=0.1)


def exact_test1(x, t, u=TEST1["u"], alpha=TEST1["alpha"], x0=TEST1["x0"], t0=TEST1["t0"]):
    """Smoothed step moving at speed u; ``t`` is measured from the run start."""
    x = np.asarray(x, dtype=float)
    # erfc keeps relative accuracy in the downstream tail
    return 0.5 * erfc((x - x0 - u * t) / np.sqrt(4 * alpha * (t + t0)))


def exact_test2(x, t, k0=TEST2["k0"]):
    x = np.asarray(x, dtype=float)
    return np.exp(-50.0 * (x * np.exp(-k0 * t)) ** 2)


def exact_test3(x, t, alpha=TEST3["alpha"]):
    """Separable solution of q_t - x q_x = alpha q_xx."""
    x = np.asarray(x, dtype=float)
    s = np.sqrt(2 * alpha)
    g = -x - 0.5 * np.sqrt(2 * np.pi * alpha) * erf(x / s) * x - alpha * np.exp(-x * x / (2 * alpha))
    return np.exp(t) * g


# --- smooth SWE steady state -------------------------------------------------
STEADY = dict(a=5.0, c=-1.0, domain=(-10.0, 10.0), t_final=0.2, cfl=2.0)


def steady_swe(x, a=STEADY["a"], c=STEADY["c"], g=G):
    """(h, u) with u = 1 + a cos(pi x / 5) and g h^2/2 + u^2 h = -c."""
    x = np.asarray(x, dtype=float)
    u = 1.0 + a * np.cos(np.pi * x / 5.0)
    u2 = u * u
    h = (-u2 + np.sqrt(u2 * u2 - 2.0 * g * c)) / g
    return h, u


# --- Riemann problems ---------------------------------------------------------
@dataclass(frozen=True)
class RiemannIC:
    name: str
    h_left: float
    u_left: float
    h_right: float
    u_right: float
    x_d: float
    t_final: float
    domain: tuple
    cfl: float = 2.0

    def __post_init__(self):
        if not (self.h_left > 0 and self.h_right > 0):
            raise ValueError("Riemann states need positive depth")

    def initial(self, x):
        x = np.asarray(x, dtype=float)
        left = x < self.x_d
        h = np.where(left, self.h_left, self.h_right)
        u = np.where(left, self.u_left, self.u_right)
        return h, u


RP1 = RiemannIC("rp1", 1.5, -1.0, 1.0, 2.0, 0.0, 1.0, (-10.0, 10.0), cfl=3.0)
RP2 = RiemannIC("rp2", 1.0, 0.0, 0.5, 0.0, 0.0, 1.5, (-10.0, 10.0), cfl=2.0)
B1 = RiemannIC("b1", 1.0, 0.0, 2.0, 0.0, 0.0, 0.3, (-1.0, 1.0), cfl=4.0)
B2 = RiemannIC("b2", 2.0, 0.0, 1.0, 0.0, 0.0, 0.4, (-1.0, 1.0), cfl=4.0)


def _depth_fn(hs, hk, g):
    """Toro's f_K and its derivative."""
    if hs <= hk:
        ck, cs = np.sqrt(g * hk), np.sqrt(g * hs)
        return 2.0 * (cs - ck), g / cs
    gk = np.sqrt(0.5 * g * (hs + hk) / (hs * hk))
    f = (hs - hk) * gk
    df = gk - g * (hs - hk) / (4.0 * hs * hs * gk)
    return f, df


def star_depth(hl, ul, hr, ur, g=G, tol=1e-12, max_iter=100):
    """Newton on f_L + f_R + du = 0, with bisection as fallback."""
    cl, cr = np.sqrt(g * hl), np.sqrt(g * hr)
    du = ur - ul
    if du >= 2.0 * (cl + cr):
        raise NumericalError("dry region would form")

    def F(h):
        fl, dl = _depth_fn(h, hl, g)
        fr, dr = _depth_fn(h, hr, g)
        return fl + fr + du, dl + dr

    h = (0.5 * (cl + cr) - 0.25 * du) ** 2 / g  # two-rarefaction guess
    for _ in range(max_iter):
        f, df = F(h)
        step = f / df
        hn = h - step
        if hn <= 0:
            hn = 0.5 * h
        if abs(hn - h) <= tol * max(hn, 1.0):
            h = hn
            return h
        h = hn
    return star_depth_bisect(hl, ul, hr, ur, g, tol)


def star_depth_bisect(hl, ul, hr, ur, g=G, tol=1e-14):
    du = ur - ul

    def F(h):
        return _depth_fn(h, hl, g)[0] + _depth_fn(h, hr, g)[0] + du

    lo, hi = 1e-14, max(hl, hr)
    while F(hi) < 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if F(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < tol * hi:
            break
    return 0.5 * (lo + hi)


def swe_exact_riemann(ic: RiemannIC, x, t, g=G):
    """Exact (h, u) at positions x and time t > 0."""
    hl, ul, hr, ur = ic.h_left, ic.u_left, ic.h_right, ic.u_right
    x = np.asarray(x, dtype=float)
    if t <= 0:
        return ic.initial(x)
    hs = star_depth(hl, ul, hr, ur, g)
    fl = _depth_fn(hs, hl, g)[0]
    fr = _depth_fn(hs, hr, g)[0]
    us = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    cl, cr, cs = np.sqrt(g * hl), np.sqrt(g * hr), np.sqrt(g * hs)
    xi = (x - ic.x_d) / t
    h = np.empty_like(xi)
    u = np.empty_like(xi)

    left = xi <= us
    # left wave
    if hs > hl:
        ql = np.sqrt(0.5 * (hs + hl) * hs / (hl * hl))
        sl = ul - cl * ql
        m = left & (xi < sl)
        h[m], u[m] = hl, ul
        m = left & (xi >= sl)
        h[m], u[m] = hs, us
    else:
        shl, stl = ul - cl, us - cs
        m = left & (xi < shl)
        h[m], u[m] = hl, ul
        m = left & (xi >= shl) & (xi <= stl)
        u[m] = (ul + 2 * cl + 2 * xi[m]) / 3.0
        c = (ul + 2 * cl - xi[m]) / 3.0
        h[m] = c * c / g
        m = left & (xi > stl)
        h[m], u[m] = hs, us
    right = ~left
    if hs > hr:
        qr = np.sqrt(0.5 * (hs + hr) * hs / (hr * hr))
        sr = ur + cr * qr
        m = right & (xi > sr)
        h[m], u[m] = hr, ur
        m = right & (xi <= sr)
        h[m], u[m] = hs, us
    else:
        shr, str_ = ur + cr, us + cs
        m = right & (xi > shr)
        h[m], u[m] = hr, ur
        m = right & (xi >= str_) & (xi <= shr)
        u[m] = (ur - 2 * cr + 2 * xi[m]) / 3.0
        c = (-ur + 2 * cr + xi[m]) / 3.0
        h[m] = c * c / g
        m = right & (xi < str_)
        h[m], u[m] = hs, us
    return h, u


def riemann_wave_speeds(ic: RiemannIC, g=G):
    """Return (star depth, star velocity, left speed(s), right speed(s))."""
    hl, ul, hr, ur = ic.h_left, ic.u_left, ic.h_right, ic.u_right
    hs = star_depth(hl, ul, hr, ur, g)
    fl = _depth_fn(hs, hl, g)[0]
    fr = _depth_fn(hs, hr, g)[0]
    us = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    cl, cr, cs = np.sqrt(g * hl), np.sqrt(g * hr), np.sqrt(g * hs)
    if hs > hl:
        left = (ul - cl * np.sqrt(0.5 * (hs + hl) * hs / (hl * hl)),)
    else:
        left = (ul - cl, us - cs)
    if hs > hr:
        right = (ur + cr * np.sqrt(0.5 * (hs + hr) * hs / (hr * hr)),)
    else:
        right = (us + cs, ur + cr)
    return hs, us, left, right


def burgers_exact_riemann(h_left, h_right, x, t, x_d=0.0):
    """Entropy solution of h_t + (h^2/2)_x = 0 with a jump at x_d."""
    x = np.asarray(x, dtype=float)
    if t <= 0:
        return np.where(x < x_d, h_left, h_right)
    xi = (x - x_d) / t
    if h_left > h_right:
        s = 0.5 * (h_left + h_right)
        return np.where(xi < s, h_left, h_right)
    return np.clip(xi, h_left, h_right)


# --- Burgers limits ------------------------------------------------------------
AP_SMOOTH = dict(domain=(0.0, 1.0), t_final=0.05, amplitude=0.2, wavenumber=8.0)
LOW_FROUDE = dict(domain=(0.0, 1.0), t_final=0.05, amplitude=0.2, wavenumber=2.0)


def sine_depth(x, amplitude, wavenumber):
    return 1.0 + amplitude * np.sin(wavenumber * np.pi * np.asarray(x, dtype=float))


def burgers_smooth_exact(x, t, amplitude=AP_SMOOTH["amplitude"],
                         wavenumber=AP_SMOOTH["wavenumber"]):
    """Inviscid Burgers from sine data, before the first shock.

    Solves x = x0 + t h0(x0) for the launch point with safeguarded Newton.
    """
    x = np.asarray(x, dtype=float)
    k = wavenumber * np.pi
    if t * amplitude * k >= 1.0:
        raise NumericalError("characteristics have crossed; no smooth solution")
    h0 = lambda z: 1.0 + amplitude * np.sin(k * z)
    # x - x0 lies in t*[1-A, 1+A]; the residual is monotone in x0
    lo = x - t * (1.0 + amplitude)
    hi = x - t * (1.0 - amplitude)
    z = 0.5 * (lo + hi)
    for _ in range(100):
        f = z + t * h0(z) - x
        df = 1.0 + t * amplitude * k * np.cos(k * z)
        lo = np.where(f < 0, z, lo)
        hi = np.where(f > 0, z, hi)
        zn = z - f / df
        zn = np.where((zn <= lo) | (zn >= hi), 0.5 * (lo + hi), zn)
        if np.max(np.abs(zn - z)) < 1e-15:
            z = zn
            break
        z = zn
    return h0(z)


def viscous_burgers_reference(n_cells, t, amplitude=LOW_FROUDE["amplitude"],
                              wavenumber=LOW_FROUDE["wavenumber"], domain=LOW_FROUDE["domain"]):
    """h_t + (h^2/2)_x = (h^2/2)_xx on a periodic grid by the method of lines.

    Second-order central differences in space, stiff BDF in time with tight
    tolerances.  Returns cell-centre values.
    """
    from scipy.integrate import solve_ivp

    a, b = domain
    dx = (b - a) / n_cells
    x = a + (np.arange(n_cells) + 0.5) * dx

    def rhs(_, h):
        q = 0.5 * h * h
        qp, qm = np.roll(q, -1), np.roll(q, 1)
        return -(qp - qm) / (2 * dx) + (qp - 2 * q + qm) / (dx * dx)

    sol = solve_ivp(rhs, (0.0, t), sine_depth(x, amplitude, wavenumber), method="BDF",
                    rtol=1e-11, atol=1e-13)
    if not sol.success:
        raise NumericalError(f"reference integration failed: {sol.message}")
    return x, sol.y[:, -1]


# --- diagnostics ----------------------------------------------------------------
@dataclass
class Diagnostics:
    mass: float
    kinetic: float
    potential: float
    total_energy: float
    cfl: float

    def as_row(self):
        return (self.mass, self.kinetic, self.potential, self.total_energy, self.cfl)


def cfl_number(h, V, dx, dt, g=G):
    h = np.asarray(h, dtype=float)
    u = np.asarray(V, dtype=float) / h
    return float(dt * np.max(np.abs(u) + np.sqrt(g * h)) / dx)


def diagnostics(h, V, dx, dt=0.0, g=G) -> Diagnostics:
    h = np.asarray(h, dtype=float)
    V = np.asarray(V, dtype=float)
    u = V / h
    m = float(np.sum(h) * dx)
    k = float(np.sum(0.5 * h * u * u) * dx)
    p = float(np.sum(0.5 * g * h * h) * dx)
    return Diagnostics(m, k, p, k + p, cfl_number(h, V, dx, dt, g) if dt else 0.0)
