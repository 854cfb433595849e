"""Third-order CWENO reconstruction.

Per cell the reconstruction is a parabola in the local coordinate
xi = (x - x_i)/dx, blended from one central parabola and two one-sided lines.
Cell values are read as cell averages, so every candidate (and therefore the
blend) integrates back to the cell value exactly.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .gridfields import Grid1D, ScalarField, pad

LINEAR_WEIGHTS = (0.5, 0.25, 0.25)  # central, left, right
EPS = 1e-6
POWER = 2


class CellPoly(NamedTuple):
    cell: int
    c0: float
    c1: float
    c2: float

    def __call__(self, xi):
        return self.c0 + self.c1 * xi + self.c2 * xi * xi


class Reconstruction:
    """Piecewise parabolas for all cells of a grid.

    ``coef[:, k]`` is the coefficient of xi**k.  ``weights`` holds the
    nonlinear (central, left, right) weights per cell.
    """

    def __init__(self, grid: Grid1D, coef: np.ndarray, weights: np.ndarray, values: np.ndarray):
        self.grid = grid
        self.coef = coef
        self.weights = weights
        self.values = values
        # cumulative integral from x_left to each left cell face
        self._cum = np.concatenate([[0.0], np.cumsum(values * grid.dx)])

    def __len__(self):
        return self.grid.n_cells

    def __getitem__(self, i) -> CellPoly:
        if not -len(self) <= i < len(self):
            raise IndexError(f"cell {i} out of range")
        i = i % len(self)
        return CellPoly(i, *self.coef[i])

    @property
    def right(self) -> np.ndarray:
        c = self.coef
        return c[:, 0] + 0.5 * c[:, 1] + 0.25 * c[:, 2]

    @property
    def left(self) -> np.ndarray:
        c = self.coef
        return c[:, 0] - 0.5 * c[:, 1] + 0.25 * c[:, 2]

    def derivative(self) -> np.ndarray:
        """First derivative at cell centres."""
        return self.coef[:, 1] / self.grid.dx

    def second_derivative(self) -> np.ndarray:
        return 2.0 * self.coef[:, 2] / self.grid.dx ** 2

    def interfaces(self):
        """(minus, plus) states at faces i+1/2 for i = -1..n-1 (n+1 faces)."""
        g = self.grid
        lv, rv = self.left, self.right
        if g.periodic:
            minus = np.concatenate([[rv[-1]], rv])
            plus = np.concatenate([lv, [lv[0]]])
        else:
            minus = np.concatenate([[self.values[0]], rv])
            plus = np.concatenate([lv, [self.values[-1]]])
        return minus, plus

    def antiderivative(self, xq) -> np.ndarray:
        """Integral of the reconstruction from x_left to ``xq`` (vectorised)."""
        g = self.grid
        xq = np.asarray(xq, dtype=float)
        L, dx, n = g.length, g.dx, g.n_cells
        total = self._cum[-1]
        if g.periodic:
            m = np.floor((xq - g.x_left) / L)
            xw = xq - m * L
            base = m * total
        else:
            if np.any(xq < g.x_left - L) or np.any(xq > g.x_right + L):
                raise DomainError("integration limit far outside the domain")
            xw = np.clip(xq, g.x_left, g.x_right)
            # constant extension of the end cells outside the domain
            base = (np.minimum(xq - g.x_left, 0.0) * self.values[0]
                    + np.maximum(xq - g.x_right, 0.0) * self.values[-1])
        s = (xw - g.x_left) / dx
        k = np.clip(np.floor(s).astype(int), 0, n - 1)
        xi = s - k - 0.5
        c = self.coef[k]
        part = dx * (c[..., 0] * (xi + 0.5) + 0.5 * c[..., 1] * (xi * xi - 0.25)
                     + c[..., 2] / 3.0 * (xi ** 3 + 0.125))
        return base + self._cum[k] + part

    def integrate(self, a, b):
        return self.antiderivative(b) - self.antiderivative(a)

    def evaluate(self, xq) -> np.ndarray:
        g = self.grid
        xq = g.wrap(np.asarray(xq, dtype=float))
        s = (xq - g.x_left) / g.dx
        k = np.clip(np.floor(s).astype(int), 0, g.n_cells - 1)
        xi = s - k - 0.5
        c = self.coef[k]
        return c[..., 0] + c[..., 1] * xi + c[..., 2] * xi * xi


def _candidates(p):
    qm, q0, qp = p[:-2], p[1:-1], p[2:]
    dl = q0 - qm
    dr = qp - q0
    dd = qp - 2 * q0 + qm
    cc, cl, cr = LINEAR_WEIGHTS
    # optimal parabola (average preserving) and central candidate
    opt0 = q0 - dd / 24.0
    opt1 = 0.5 * (qp - qm)
    opt2 = 0.5 * dd
    cen = ((opt0 - (cl + cr) * q0) / cc, (opt1 - cl * dl - cr * dr) / cc, opt2 / cc)
    return q0, dl, dr, cen


def _blend(q0, dl, dr, cen, w):
    wc, wl, wr = w[:, 0], w[:, 1], w[:, 2]
    coef = np.empty((q0.size, 3))
    coef[:, 0] = wc * cen[0] + (wl + wr) * q0
    coef[:, 1] = wc * cen[1] + wl * dl + wr * dr
    coef[:, 2] = wc * cen[2]
    return coef


def reconstruct(v, grid: Grid1D) -> Reconstruction:
    v = np.asarray(v, dtype=float)
    q0, dl, dr, cen = _candidates(pad(v, grid, 1))
    cc, cl, cr = LINEAR_WEIGHTS
    is_c = cen[1] ** 2 + 13.0 / 3.0 * cen[2] ** 2
    ac = cc / (EPS + is_c) ** POWER
    al = cl / (EPS + dl ** 2) ** POWER
    ar = cr / (EPS + dr ** 2) ** POWER
    tot = ac + al + ar
    w = np.stack([ac / tot, al / tot, ar / tot], axis=1)
    return Reconstruction(grid, _blend(q0, dl, dr, cen, w), w, v)


def reconstruct_with_weights(v, grid: Grid1D, weights) -> Reconstruction:
    """Blend with fixed weights; linear in ``v``."""
    v = np.asarray(v, dtype=float)
    q0, dl, dr, cen = _candidates(pad(v, grid, 1))
    return Reconstruction(grid, _blend(q0, dl, dr, cen, weights), weights, v)


def interface_jumps(v, grid: Grid1D, weights) -> np.ndarray:
    """Right state minus left state at the n+1 faces, using fixed weights.

    Boundary faces of non-periodic grids get zero jump.
    """
    rec = reconstruct_with_weights(v, grid, weights)
    minus, plus = rec.interfaces()
    jump = plus - minus
    if not grid.periodic:
        jump[0] = jump[-1] = 0.0
    return jump


def cweno_reconstruct(f: ScalarField) -> Reconstruction:
    return reconstruct(f.values, f.grid)


def poly_value_left(polys: Reconstruction, i: int) -> float:
    p = polys[i]
    return p(-0.5)


def poly_value_right(polys: Reconstruction, i: int) -> float:
    p = polys[i]
    return p(0.5)


def poly_integrate(polys: Reconstruction, a: float, b: float) -> float:
    return float(polys.integrate(a, b))
