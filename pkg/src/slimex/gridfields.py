"""Uniform 1-D grids, cell-centred fields, FD derivatives and spline sampling."""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigError, DomainError

PERIODIC = "periodic"
EXTRAPOLATE = "extrapolate"
LINEAR = "linear"
POLICIES = (PERIODIC, EXTRAPOLATE, LINEAR)
# how far (in domain lengths from the centre) linear extension may reach
LINEAR_REACH = 10.0


@dataclass(frozen=True)
class Grid1D:
    x_left: float
    x_right: float
    n_cells: int
    boundary: str = PERIODIC

    def __post_init__(self):
        if self.boundary not in POLICIES:
            raise ConfigError(f"unknown boundary policy {self.boundary!r}")
        if not self.x_right > self.x_left:
            raise ConfigError("x_right must exceed x_left")
        if int(self.n_cells) < 1:
            raise ConfigError("n_cells must be positive")

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def length(self) -> float:
        return self.x_right - self.x_left

    @property
    def x(self) -> np.ndarray:
        return self.x_left + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def periodic(self) -> bool:
        return self.boundary == PERIODIC

    def wrap(self, xq):
        """Map points into [x_left, x_right) on periodic grids; no-op otherwise."""
        xq = np.asarray(xq, dtype=float)
        if not self.periodic:
            return xq
        return self.x_left + np.mod(xq - self.x_left, self.length)


class ScalarField:
    """Cell-centred values of one quantity on a grid."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid1D, values):
        v = np.array(values, dtype=float)
        if v.shape != (grid.n_cells,):
            raise ConfigError(f"field has {v.shape} values, grid has {grid.n_cells} cells")
        if not np.all(np.isfinite(v)):
            raise DomainError("field contains non-finite values")
        self.grid = grid
        self.values = v

    @classmethod
    def from_function(cls, grid, fn):
        return cls(grid, fn(grid.x))

    def copy(self):
        return ScalarField(self.grid, self.values.copy())

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,value\n")
        for xi, vi in zip(self.grid.x, self.values):
            buf.write(f"{xi:.17g},{vi:.17g}\n")
        return buf.getvalue()

    def __repr__(self):
        return f"ScalarField(n={self.grid.n_cells}, min={self.values.min():.4g}, max={self.values.max():.4g})"


def pad(v, grid: Grid1D, ng: int) -> np.ndarray:
    """Add ``ng`` ghost cells per side.

    periodic wraps, extrapolate copies the end value, linear continues the
    slope of the two end cells.
    """
    if grid.periodic:
        return np.concatenate([v[-ng:], v, v[:ng]])
    if grid.boundary == LINEAR:
        k = np.arange(ng, 0, -1)
        lo = v[0] - k * (v[1] - v[0])
        hi = v[-1] + k[::-1] * (v[-1] - v[-2])
        return np.concatenate([lo, v, hi])
    return np.concatenate([np.full(ng, v[0]), v, np.full(ng, v[-1])])


def _check(grid):
    if grid.n_cells < 5:
        raise ConfigError("fourth-order stencils need at least 5 cells")


def d1(v, grid: Grid1D) -> np.ndarray:
    """Array version of :func:`fd_dx`."""
    _check(grid)
    p = pad(np.asarray(v, dtype=float), grid, 2)
    n = grid.n_cells
    return (-p[4:n + 4] + 8 * p[3:n + 3] - 8 * p[1:n + 1] + p[0:n]) / (12 * grid.dx)


def d2(v, grid: Grid1D) -> np.ndarray:
    """Array version of :func:`fd_dxx`."""
    _check(grid)
    p = pad(np.asarray(v, dtype=float), grid, 2)
    n = grid.n_cells
    return (-p[4:n + 4] + 16 * p[3:n + 3] - 30 * p[2:n + 2]
            + 16 * p[1:n + 1] - p[0:n]) / (12 * grid.dx ** 2)


def fd_dx(f: ScalarField) -> ScalarField:
    """Fourth-order central first derivative."""
    return ScalarField(f.grid, d1(f.values, f.grid))


def fd_dxx(f: ScalarField) -> ScalarField:
    """Fourth-order central second derivative."""
    return ScalarField(f.grid, d2(f.values, f.grid))


def make_spline(v, grid: Grid1D) -> CubicSpline:
    x = grid.x
    if grid.periodic:
        xs = np.append(x, x[0] + grid.length)
        return CubicSpline(xs, np.append(v, v[0]), bc_type="periodic")
    return CubicSpline(x, v, bc_type="not-a-knot")


def sample(v, grid: Grid1D, xq, clamp: bool = False, spline=None) -> np.ndarray:
    """Evaluate the cubic-spline interpolant of cell values ``v`` at ``xq``.

    Periodic grids wrap the queries.  Otherwise queries must lie within one
    cell of the domain unless ``clamp`` is set.  Clamping pulls points back
    to the range of cell centres, except on ``linear`` grids where the slope
    of the two end cells is continued instead.
    """
    xq = np.asarray(xq, dtype=float)
    sp = spline if spline is not None else make_spline(v, grid)
    if grid.periodic:
        xw = grid.wrap(xq)
        # wrap may land exactly on x_right due to rounding; the spline covers it
        xw = np.where(xw < grid.x[0], xw + grid.length, xw)
        return sp(xw)
    if clamp and grid.boundary == LINEAR:
        if np.any(np.abs(xq - 0.5 * (grid.x_left + grid.x_right)) > LINEAR_REACH * grid.length):
            raise DomainError("query point far outside the domain")
        v = np.asarray(v, dtype=float)
        xc = grid.x
        out = sp(np.clip(xq, xc[0], xc[-1]))
        lo, hi = xq < xc[0], xq > xc[-1]
        out[lo] = v[0] + (xq[lo] - xc[0]) * (v[1] - v[0]) / grid.dx
        out[hi] = v[-1] + (xq[hi] - xc[-1]) * (v[-1] - v[-2]) / grid.dx
        return out
    if clamp:
        xc = grid.x
        return sp(np.clip(xq, xc[0], xc[-1]))
    lo, hi = grid.x_left - grid.dx, grid.x_right + grid.dx
    bad = (xq < lo) | (xq > hi)
    if np.any(bad):
        raise DomainError(f"query point {xq[bad][0]:g} outside [{lo:g}, {hi:g}]")
    return sp(xq)


def spline_interpolate(f: ScalarField, query_points) -> np.ndarray:
    return sample(f.values, f.grid, query_points)
