"""Matrix-free CG and BiCGStab.

Both solvers start from a zero guess and stop once the true residual
``||A x - b||_2`` drops to ``tol * ||b||_2``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BreakdownError, SolverError

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12


@dataclass
class LinearOperator:
    apply: Callable[[np.ndarray], np.ndarray]
    n: int
    symmetric: bool = True

    def __call__(self, x):
        return self.apply(x)


@dataclass
class SolveResult:
    x: np.ndarray
    iterations: int
    residual: float
    method: str = "cg"

    def __iter__(self):
        # allows ``x, it, res = cg_solve(...)``
        return iter((self.x, self.iterations, self.residual))


def _as_op(A, n):
    if isinstance(A, LinearOperator):
        return A
    if callable(A):
        return LinearOperator(A, n)
    M = np.asarray(A, dtype=float)
    return LinearOperator(lambda v: M @ v, n)


def _true_res(A, x, b):
    return float(np.linalg.norm(A(x) - b))


def cg_solve(A, rhs, tol=DEFAULT_TOL, max_iter=None) -> SolveResult:
    b = np.asarray(rhs, dtype=float)
    n = b.size
    A = _as_op(A, n)
    if max_iter is None:
        max_iter = 10 * n
    x = np.zeros(n)
    bn = float(np.linalg.norm(b))
    if bn == 0.0:
        return SolveResult(x, 0, 0.0)
    target = tol * bn
    r = b.copy()
    p = r.copy()
    rr = float(r @ r)
    for k in range(1, max_iter + 1):
        Ap = A(p)
        curv = float(p @ Ap)
        if not curv > 0.0:
            raise BreakdownError(f"non-positive curvature {curv:g} at iteration {k}",
                                 residual=np.sqrt(rr), iterations=k)
        alpha = rr / curv
        x += alpha * p
        r -= alpha * Ap
        rr_new = float(r @ r)
        if np.sqrt(rr_new) <= target:
            # recurrence residual can drift; confirm against the operator
            true = _true_res(A, x, b)
            if true <= target:
                return SolveResult(x, k, true)
            r = b - A(x)
            rr_new = float(r @ r)
            p = r.copy()
            rr = rr_new
            continue
        p = r + (rr_new / rr) * p
        rr = rr_new
    res = _true_res(A, x, b)
    raise SolverError(f"CG did not converge in {max_iter} iterations "
                      f"(relative residual {res / bn:.3e})", residual=res, iterations=max_iter)


def bicgstab_solve(A, rhs, tol=DEFAULT_TOL, max_iter=None) -> SolveResult:
    """BiCGStab that restarts from the true residual on breakdown or when
    the recursive residual drifts from it."""
    b = np.asarray(rhs, dtype=float)
    n = b.size
    A = _as_op(A, n)
    if max_iter is None:
        max_iter = 10 * n
    x = np.zeros(n)
    bn = float(np.linalg.norm(b))
    if bn == 0.0:
        return SolveResult(x, 0, 0.0, "bicgstab")
    target = tol * bn
    r = b.copy()
    rhat = r.copy()
    rho = alpha = omega = 1.0
    v = np.zeros(n)
    p = np.zeros(n)
    fresh = True
    for k in range(1, max_iter + 1):
        rho_new = float(rhat @ r)
        if not fresh:
            beta = (rho_new / rho) * (alpha / omega)
            p = r + beta * (p - omega * v)
        else:
            p = r.copy()
        v = A(p)
        denom = float(rhat @ v)
        if rho_new == 0.0 or denom == 0.0 or omega == 0.0:
            if fresh:
                raise BreakdownError(f"BiCGStab breakdown at iteration {k}",
                                     residual=_true_res(A, x, b), iterations=k)
            r = b - A(x)
            rhat, fresh, omega = r.copy(), True, 1.0
            continue
        alpha = rho_new / denom
        s = r - alpha * v
        if np.linalg.norm(s) <= target:
            x += alpha * p
        else:
            t = A(s)
            tt = float(t @ t)
            omega = float(t @ s) / tt if tt > 0 else 0.0
            x += alpha * p + omega * s
            r = s - omega * t
            rho = rho_new
            fresh = False
            if np.linalg.norm(r) > target:
                continue
        true = _true_res(A, x, b)
        if true <= target:
            return SolveResult(x, k, true, "bicgstab")
        r = b - A(x)
        rhat, fresh, omega = r.copy(), True, 1.0
    res = _true_res(A, x, b)
    raise SolverError(f"BiCGStab did not converge in {max_iter} iterations "
                      f"(relative residual {res / bn:.3e})", residual=res, iterations=max_iter)


def solve(A, rhs, tol=DEFAULT_TOL, max_iter=None, symmetric=True) -> SolveResult:
    """CG first for symmetric problems, BiCGStab when CG breaks down or stalls."""
    if symmetric:
        try:
            return cg_solve(A, rhs, tol, max_iter)
        except SolverError as exc:
            log.info("CG failed (%s); retrying with BiCGStab", exc)
    return bicgstab_solve(A, rhs, tol, max_iter)
