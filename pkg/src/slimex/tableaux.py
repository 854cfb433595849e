"""Double Butcher tableaux for IMEX Runge-Kutta schemes.

Each scheme carries an explicit matrix (used for the advective / trajectory
part) and an implicit one (diffusive / pressure part) with a shared weight
vector.  Coefficients given as fractions are built from ``Fraction`` and only
converted to floats once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from .errors import ConfigError

__all__ = ["ButcherPair", "make_tableau", "validate_tableau", "SCHEME_IDS"]


@dataclass(frozen=True)
class ButcherPair:
    scheme_id: str
    order_p: int
    a_tilde: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c_tilde: np.ndarray
    c: np.ndarray
    stiffly_accurate: bool = field(default=False)

    @property
    def s(self) -> int:
        return len(self.b)

    def __post_init__(self):
        for name in ("a_tilde", "a", "b", "c_tilde", "c"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _f(rows):
    return np.array([[float(Fraction(v)) for v in r] for r in rows])


def _sp111():
    return ButcherPair("SP111", 1, _f([[0]]), _f([[1]]), np.array([1.0]),
                       np.array([0.0]), np.array([1.0]))


def _sassp332():
    h, q, t = Fraction(1, 2), Fraction(1, 4), Fraction(1, 3)
    at = _f([[0, 0, 0], [h, 0, 0], [h, h, 0]])
    a = _f([[q, 0, 0], [0, q, 0], [t, t, t]])
    b = np.array([float(t)] * 3)
    return ButcherPair("SASSP332", 2, at, a, b, np.array([0.0, 0.5, 1.0]),
                       np.array([0.25, 0.25, 1.0]))


def _ssp3433():
    # printed to six decimals only
    al, de, et = 0.241694, 0.060424, 0.129153
    at = _f([[0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0],
             [0, Fraction(1, 4), Fraction(1, 4), 0]])
    a = np.array([[al, 0, 0, 0],
                  [-al, al, 0, 0],
                  [0, 1 - al, al, 0],
                  [de, et, 0.5 - de - et - al, al]])
    b = np.array([0.0, 1 / 6, 1 / 6, 2 / 3])
    return ButcherPair("SSP3433", 3, at, a, b, at.sum(axis=1), a.sum(axis=1))


_REGISTRY = {"sp111": _sp111, "sassp332": _sassp332, "ssp3433": _ssp3433}
SCHEME_IDS = tuple(_REGISTRY)


def make_tableau(scheme_id: str) -> ButcherPair:
    """Return the registered tableau for ``scheme_id`` (case-insensitive)."""
    key = str(scheme_id).lower().replace("-", "").replace("_", "")
    if key not in _REGISTRY:
        raise ConfigError(f"unknown tableau '{scheme_id}'; choose from {', '.join(SCHEME_IDS)}")
    tb = _REGISTRY[key]()
    sa = bool(np.allclose(tb.a[-1], tb.b, atol=1e-14, rtol=0))
    object.__setattr__(tb, "stiffly_accurate", sa)
    return tb


def validate_tableau(tb: ButcherPair) -> List[str]:
    """List violated structural conditions; empty when the tableau is sound."""
    out = []
    at, a, b = np.asarray(tb.a_tilde), np.asarray(tb.a), np.asarray(tb.b)
    s = len(b)
    if at.shape != (s, s) or a.shape != (s, s):
        out.append(f"matrix shape mismatch: a_tilde {at.shape}, a {a.shape}, s={s}")
        return out
    up = np.triu(at)
    if np.any(up != 0):
        out.append("explicit matrix not strictly lower triangular "
                   f"(max |entry| on/above diagonal = {np.abs(up).max():g})")
    su = np.triu(a, 1)
    if np.any(su != 0):
        out.append("implicit matrix not lower triangular "
                   f"(max |entry| above diagonal = {np.abs(su).max():g})")
    sb = float(b.sum())
    if abs(sb - 1.0) > 1e-14:
        out.append(f"Σb = {sb:.15g}")
    r = np.abs(np.asarray(tb.c_tilde) - at.sum(axis=1)).max()
    if r > 1e-14:
        out.append(f"c_tilde != row sums of a_tilde (residual {r:.3g})")
    r = np.abs(np.asarray(tb.c) - a.sum(axis=1)).max()
    if r > 1e-14:
        out.append(f"c != row sums of a (residual {r:.3g})")
    return out
