"""Asymptotic-preserving steps for shallow water with a relaxation source.

The momentum equation gains ``h/eps * (h/2 - u)``.  As ``eps -> 0`` the
depth obeys inviscid Burgers; with the Froude-scaled pressure ``1/(2 eps)``
it obeys viscous Burgers instead.  All three steppers reuse the stage engine
of :mod:`slimex.swe`; only the grouped relaxation weights differ.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError
from .swe import SWEOptions, SWEState, _Relax, advance
from .tableaux import ButcherPair, make_tableau


@dataclass(frozen=True)
class RelaxOptions:
    """Relaxation parameter and pressure scaling.

    ``epsilon = math.inf`` switches the source off.
    """

    epsilon: float
    froude_scaling: bool = False

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")

    def gamma(self, dt: float) -> float:
        """(eps + dt) / eps, evaluated without forming 1/eps."""
        if math.isinf(self.epsilon):
            return 1.0
        return 1.0 + dt / self.epsilon

    def inv_gamma(self, dt: float) -> float:
        if math.isinf(self.epsilon):
            return 1.0
        return self.epsilon / (self.epsilon + dt)

    def stiff_factor(self, dt: float) -> float:
        """dt / (gamma * eps), which tends to 1 as eps -> 0."""
        if math.isinf(self.epsilon):
            return 0.0
        return dt / (self.epsilon + dt)

    def _engine_relax(self) -> _Relax:
        return _Relax(self.epsilon, self.froude_scaling)


def equilibrium_defect(state: SWEState) -> float:
    """max |u - h/2| over the grid."""
    return float(np.max(np.abs(state.u - 0.5 * state.h.values)))


def ap_advance(state: SWEState, dt: float, tableau: ButcherPair, relax: RelaxOptions,
               options: Optional[SWEOptions] = None, scheme: str = "slimexh"):
    """Relaxation step returning ``(new_state, StepInfo)``.

    ``scheme`` is ``"slimexh"`` or ``"slimex"``; Froude scaling routes to the
    low-Froude form, which always uses the implicit continuity.
    """
    if relax.froude_scaling:
        scheme = "slimexh"
    return advance(state, dt, tableau, options, scheme, relax._engine_relax())


def _ap(state, dt, tableau, relax, options, scheme):
    if relax.froude_scaling:
        raise ConfigError("Froude-scaled relaxation goes through low_froude_step")
    return ap_advance(state, dt, tableau, relax, options, scheme)[0]


def slimexh_ap_step(state: SWEState, dt: float, tableau: ButcherPair, relax: RelaxOptions,
                    options: Optional[SWEOptions] = None) -> SWEState:
    """Implicit-continuity step; the eps -> 0 limit is an implicit Burgers update."""
    return _ap(state, dt, tableau, relax, options, "slimexh")


def slimex_ap_step(state: SWEState, dt: float, tableau: ButcherPair, relax: RelaxOptions,
                   options: Optional[SWEOptions] = None) -> SWEState:
    """Transported-continuity step; in the limit u relaxes to h/2."""
    return _ap(state, dt, tableau, relax, options, "slimex")


def low_froude_step(state: SWEState, dt: float, relax: RelaxOptions,
                    tableau: Optional[ButcherPair] = None,
                    options: Optional[SWEOptions] = None) -> SWEState:
    """Froude-scaled relaxation step.

    The pressure coefficient is ``1/(2 eps)``, so the pressure solve turns
    into an implicit diffusion of ``h^2/2`` in the limit.  Defaults to the
    first-order pair.
    """
    if not relax.froude_scaling:
        raise ConfigError("low_froude_step needs froude_scaling=True")
    tb = tableau or make_tableau("sp111")
    opts = options or SWEOptions()
    return ap_advance(state, dt, tb, relax, opts)[0]
