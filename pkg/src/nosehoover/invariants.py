"""First integrals of the thermostatted and averaged dynamics.

Exact: G = xi^2/(2Q) + H - (N/(beta k)) ln|F| for a first integral F of the
Hamiltonian flow that is homogeneous of degree k in p. Approximate (slow
drift only): G1 = a1(H, L)/L, E1 = tau(H)/L and E2 for the central force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .actionlib import radial_action, tau_of_H
from .interp import PiecewiseLinear
from .models import (Kind, ModelSpec, PhaseState, ThermostatState, angular_momentum,
                     grad_potential, hamiltonian, potential)


class InvariantError(ValueError):
    """The invariant is undefined at this point (a logarithm or ratio of zero)."""


def homogeneous_invariant(model: ModelSpec, s: ThermostatState,
                          F: Callable[[ThermostatState], float], k: float) -> float:
    """G = xi^2/(2Q) + H - (N/(beta k)) ln|F(q, p)|."""
    if k == 0:
        raise InvariantError("homogeneity degree must be nonzero")
    f = F(s)
    if f == 0:
        raise InvariantError("F vanishes; its logarithm is undefined")
    return (s.xi * s.xi / (2.0 * model.Q) + hamiltonian(model, s)
            - model.N / (model.beta * k) * math.log(abs(f)))


def angular_invariant(model: ModelSpec, s: ThermostatState) -> float:
    """The exact invariant built from F = L (degree 1) for the central force."""
    return homogeneous_invariant(model, s, angular_momentum, 1)


def g1(model: ModelSpec, s: PhaseState | ThermostatState) -> float:
    """Ratio of the radial action to the angular momentum."""
    L = angular_momentum(s)
    if L == 0:
        raise InvariantError("G1 is undefined at L = 0")
    return radial_action(model, hamiltonian(model, s), L) / L


def averaged_E(L: float, H: float, alpha: float, beta: float) -> float:
    if L == 0:
        raise InvariantError("E is undefined at L = 0")
    return 0.5 * alpha * alpha + H - (2.0 / beta) * math.log(abs(L))


def e1(model: ModelSpec, s: PhaseState | ThermostatState, k0app: PiecewiseLinear) -> float:
    L = angular_momentum(s)
    if L == 0:
        raise InvariantError("E1 is undefined at L = 0")
    return tau_of_H(hamiltonian(model, s), k0app) / L


def e2(model: ModelSpec, s: ThermostatState, k0app: PiecewiseLinear) -> float:
    # H(tau(H)) = H, so the inverse of tau is never needed here
    h = hamiltonian(model, s)
    return s.xi * s.xi / (2.0 * model.Q) + h - (2.0 / model.beta) * math.log(tau_of_H(h, k0app))


def e1_e2(model: ModelSpec, s: ThermostatState, k0app: PiecewiseLinear) -> tuple[float, float]:
    return e1(model, s, k0app), e2(model, s, k0app)


# ---------------------------------------------------------------- measure check

def _field(model: ModelSpec, z: np.ndarray, grad) -> np.ndarray:
    n = model.N
    q, p, xi = z[:n], z[n:2 * n], z[-1]
    out = np.empty_like(z)
    out[:n] = p
    out[n:2 * n] = -grad(q) - (xi / model.Q) * p
    out[-1] = p @ p - n / model.beta
    return out


def measure_divergence(model: ModelSpec, s: ThermostatState, *, beta_density: float | None = None,
                       step: float = 1e-5,
                       grad: Callable[[np.ndarray], np.ndarray] | None = None,
                       pot: Callable[[np.ndarray], float] | None = None) -> float:
    """div(rho f) at ``s`` by centered differences, rho = exp(-b (H + xi^2/(2Q))).

    ``beta_density`` sets b (default: the model's beta, for which the
    divergence vanishes identically). ``grad`` and ``pot`` replace the
    potential, e.g. by zero for a free particle.
    """
    b = model.beta if beta_density is None else beta_density
    if grad is None:
        grad = lambda q: grad_potential(model, q)  # noqa: E731
    if pot is None:
        pot = lambda q: potential(model, q)  # noqa: E731
    n = model.N

    def flux(z):
        q, p, xi = z[:n], z[n:2 * n], z[-1]
        rho = math.exp(-b * (0.5 * p @ p + pot(q) + xi * xi / (2.0 * model.Q)))
        return rho * _field(model, z, grad)

    z0 = s.as_array()
    total = 0.0
    for i in range(z0.size):
        zp, zm = z0.copy(), z0.copy()
        zp[i] += step
        zm[i] -= step
        total += (flux(zp)[i] - flux(zm)[i]) / (2.0 * step)
    return total


def divergence_formula(model: ModelSpec, s: ThermostatState, beta_density: float) -> float:
    """Closed form of the divergence with a mismatched density exponent."""
    rho = math.exp(-beta_density * (hamiltonian(model, s) + s.xi ** 2 / (2.0 * model.Q)))
    return rho * model.N * s.xi / model.Q * (beta_density / model.beta - 1.0)


# ---------------------------------------------------------------- drift reports

@dataclass(frozen=True)
class InvariantReport:
    """Values of one invariant along a trajectory, with drift relative to the start."""

    name: str
    times: np.ndarray
    series: np.ndarray

    def __post_init__(self):
        if len(self.times) != len(self.series):
            raise ValueError("times and series must have the same length")

    @property
    def relative(self) -> np.ndarray:
        v0 = self.series[0]
        if v0 == 0:
            raise InvariantError(f"{self.name} starts at 0; use the absolute drift")
        return self.series / v0

    @property
    def drift(self) -> float:
        """max |v(t)/v(0) - 1|."""
        return float(np.max(np.abs(self.relative - 1.0)))

    @property
    def abs_drift(self) -> float:
        return float(np.max(np.abs(self.series - self.series[0])))


def report(name: str, times: Sequence[float], states, fn: Callable) -> InvariantReport:
    values = np.array([fn(s) for s in states])
    return InvariantReport(name, np.asarray(times, dtype=float), values)


def angular_invariant_series(model: ModelSpec, q: np.ndarray, p: np.ndarray,
                             xi: np.ndarray) -> np.ndarray:
    """Vectorized exact invariant (F = L) over sampled central-force arrays."""
    if model.kind is not Kind.CENTRAL:
        raise ValueError("needs the central-force model")
    L = q[:, 0] * p[:, 1] - q[:, 1] * p[:, 0]
    if np.any(L == 0):
        raise InvariantError("L vanishes along the trajectory")
    r2 = np.sum(q * q, axis=1)
    H = 0.5 * np.sum(p * p, axis=1) + r2 + r2 * r2
    return xi * xi / (2.0 * model.Q) + H - (2.0 / model.beta) * np.log(np.abs(L))


def energy_series(model: ModelSpec, q: np.ndarray, p: np.ndarray) -> np.ndarray:
    kin = 0.5 * np.sum(p * p, axis=1)
    if model.kind is Kind.HARMONIC:
        return kin + 0.5 * q[:, 0] ** 2
    if model.kind is Kind.PENDULUM:
        return kin - np.cos(q[:, 0])
    r2 = np.sum(q * q, axis=1)
    return kin + r2 + r2 * r2
