"""Model Hamiltonians and the Nosé-Hoover vector field.

Three systems with identity mass matrix:

* ``harmonic1d``     H = p^2/2 + q^2/2
* ``pendulum1d``     H = p^2/2 - cos q
* ``centralforce2d`` H = |p|^2/2 + r^2 + r^4,  r = |q|

Inverse temperature ``beta`` absorbs Boltzmann's constant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels


class Kind(str, enum.Enum):
    HARMONIC = "harmonic1d"
    PENDULUM = "pendulum1d"
    CENTRAL = "centralforce2d"


_CODES = {Kind.HARMONIC: _kernels.HARMONIC, Kind.PENDULUM: _kernels.PENDULUM,
          Kind.CENTRAL: _kernels.CENTRAL}
_DIMS = {Kind.HARMONIC: 1, Kind.PENDULUM: 1, Kind.CENTRAL: 2}
_ALIASES = {"harmonic": Kind.HARMONIC, "pendulum": Kind.PENDULUM,
            "central": Kind.CENTRAL, "centralforce": Kind.CENTRAL}


@dataclass(frozen=True)
class ModelSpec:
    """Which Hamiltonian, at which temperature, with which thermostat mass."""

    kind: Kind
    beta: float = 1.0
    Q: float = 1.0

    def __post_init__(self):
        kind = self.kind
        if isinstance(kind, str) and not isinstance(kind, Kind):
            kind = _ALIASES.get(kind.lower()) or Kind(kind)
            object.__setattr__(self, "kind", kind)
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not (self.Q > 0 and math.isfinite(self.Q)):
            raise ValueError(f"Q must be positive, got {self.Q}")

    @property
    def N(self) -> int:
        return _DIMS[self.kind]

    @property
    def code(self) -> int:
        return _CODES[self.kind]

    @property
    def min_energy(self) -> float:
        return -1.0 if self.kind is Kind.PENDULUM else 0.0

    def with_(self, **changes) -> "ModelSpec":
        values = {"kind": self.kind, "beta": self.beta, "Q": self.Q}
        values.update(changes)
        return ModelSpec(**values)


def _vec(x, n: int | None = None) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=float)).copy()
    if n is not None and arr.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class PhaseState:
    """Positions and momenta. Pendulum angles are kept unreduced."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q, p = _vec(self.q), _vec(self.p)
        if q.shape != p.shape:
            raise ValueError("q and p must have the same length")
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(p))):
            raise ValueError("phase state must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class ThermostatState:
    """Extended phase point (q, p, xi)."""

    q: np.ndarray
    p: np.ndarray
    xi: float = 0.0
    phase: PhaseState = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        phase = PhaseState(self.q, self.p)
        xi = float(self.xi)
        if not math.isfinite(xi):
            raise ValueError("xi must be finite")
        object.__setattr__(self, "q", phase.q)
        object.__setattr__(self, "p", phase.p)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "phase", phase)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.q, self.p, [self.xi]])

    @classmethod
    def from_array(cls, z) -> "ThermostatState":
        z = np.asarray(z, dtype=float)
        n = (z.size - 1) // 2
        return cls(z[:n], z[n:2 * n], z[-1])


def _check_dim(model: ModelSpec, q: np.ndarray):
    if q.shape != (model.N,):
        raise ValueError(f"{model.kind.value} expects positions of length {model.N}")


def potential(model: ModelSpec, q) -> float:
    q = _vec(q)
    _check_dim(model, q)
    return float(_kernels.potential(model.code, q))


def grad_potential(model: ModelSpec, q) -> np.ndarray:
    q = _vec(q)
    _check_dim(model, q)
    out = np.empty_like(q)
    _kernels.grad_v(model.code, q, out)
    return out


def hamiltonian(model: ModelSpec, s: PhaseState | ThermostatState) -> float:
    p = s.p
    return 0.5 * float(p @ p) + potential(model, s.q)


def angular_momentum(s: PhaseState | ThermostatState) -> float:
    """L = q1 p2 - q2 p1 for a planar state."""
    q, p = s.q, s.p
    if q.shape != (2,):
        raise ValueError("angular momentum needs a two-dimensional state")
    return float(q[0] * p[1] - q[1] * p[0])


def nh_vector_field(model: ModelSpec, s: ThermostatState) -> ThermostatState:
    """Time derivative (q', p', xi') of the Nosé-Hoover system, packed as a state."""
    q, p, xi = s.q, s.p, s.xi
    dq = p.copy()
    dp = -grad_potential(model, q) - (xi / model.Q) * p
    dxi = float(p @ p) - model.N / model.beta
    return ThermostatState(dq, dp, dxi)


def effective_radial_hamiltonian(model: ModelSpec, r: float, p_r: float, L: float) -> float:
    """Reduced energy p_r^2/2 + L^2/(2 r^2) + V(r) of the planar central-force motion."""
    if model.kind is not Kind.CENTRAL:
        raise ValueError("radial reduction is only defined for the central-force model")
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    return 0.5 * p_r * p_r + 0.5 * L * L / (r * r) + radial_potential(r)


def radial_potential(r):
    r2 = np.asarray(r, dtype=float) ** 2
    return r2 + r2 * r2


def radial_force(r):
    """dV/dr for V(r) = r^2 + r^4."""
    r = np.asarray(r, dtype=float)
    return 2.0 * r + 4.0 * r ** 3


def gibbs_energy_density(h, table, beta: float):
    """Unnormalized energy density exp(-beta h) a'(h) from an action table.

    ``a'`` is the centered secant slope of the tabulated action at the
    nodes, one-sided at the two ends, and linear in between.
    """
    h = np.asarray(h, dtype=float)
    lo, hi = table.h[0], table.h[-1]
    if np.any(h < lo) or np.any(h > hi):
        raise ValueError(f"energy outside table range [{lo}, {hi}]")
    slope = table.action_slope()
    return np.exp(-beta * h) * np.interp(h, table.h, slope)
