"""Fixed-step integrators.

``nh_step`` is the symmetric splitting

    T(dt/2) K(dt/2) D(dt) K(dt/2) T(dt/2)

with D the drift q += h p, K the kick p -= h grad V(q) and T the thermostat
map (half xi update, exact momentum rescaling, half xi update). Being a
palindrome of self-adjoint pieces it is second order and time reversible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .models import ModelSpec, PhaseState, ThermostatState


class IntegrationError(RuntimeError):
    """The state became non-finite; ``t`` is the time of the failing step."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} at t={t:.6g}")
        self.t = t


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    t_final: float = 1.0
    sample_stride: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.t_final >= self.dt:
            raise ValueError("t_final must be at least dt")
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise ValueError("sample_stride must be a positive integer")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))


@dataclass
class Trajectory:
    """Sampled path. ``xi`` is None for constant-energy (Verlet) runs."""

    times: np.ndarray
    q: np.ndarray
    p: np.ndarray
    xi: np.ndarray | None = None

    def __len__(self):
        return len(self.times)

    def __getitem__(self, i) -> PhaseState | ThermostatState:
        if self.xi is None:
            return PhaseState(self.q[i], self.p[i])
        return ThermostatState(self.q[i], self.p[i], self.xi[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def final(self):
        return self[len(self) - 1]


def nh_step(model: ModelSpec, s: ThermostatState, dt: float) -> ThermostatState:
    q, p = s.q.copy(), s.p.copy()
    g = np.empty_like(q)
    xi = _kernels.nh_step_inplace(model.code, model.beta, model.Q, q, p, s.xi, float(dt), g)
    return ThermostatState(q, p, xi)


def verlet_step(model: ModelSpec, s: PhaseState, dt: float) -> PhaseState:
    q, p = s.q.copy(), s.p.copy()
    g = np.empty_like(q)
    _kernels.verlet_step_inplace(model.code, q, p, float(dt), g)
    return PhaseState(q, p)


def symplectic_euler_step(rhs: Callable[[float], float], state: tuple[float, float],
                          dt: float) -> tuple[float, float]:
    """One step for sigma' = -alpha, alpha' = rhs(sigma).

    The momentum-like alpha is advanced first and the new value drives the
    sigma update.
    """
    sigma, alpha = state
    alpha = alpha + dt * rhs(sigma)
    sigma = sigma - dt * alpha
    return sigma, alpha


def _initial_arrays(model: ModelSpec, init) -> tuple[np.ndarray, np.ndarray, float]:
    if isinstance(init, ThermostatState):
        q, p, xi = init.q, init.p, init.xi
    elif isinstance(init, PhaseState):
        q, p, xi = init.q, init.p, 0.0
    else:
        raise TypeError("init must be a PhaseState or ThermostatState")
    if q.shape != (model.N,):
        raise ValueError(f"{model.kind.value} expects states of dimension {model.N}")
    return q.astype(float), p.astype(float), float(xi)


def integrate(model: ModelSpec, scheme: str, init, config: IntegratorConfig,
              observers: Iterable[Callable] = ()) -> Trajectory:
    """Run ``scheme`` ("nh" or "verlet") from ``init`` over ``config``.

    Observers are called as ``obs(t, state)`` for every stored sample, in
    order, after the run completes.
    """
    if scheme not in ("nh", "verlet"):
        raise ValueError(f"unknown scheme {scheme!r}")
    if scheme == "nh" and not isinstance(init, ThermostatState):
        raise TypeError("the Nosé-Hoover scheme needs a ThermostatState")
    q0, p0, xi0 = _initial_arrays(model, init)
    n_steps, stride = config.n_steps, int(config.sample_stride)
    qs, ps, xis, fail = _kernels.run(model.code, model.beta, model.Q, q0, p0, xi0,
                                     float(config.dt), n_steps, stride, scheme == "nh")
    if fail != _kernels.FAIL_NONE:
        raise IntegrationError("non-finite state", fail * config.dt)
    times = np.arange(len(qs)) * (config.dt * stride)
    traj = Trajectory(times, qs, ps, xis if scheme == "nh" else None)
    for obs in observers:
        for t, s in zip(times, traj):
            obs(t, s)
    return traj


def run_nh(model: ModelSpec, init: ThermostatState, dt: float, t_final: float,
           stride: int = 1) -> Trajectory:
    return integrate(model, "nh", init, IntegratorConfig(dt, t_final, stride))


def symplectic_euler_path(knots_a: Sequence[float], knots_k: Sequence[float], a0: float,
                          sigma0: float, alpha0: float, dt: float, n_steps: int,
                          stride: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Compiled symplectic Euler for the averaged 1D flow with tabulated k(a).

    ``k`` is linear in a between the knots. Raises ``IntegrationError`` if
    the action leaves the knot range.
    """
    ka = np.ascontiguousarray(knots_a, dtype=float)
    kk = np.ascontiguousarray(knots_k, dtype=float)
    sig, alp, fail = _kernels.symplectic_euler_run(ka, kk, float(a0), float(sigma0),
                                                   float(alpha0), float(dt), int(n_steps),
                                                   int(stride))
    if fail != _kernels.FAIL_NONE:
        raise IntegrationError("action left the tabulated range", fail * dt)
    return sig, alp


def rk4_path(rhs: Callable[[np.ndarray], np.ndarray], y0, dt: float, n_steps: int,
             stride: int = 1) -> np.ndarray:
    """Classical fixed-step RK4 for small autonomous systems (pure Python)."""
    y = np.asarray(y0, dtype=float).copy()
    out = [y.copy()]
    for i in range(1, n_steps + 1):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError("non-finite state", i * dt)
        if i % stride == 0:
            out.append(y.copy())
    return np.array(out)
