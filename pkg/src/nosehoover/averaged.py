"""Averaged slow dynamics.

In one degree of freedom the averaged system in (a, alpha) is

    a' = -alpha a,   alpha' = k(a),

with first integral G = alpha^2/2 + W(a). With sigma = ln(a/a0) it becomes
the Hamiltonian system sigma' = -alpha, alpha' = U'(sigma), U(sigma) = W(a0 e^sigma),
whose closed orbits around a minimizer a0 of W have period T1(G).

For the central force the averaged flow is approximated in (L, H, alpha)
with the L-averaged kinetic moment k0app(H).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from .actionlib import ActionTable, W_of_a, find_W_maximizers, k_of_a
from .integrators import IntegrationError, rk4_path, symplectic_euler_path, symplectic_euler_step
from .interp import PiecewiseLinear, RangeError
from . import _kernels
from .quadrature import sine_nodes


class WellError(ValueError):
    """The requested level is not a closed orbit inside the validated window."""


@dataclass(frozen=True)
class AveragedState1D:
    sigma: float
    alpha: float


@dataclass(frozen=True)
class AveragedState2D:
    L: float
    H: float
    alpha: float


@dataclass(frozen=True)
class SlowPotential:
    """U(sigma) = W(a0 e^sigma) on the window a_lo <= a <= a_hi.

    ``k`` and ``W`` are vectorized functions of the action; ``knots`` lists
    actions where k has kinks (panel edges for the period quadrature).
    """

    k: Callable
    W: Callable
    a0: float
    a_lo: float
    a_hi: float
    knots: tuple = ()

    @classmethod
    def from_table(cls, table: ActionTable, beta: float, a0: float, N: int | None = None):
        """Well around the minimizer a0, bounded by the adjacent maxima of W
        (or the table ends)."""
        maxima = find_W_maximizers(table, beta, N)
        lo, hi = table.action_range
        a_lo = max([m for m in maxima if m < a0], default=lo)
        a_hi = min([m for m in maxima if m > a0], default=hi)
        return cls(lambda a: k_of_a(a, table, beta, N), lambda a: W_of_a(a, table, beta, N),
                   float(a0), float(a_lo), float(a_hi), tuple(float(x) for x in table.a))

    @property
    def sigma_window(self) -> tuple[float, float]:
        return math.log(self.a_lo / self.a0), math.log(self.a_hi / self.a0)

    def action(self, sigma):
        a = self.a0 * np.exp(sigma)
        # exp(log(x)) may round just past a window edge
        tol = 1e-12
        lo, hi = self.a_lo * (1 - tol), self.a_hi * (1 + tol)
        a = np.where((a < self.a_lo) & (a >= lo), self.a_lo, a)
        a = np.where((a > self.a_hi) & (a <= hi), self.a_hi, a)
        return a if a.ndim else float(a)

    def U(self, sigma):
        return self.W(self.action(sigma))

    def dU(self, sigma):
        return self.k(self.action(sigma))

    @property
    def G0(self) -> float:
        return float(self.U(0.0))

    @property
    def G_top(self) -> float:
        """Highest level whose orbit stays inside the window."""
        lo, hi = self.sigma_window
        return float(min(self.U(lo), self.U(hi)))

    def turning_points(self, G: float) -> tuple[float, float]:
        G0 = self.G0
        if not G > G0:
            raise WellError(f"G = {G} is not above the well bottom {G0}")
        lo, hi = self.sigma_window
        f = lambda s: float(self.U(s)) - G  # noqa: E731
        if f(lo) <= 0 or f(hi) <= 0:
            raise WellError(f"level G = {G} leaves the validated window")
        s1 = brentq(f, lo, 0.0, xtol=1e-15, rtol=1e-15)
        s2 = brentq(f, 0.0, hi, xtol=1e-15, rtol=1e-15)
        return s1, s2

    def G(self, sigma, alpha):
        return 0.5 * alpha * alpha + self.U(sigma)


# ---------------------------------------------------------------- vector fields

def averaged_rhs_1d(s: AveragedState1D, a0: float, k: Callable) -> AveragedState1D:
    """(sigma', alpha') = (-alpha, k(a0 e^sigma)). ``k`` raises outside its range."""
    return AveragedState1D(-s.alpha, float(k(a0 * math.exp(s.sigma))))


def goodform_rhs(a: np.ndarray, alpha: float, k: Callable) -> tuple[np.ndarray, float]:
    """(a', alpha') = (-alpha a, k(a)) for an action vector a."""
    a = np.asarray(a, dtype=float)
    return -alpha * a, float(k(a))


def averaged_rhs_2d(s: AveragedState2D, k0app: PiecewiseLinear, beta: float) -> AveragedState2D:
    k0 = k0app(s.H)
    return AveragedState2D(-s.alpha * s.L, -s.alpha * k0, k0 - 2.0 / beta)


def averaged_first_integrals(a: Sequence[float], alpha: float, k: Callable,
                             s_ref: float) -> np.ndarray:
    """G_i = a_i/a_N for i < N and G_N = alpha^2/2 + ∫_{s_ref}^{a_N} k(s a/a_N)/s ds.

    ``k`` takes an action vector. With N = 1 this is alpha^2/2 + W(a) with
    W anchored at ``s_ref``.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    aN = a[-1]
    if aN == 0:
        raise ValueError("last action must be nonzero")
    ray = a / aN
    val, _ = quad(lambda s: float(k(s * ray)) / s, s_ref, aN, epsabs=1e-14, epsrel=1e-13,
                  limit=200)
    return np.concatenate([ray[:-1], [0.5 * alpha * alpha + val]])


# ---------------------------------------------------------------- integration

def averaged_path_1d(table: ActionTable, beta: float, a0: float, sigma0: float, alpha0: float,
                     dt: float, n_steps: int, stride: int = 1, N: int | None = None):
    """Symplectic Euler on (sigma, alpha) with the tabulated k; compiled."""
    n = table.N if N is None else N
    return symplectic_euler_path(table.a, table.k0 - n / beta, a0, sigma0, alpha0, dt,
                                 n_steps, stride)


def averaged_path_2d(k0app: PiecewiseLinear, beta: float, L0: float, H0: float, alpha0: float,
                     dt: float, n_steps: int, stride: int = 1) -> np.ndarray:
    """RK4 on (L, H, alpha); rows of the returned array are samples."""
    k0app(H0)
    out, fail = _kernels.averaged2d_rk4_run(np.ascontiguousarray(k0app.x),
                                            np.ascontiguousarray(k0app.y), float(beta),
                                            float(L0), float(H0), float(alpha0), float(dt),
                                            int(n_steps), int(stride))
    if fail != _kernels.FAIL_NONE:
        raise IntegrationError("energy left the k0app range", fail * dt)
    return out


def goodform_path(k: Callable, a0: Sequence[float], alpha0: float, dt: float, n_steps: int,
                  stride: int = 1) -> np.ndarray:
    """RK4 on (a, alpha); columns are a_1..a_N, alpha."""
    def rhs(y):
        da, dal = goodform_rhs(y[:-1], y[-1], k)
        return np.concatenate([da, [dal]])
    return rk4_path(rhs, np.concatenate([np.atleast_1d(a0), [alpha0]]), dt, n_steps, stride)


# ---------------------------------------------------------------- period function

def period_T1(G: float, well: SlowPotential, n: int = 32) -> float:
    """Period of the closed orbit alpha^2/2 + U(sigma) = G.

    T1 = 2 ∫ dsigma / sqrt(2 (G - U)) between the turning points, by the sine
    substitution with Gauss-Legendre panels split where k has kinks.
    """
    s1, s2 = well.turning_points(G)
    mid, half = 0.5 * (s1 + s2), 0.5 * (s2 - s1)
    kinks = [math.log(x / well.a0) for x in well.knots]
    inner = sorted(math.asin((x - mid) / half) for x in kinks if s1 < x < s2)
    s, w = sine_nodes(n, [-0.5 * math.pi] + inner + [0.5 * math.pi])
    sigma = mid + half * np.sin(s)
    gap = np.maximum(G - well.U(sigma), 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(gap > 0, half * np.cos(s) / np.sqrt(2.0 * gap), 0.0)
    return float(2.0 * np.sum(w * f))


def period_first_return(G: float, well: SlowPotential, rtol: float = 1e-11,
                        t_max: float = 1e3) -> float:
    """T1 by integrating the averaged field from sigma = 0 until the orbit is
    back at sigma = 0 moving in its initial direction.

    The loop is integrated in two legs, each ending at a crossing of sigma = 0
    in the direction opposite to its start, so the starting point itself is
    never mistaken for an event.
    """
    gap = G - well.G0
    if not gap > 0:
        raise WellError(f"G = {G} is not above the well bottom")
    well.turning_points(G)

    def rhs(t, y):
        return [-y[1], float(well.dU(y[0]))]

    total = 0.0
    y = [0.0, math.sqrt(2.0 * gap)]
    for direction in (1.0, -1.0):
        def cross(t, y):
            return y[0]
        cross.direction = direction
        cross.terminal = True
        sol = solve_ivp(rhs, (0.0, t_max), y, method="DOP853", rtol=rtol, atol=rtol * 1e-2,
                        events=cross, max_step=0.05)
        if not sol.t_events[0].size:
            raise WellError("no return to sigma = 0 within the time limit")
        total += float(sol.t_events[0][0])
        y = sol.y_events[0][0]
    return total


def well_width_and_isochrony(G: float, well: SlowPotential, n: int = 32) -> tuple[float, float]:
    """Width sigma2 - sigma1 of the well at level G and its deviation from
    the width an isochronous well with the same period would have."""
    s1, s2 = well.turning_points(G)
    T1 = period_T1(G, well, n)
    width = s2 - s1
    return width, width - (T1 / math.pi) * math.sqrt(2.0 * (G - well.G0))


def T1_grid(well: SlowPotential, n_nodes: int = 50, margin: float = 1e-3) -> np.ndarray:
    G0, top = well.G0, well.G_top
    if top - G0 <= 2 * margin:
        raise WellError("well too shallow for the requested margin")
    return np.linspace(G0 + margin, top - margin, n_nodes)


def level_curve(well: SlowPotential, a_start: float, dt: float = 1e-3, t_final: float | None = None,
                table: ActionTable | None = None, beta: float | None = None, stride: int = 10):
    """Trace the averaged orbit through (a_start, alpha = 0) over one period.

    Returns (a, alpha) arrays. Uses the compiled symplectic Euler when a
    table is given.
    """
    sigma0 = math.log(a_start / well.a0)
    if t_final is None:
        G = float(well.U(sigma0))
        t_final = 1.05 * period_T1(G, well)
    n_steps = int(math.ceil(t_final / dt))
    if table is not None:
        sig, alp = averaged_path_1d(table, beta, well.a0, sigma0, 0.0, dt, n_steps, stride)
    else:
        sig, alp = [sigma0], [0.0]
        st = (sigma0, 0.0)
        for i in range(n_steps):
            st = symplectic_euler_step(well.dU, st, dt)
            if (i + 1) % stride == 0:
                sig.append(st[0])
                alp.append(st[1])
        sig, alp = np.array(sig), np.array(alp)
    return well.a0 * np.exp(sig), alp


__all__ = [
    "AveragedState1D", "AveragedState2D", "SlowPotential", "WellError", "RangeError",
    "averaged_rhs_1d", "averaged_rhs_2d", "goodform_rhs", "averaged_first_integrals",
    "averaged_path_1d", "averaged_path_2d", "goodform_path", "period_T1",
    "period_first_return", "well_width_and_isochrony", "T1_grid", "level_curve",
]
