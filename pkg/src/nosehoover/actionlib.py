"""Action-angle machinery computed numerically.

Actions are full loop integrals a = ∮ p dq over every connected component
of a level set, with the angle normalized to period 1. Orbit periods and
loop integrals use Gauss-Legendre quadrature after the sine substitution
at the turning points (see :mod:`nosehoover.quadrature`); the gap h - V is
evaluated through exact factorizations so that it stays accurate right up
to the endpoints.

For the central-force model two families are supported: the planar radial
motion at angular momentum L != 0 (``radial_action``) and the motion on a
line through the origin, which is the L = 0 invariant set (``action_1d``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .interp import PiecewiseLinear, RangeError
from .models import Kind, ModelSpec
from .quadrature import DEFAULT_NODES, gauss_legendre, sine_nodes

SEPARATRIX_BAND = 0.005
K0_HORIZON = 1e4
K0_DT = 1e-3
K0_TOL = 1e-3


class ActionError(ValueError):
    """Energy (and angular momentum) do not define a valid closed orbit."""


class ConvergenceError(RuntimeError):
    def __init__(self, full: float, half: float, tol: float):
        super().__init__(f"time average not converged: full horizon {full!r}, "
                         f"half horizon {half!r}, tolerance {tol}")
        self.full = full
        self.half = half


class TableError(ValueError):
    def __init__(self, node, cause: Exception):
        super().__init__(f"table node {node}: {cause}")
        self.node = node
        self.cause = cause


@dataclass(frozen=True)
class Loop:
    """Integrals over one closed component of a level set.

    ``action`` and ``period`` are for a single loop; ``kinetic`` is the
    time integral of |p|^2 over that loop; ``components`` counts how many
    congruent loops make up the level set.
    """

    action: float
    period: float
    kinetic: float
    components: int = 1

    @property
    def total_action(self) -> float:
        return self.components * self.action

    @property
    def mean_kinetic(self) -> float:
        return self.kinetic / self.period if self.period > 0 else 0.0


def _in_band(h: float) -> bool:
    return abs(h - 1.0) < SEPARATRIX_BAND


def _degenerate(omega: float) -> Loop:
    return Loop(0.0, 2.0 * math.pi / omega, 0.0)


def _from_sine_map(dx_ds, v, w, extra=None) -> Loop:
    """Assemble a loop from nodes of the sine map. Each half of the loop is
    one sweep from the lower to the upper turning point."""
    action = 2.0 * np.sum(w * dx_ds * v)
    with np.errstate(divide="ignore", invalid="ignore"):
        dt = np.where(v > 0, dx_ds / v, 0.0)
    period = 2.0 * np.sum(w * dt)
    kin = v * v if extra is None else v * v + extra
    kinetic = 2.0 * np.sum(w * dt * kin)
    return Loop(float(action), float(period), float(kinetic))


def _pendulum_oscillation(h: float, n: int) -> Loop:
    if h <= -1.0:
        return _degenerate(1.0)
    qm = math.acos(-h)
    s, w = sine_nodes(n)
    c = np.cos(0.25 * math.pi - 0.5 * s)
    sn = np.sin(0.25 * math.pi - 0.5 * s)
    # h + cos q = 2 sin((qm+q)/2) sin((qm-q)/2) with qm -+ q = 2 qm {cos^2, sin^2}(pi/4 - s/2)
    gap = 2.0 * np.sin(qm * c * c) * np.sin(qm * sn * sn)
    v = np.sqrt(2.0 * np.maximum(gap, 0.0))
    return _from_sine_map(qm * np.cos(s), v, w)


def _pendulum_rotation(h: float, n: int) -> Loop:
    # one branch, q in [0, 2pi]; symmetric about q = pi, so integrate phi = pi - q
    # over [0, pi] and double. The integrand peaks at phi = 0 with width ~ sqrt(h-1).
    width = 0.5 * math.sqrt(h - 1.0)
    breaks = [0.0]
    b = width
    while b < math.pi:
        breaks.append(b)
        b *= 2.0
    breaks.append(math.pi)
    x, wx = gauss_legendre(max(32, n // 4))
    action = period = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        half = 0.5 * (hi - lo)
        phi = lo + half * (x + 1.0)
        gap = (h - 1.0) + 2.0 * np.sin(0.5 * phi) ** 2
        v = np.sqrt(2.0 * gap)
        action += half * np.sum(wx * v)
        period += half * np.sum(wx / v)
    action *= 2.0
    period *= 2.0
    # |p|^2 integrated over time is the loop action itself in one dimension
    return Loop(action, period, action, components=2)


def _harmonic(h: float, n: int) -> Loop:
    if h <= 0.0:
        return _degenerate(1.0)
    amp = math.sqrt(2.0 * h)
    s, w = sine_nodes(n)
    c = np.cos(s)
    v = amp * np.abs(c)
    return _from_sine_map(amp * c, v, w)


def _central_line(h: float, n: int) -> Loop:
    if h <= 0.0:
        return _degenerate(math.sqrt(2.0))
    xm2 = 0.5 * (math.sqrt(1.0 + 4.0 * h) - 1.0)
    xm = math.sqrt(xm2)
    s, w = sine_nodes(n)
    c = np.cos(s)
    x = xm * np.sin(s)
    # h - x^2 - x^4 = (xm^2 - x^2)(xm^2 + x^2 + 1)
    gap = xm2 * c * c * (xm2 + x * x + 1.0)
    v = np.sqrt(2.0 * gap)
    return _from_sine_map(xm * c, v, w)


def _loop_1d(model: ModelSpec, h: float, n: int, check_band: bool = True) -> Loop:
    h = float(h)
    if not math.isfinite(h):
        raise ActionError(f"energy must be finite, got {h}")
    if h < model.min_energy:
        raise ActionError(f"energy {h} below the minimum {model.min_energy}")
    kind = model.kind
    if kind is Kind.HARMONIC:
        return _harmonic(h, n)
    if kind is Kind.CENTRAL:
        return _central_line(h, n)
    if check_band and _in_band(h):
        raise ActionError(f"energy {h} inside the separatrix band |h-1| < {SEPARATRIX_BAND}")
    if h < 1.0:
        return _pendulum_oscillation(h, n)
    if h == 1.0:
        raise ActionError("the separatrix level h = 1 has no finite period")
    return _pendulum_rotation(h, n)


def action_1d(model: ModelSpec, h: float, n: int = DEFAULT_NODES, *,
              check_band: bool = True) -> float:
    """a(h) = ∮ p dq summed over all components of {H = h}.

    For the central-force model this is the action of the motion along a
    line through the origin (angular momentum zero).
    """
    return _loop_1d(model, h, n, check_band).total_action


# ---------------------------------------------------------------- radial motion

def _require_central(model: ModelSpec):
    if model.kind is not Kind.CENTRAL:
        raise ActionError("radial quantities need the central-force model")


def circular_u(L: float) -> float:
    """u = r^2 of the circular orbit with angular momentum L (L^2 = 2u^2 + 4u^3)."""
    L2 = L * L
    if L2 == 0.0:
        return 0.0
    hi = max(1.0, L2)
    return brentq(lambda u: 2.0 * u * u + 4.0 * u ** 3 - L2, 0.0, hi, xtol=1e-15, rtol=1e-15)


def circular_energy(L: float) -> float:
    """Minimum of the reduced energy over r at fixed L."""
    u = circular_u(L)
    return 2.0 * u + 3.0 * u * u


def max_angular_momentum(h: float) -> float:
    """|L| of the circular orbit at energy h; larger |L| has no orbit at h."""
    if h <= 0:
        return 0.0
    u = (math.sqrt(1.0 + 3.0 * h) - 1.0) / 3.0
    return math.sqrt(2.0 * u * u + 4.0 * u ** 3)


def radial_turning_points(h: float, L: float) -> tuple[float, float]:
    """r_- < r_+ with H_L(r, 0) = h, found by bracketed root finding in u = r^2."""
    L2 = L * L
    uc = circular_u(L)
    g = lambda u: 0.5 * L2 / u + u + u * u - h  # noqa: E731
    u1 = brentq(g, 0.25 * L2 / h, uc, xtol=1e-15, rtol=1e-15)
    u2 = brentq(g, uc, h + 1.0, xtol=1e-15, rtol=1e-15)
    return math.sqrt(u1), math.sqrt(u2)


def _radial_loop(h: float, L: float, n: int) -> Loop:
    if L == 0.0:
        raise ActionError("L = 0: the reduced level curve is not a closed loop")
    h = float(h)
    hmin = circular_energy(L)
    scale = max(1.0, abs(hmin))
    if h < hmin - 1e-13 * scale:
        raise ActionError(f"energy {h} below the effective minimum {hmin} at L={L}")
    if h <= hmin + 1e-13 * scale:
        u = circular_u(L)
        omega = math.sqrt(3.0 * L * L / (u * u) + 2.0 + 12.0 * u)
        return _degenerate(omega)
    rm, rp = radial_turning_points(h, L)
    u1, u2 = rm * rm, rp * rp
    u3 = -1.0 - u1 - u2
    s, w = sine_nodes(n)
    mid, half = 0.5 * (rp + rm), 0.5 * (rp - rm)
    r = mid + half * np.sin(s)
    u = r * r
    c = np.cos(0.25 * math.pi - 0.5 * s)
    sn = np.sin(0.25 * math.pi - 0.5 * s)
    # h - L^2/(2u) - u - u^2 = (u - u1)(u2 - u)(u - u3)/u, each factor exact at the ends
    gap = (2.0 * half * c * c) * (r + rm) * (2.0 * half * sn * sn) * (rp + r) * (u - u3) / u
    v = np.sqrt(2.0 * gap)
    return _from_sine_map(half * np.cos(s), v, w, extra=L * L / u)


def radial_action(model: ModelSpec, h: float, L: float, n: int = DEFAULT_NODES) -> float:
    """a1(h, L): area enclosed by the reduced orbit in the (r, p_r) plane."""
    _require_central(model)
    return _radial_loop(h, L, n).action


def orbit_period(model: ModelSpec, h: float, L: float | None = None,
                 n: int = DEFAULT_NODES) -> float:
    """Period of one closed component (radial period when L is given)."""
    if L is None:
        return _loop_1d(model, h, n).period
    _require_central(model)
    return _radial_loop(h, L, n).period


def k0_quadrature(model: ModelSpec, h: float, L: float | None = None,
                  n: int = DEFAULT_NODES) -> float:
    """Time average of |p|^2 from the loop integrals (the a/T identity in 1D)."""
    if L is None:
        loop = _loop_1d(model, h, n)
    else:
        _require_central(model)
        loop = _radial_loop(h, L, n)
    return loop.mean_kinetic


# ---------------------------------------------------------------- time averages

def level_set_point(model: ModelSpec, h: float, L: float | None = None):
    """A phase point (q, p) on the requested level set."""
    if L is None:
        _loop_1d(model, h, 16)
        kin = max(h - model.min_energy, 0.0)
        q = np.zeros(model.N)
        p = np.zeros(model.N)
        p[0] = math.sqrt(2.0 * kin)
        return q, p
    _require_central(model)
    if L == 0.0:
        return level_set_point(model, h)
    hmin = circular_energy(L)
    if h < hmin - 1e-13 * max(1.0, abs(hmin)):
        raise ActionError(f"energy {h} below the effective minimum {hmin} at L={L}")
    if h <= hmin + 1e-13 * max(1.0, abs(hmin)):
        r0 = math.sqrt(circular_u(L))
        pr = 0.0
    else:
        rm, rp = radial_turning_points(h, L)
        r0 = 0.5 * (rm + rp)
        pr = math.sqrt(max(2.0 * (h - 0.5 * L * L / r0 ** 2 - r0 ** 2 - r0 ** 4), 0.0))
    return np.array([r0, 0.0]), np.array([pr, L / r0])


def k0_time_average(model: ModelSpec, h: float, L: float | None = None,
                    horizon: float = K0_HORIZON, dt: float = K0_DT, tol: float = K0_TOL,
                    smooth: bool = True) -> float:
    """Average of |p(t)|^2 along a constant-energy Verlet trajectory.

    The average over the full horizon is checked against the one over the
    first half; disagreement beyond ``tol`` (relative, floored at 1) raises
    :class:`ConvergenceError`. ``smooth`` weights samples with a bump
    window (a weighted Birkhoff average), which converges much faster than
    the plain mean on periodic and quasi-periodic orbits.
    """
    q0, p0 = level_set_point(model, h, L)
    if not np.any(p0) and (L is None or L == 0.0):
        return 0.0
    n_steps = int(round(horizon / dt))
    full, half = _kernels.kinetic_average(model.code, q0, p0, float(dt), n_steps, smooth)
    if abs(full - half) > tol * max(1.0, abs(full)):
        raise ConvergenceError(full, half, tol)
    return float(full)


# ---------------------------------------------------------------- tables

@dataclass(frozen=True)
class ActionTable:
    """Monotone tabulation h -> (a, k0, period) for a one-degree-of-freedom family.

    ``period`` is for one component; ``components`` is 2 on pendulum
    rotation levels (both branches counted in ``a``), 1 elsewhere.
    """

    kind: Kind
    h: np.ndarray
    a: np.ndarray
    k0: np.ndarray
    period: np.ndarray
    components: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.size < 2 or np.any(np.diff(h) <= 0):
            raise ValueError("table energies must be strictly increasing")
        if np.any(np.diff(self.a) <= 0):
            raise ValueError("table actions must be strictly increasing")
        if np.any(np.asarray(self.k0) < 0):
            raise ValueError("k0 must be nonnegative")
        if self.kind is Kind.PENDULUM and np.any(np.abs(h - 1.0) < SEPARATRIX_BAND):
            raise ValueError("table has entries inside the separatrix band")

    @property
    def N(self) -> int:
        return 2 if self.kind is Kind.CENTRAL else 1

    @property
    def action_range(self) -> tuple[float, float]:
        return float(self.a[0]), float(self.a[-1])

    def a_of_h(self, h):
        return PiecewiseLinear(self.h, self.a)(h)

    def h_of_a(self, a):
        return PiecewiseLinear(self.a, self.h)(a)

    def k0_of_h(self, h):
        return PiecewiseLinear(self.h, self.k0)(h)

    def k0_of_a(self, a):
        # a and k0 are both linear in h between nodes, so k0 is linear in a too
        return PiecewiseLinear(self.a, self.k0)(a)

    def action_slope(self) -> np.ndarray:
        """da/dh at the nodes: centered secants inside, one-sided at the ends."""
        h, a = self.h, self.a
        slope = np.empty_like(h)
        slope[1:-1] = (a[2:] - a[:-2]) / (h[2:] - h[:-2])
        slope[0] = (a[1] - a[0]) / (h[1] - h[0])
        slope[-1] = (a[-1] - a[-2]) / (h[-1] - h[-2])
        return slope

    def columns(self) -> dict[str, np.ndarray]:
        return {"h": self.h, "a": self.a, "k0": self.k0, "period": self.period,
                "components": self.components}


def build_action_table(model: ModelSpec, h_grid: Sequence[float], *, k0_method: str = "time",
                       horizon: float = K0_HORIZON, dt: float = K0_DT, tol: float = K0_TOL,
                       n: int = DEFAULT_NODES) -> ActionTable:
    """Tabulate a, k0 and the period at each energy of ``h_grid``.

    ``k0_method`` is "time" (Verlet time average) or "quadrature" (the
    loop-integral identity, much cheaper).
    """
    if k0_method not in ("time", "quadrature"):
        raise ValueError(f"unknown k0 method {k0_method!r}")
    rows = []
    for h in np.asarray(h_grid, dtype=float):
        try:
            loop = _loop_1d(model, h, n)
            if k0_method == "time":
                k0 = k0_time_average(model, h, horizon=horizon, dt=dt, tol=tol)
            else:
                k0 = loop.mean_kinetic
        except (ActionError, ConvergenceError) as exc:
            raise TableError(float(h), exc) from exc
        rows.append((h, loop.total_action, k0, loop.period, loop.components))
    h, a, k0, period, comp = (np.array(c) for c in zip(*rows))
    return ActionTable(model.kind, h, a, k0, period, comp.astype(int))


def pendulum_grid(h_lo: float = -0.95, h_hi: float = 2.0, n: int = 40) -> np.ndarray:
    """Energies for a pendulum table, denser near the separatrix band.

    Roughly two thirds of the nodes cover the oscillation side, with the
    spacing shrinking geometrically toward h = 1; the rest cover rotation
    levels in the same way.
    """
    # nudge the band edges outward so rounding cannot put a node inside
    edge_lo, edge_hi = 1.0 - SEPARATRIX_BAND - 1e-9, 1.0 + SEPARATRIX_BAND + 1e-9
    if h_hi <= edge_lo:
        return np.linspace(h_lo, h_hi, n)
    n_osc = int(round(n * 2 / 3))
    t = np.linspace(0.0, 1.0, n_osc)
    osc = edge_lo - (edge_lo - h_lo) * (1.0 - t) ** 2
    t = np.linspace(0.0, 1.0, n - n_osc)
    rot = edge_hi + (h_hi - edge_hi) * t ** 2
    return np.concatenate([osc, rot])


@dataclass(frozen=True)
class RadialTable:
    """k0(H, L) samples for the central-force model and their L-average."""

    h: np.ndarray
    L: np.ndarray
    a1: np.ndarray
    k0: np.ndarray
    period: np.ndarray

    @property
    def k0app(self) -> PiecewiseLinear:
        return PiecewiseLinear(self.h, self.k0.mean(axis=1))

    def spread(self) -> np.ndarray:
        """max_L k0 - min_L k0 at each energy."""
        return self.k0.max(axis=1) - self.k0.min(axis=1)


DEFAULT_L_FRACTIONS = tuple((j + 0.5) / 10 for j in range(10))


def build_radial_table(model: ModelSpec, h_grid: Sequence[float],
                       l_fractions: Sequence[float] = DEFAULT_L_FRACTIONS, *,
                       k0_method: str = "time", horizon: float = K0_HORIZON,
                       dt: float = K0_DT, tol: float = K0_TOL,
                       n: int = DEFAULT_NODES) -> RadialTable:
    """k0 at energies ``h_grid`` and L = f * L_max(H) for each fraction f in (0, 1)."""
    _require_central(model)
    fr = np.asarray(l_fractions, dtype=float)
    if np.any(fr <= 0) or np.any(fr >= 1):
        raise ValueError("L fractions must lie strictly between 0 and 1")
    hs = np.asarray(h_grid, dtype=float)
    Ls = np.empty((hs.size, fr.size))
    a1 = np.empty_like(Ls)
    k0 = np.empty_like(Ls)
    per = np.empty_like(Ls)
    for i, h in enumerate(hs):
        for j, f in enumerate(fr):
            L = f * max_angular_momentum(h)
            try:
                loop = _radial_loop(h, L, n)
                if k0_method == "time":
                    k = k0_time_average(model, h, L, horizon=horizon, dt=dt, tol=tol)
                else:
                    k = loop.mean_kinetic
            except (ActionError, ConvergenceError) as exc:
                raise TableError((float(h), L), exc) from exc
            Ls[i, j], a1[i, j], k0[i, j], per[i, j] = L, loop.action, k, loop.period
    return RadialTable(hs, Ls, a1, k0, per)


# ---------------------------------------------------------------- k, W, tau

def _n_dof(table: ActionTable, N: int | None) -> int:
    return table.N if N is None else int(N)


def k_of_a(a, table: ActionTable, beta: float, N: int | None = None):
    """k(a) = k0(a) - N/beta."""
    return table.k0_of_a(a) - _n_dof(table, N) / beta


def _k_knots(table: ActionTable, beta: float, N: int | None):
    return table.a, table.k0 - _n_dof(table, N) / beta


def _segment_integrals(a, k):
    """Exact ∫ k(s)/s ds over each knot interval for k linear between knots."""
    slope = np.diff(k) / np.diff(a)
    return (k[:-1] - slope * a[:-1]) * np.log(a[1:] / a[:-1]) + slope * np.diff(a)


def W_of_a(a, table: ActionTable, beta: float, N: int | None = None):
    """W(a) = ∫ k(s)/s ds from the lowest tabulated action (where W = 0)."""
    ka, kk = _k_knots(table, beta, N)
    if ka[0] <= 0:
        raise ValueError("W needs a table whose lowest action is positive")
    x = np.asarray(a, dtype=float)
    lo, hi = ka[0], ka[-1]
    if np.any(~(x >= lo)) or np.any(~(x <= hi)):
        raise RangeError(f"action outside [{lo:.6g}, {hi:.6g}]")
    cum = np.concatenate([[0.0], np.cumsum(_segment_integrals(ka, kk))])
    i = np.clip(np.searchsorted(ka, x, side="right") - 1, 0, ka.size - 2)
    slope = (kk[i + 1] - kk[i]) / (ka[i + 1] - ka[i])
    part = (kk[i] - slope * ka[i]) * np.log(x / ka[i]) + slope * (x - ka[i])
    out = cum[i] + part
    return float(out) if out.ndim == 0 else out


def _sign_changes(table: ActionTable, beta: float, N: int | None, upward: bool) -> list[float]:
    ka, kk = _k_knots(table, beta, N)
    k = lambda x: float(np.interp(x, ka, kk))  # noqa: E731
    roots = []
    for i in range(ka.size - 1):
        lo, hi = kk[i], kk[i + 1]
        ok = (lo < 0 <= hi) if upward else (lo > 0 >= hi)
        if not ok:
            continue
        if hi == 0.0:
            roots.append(float(ka[i + 1]))
            continue
        roots.append(brentq(k, ka[i], ka[i + 1], xtol=1e-10, rtol=1e-15))
    # a zero landing exactly on a knot is recorded once
    return sorted(set(roots))


def find_W_minimizers(table: ActionTable, beta: float, N: int | None = None) -> list[float]:
    """Zeros of k where it changes sign from negative to positive."""
    return _sign_changes(table, beta, N, upward=True)


def find_W_maximizers(table: ActionTable, beta: float, N: int | None = None) -> list[float]:
    return _sign_changes(table, beta, N, upward=False)


def count_sign_changes(table: ActionTable, beta: float, N: int | None = None) -> int:
    return len(find_W_minimizers(table, beta, N)) + len(find_W_maximizers(table, beta, N))


def tau_of_H(h, k0app: PiecewiseLinear):
    """tau(H) = exp(∫ ds / k0app(s)) from the left end of the interpolant.

    Exact for the piecewise-linear k0app.
    """
    x, y = k0app.x, k0app.y
    if np.any(y <= 0):
        raise ValueError("k0app must be positive on its whole range")
    h = k0app._check(h)
    dx = np.diff(x)
    slope = np.diff(y) / dx
    with np.errstate(divide="ignore", invalid="ignore"):
        seg = np.where(np.abs(slope) > 1e-14 * np.abs(y[:-1]),
                       np.log(y[1:] / y[:-1]) / slope, dx / y[:-1])
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    i = np.clip(np.searchsorted(x, h, side="right") - 1, 0, x.size - 2)
    yi = y[i] + slope[i] * (h - x[i])
    with np.errstate(divide="ignore", invalid="ignore"):
        part = np.where(np.abs(slope[i]) > 1e-14 * np.abs(y[i]),
                        np.log(yi / y[i]) / slope[i], (h - x[i]) / y[i])
    out = np.exp(cum[i] + part)
    return float(out) if np.ndim(out) == 0 else out


def H_of_tau(tau: float, k0app: PiecewiseLinear) -> float:
    """Inverse of :func:`tau_of_H` by bracketed root finding."""
    lo, hi = k0app.domain
    t_lo, t_hi = 1.0, tau_of_H(hi, k0app)
    if not t_lo <= tau <= t_hi:
        raise RangeError(f"tau {tau} outside [1, {t_hi:.6g}]")
    return brentq(lambda h: tau_of_H(h, k0app) - tau, lo, hi, xtol=1e-14, rtol=1e-15)


def harmonic_angle_map(theta, a):
    """(q, p) on the harmonic-oscillator torus of action a, angle period 1."""
    rad = np.sqrt(a / np.pi)
    return rad * np.cos(2 * np.pi * theta), -rad * np.sin(2 * np.pi * theta)


def exact_symplectic_average(a: float, n: int = 64) -> float:
    """∫_0^1 (dq/dθ) p dθ for the harmonic angle map, by the trapezoid rule
    (exact for trigonometric polynomials of degree < n)."""
    theta = np.arange(n) / n
    q_theta = -2 * np.pi * np.sqrt(a / np.pi) * np.sin(2 * np.pi * theta)
    _, p = harmonic_angle_map(theta, a)
    return float(np.mean(q_theta * p))
