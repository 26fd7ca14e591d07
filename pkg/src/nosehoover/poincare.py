"""Return map of the thermostatted pendulum on the section q = 0 mod 2pi.

Crossings are taken in the direction q' > 0. Each crossing is located
within one integrator step and refined by bisection on the cubic Hermite
interpolant of the step, built from the end states and the vector field
there, so the main trajectory is never re-stepped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .actionlib import ActionError, ActionTable, W_of_a, action_1d, find_W_maximizers
from .integrators import IntegrationError
from .models import Kind, ModelSpec, ThermostatState

SECTION_TOL = 1e-9
MAX_GAP_STEPS = 10 ** 6


class StallError(RuntimeError):
    """No section crossing within the allowed number of steps."""


@dataclass(frozen=True)
class SectionCrossing:
    t: float
    a: float
    alpha: float
    h: float
    q: float
    p: float
    xi: float


@dataclass(frozen=True)
class SectionRun:
    crossings: list
    skipped: int
    """Crossings dropped because their energy fell inside the separatrix band."""
    steps: int


def _field(model: ModelSpec, z):
    q, p, xi = z
    return np.array([p, -math.sin(q) - xi / model.Q * p, p * p - 1.0 / model.beta])


def _hermite(z0, z1, f0, f1, dt, s):
    """Cubic Hermite interpolant at fraction s of the step."""
    h00 = 2 * s ** 3 - 3 * s ** 2 + 1
    h10 = s ** 3 - 2 * s ** 2 + s
    h01 = -2 * s ** 3 + 3 * s ** 2
    h11 = s ** 3 - s ** 2
    return h00 * z0 + h10 * dt * f0 + h01 * z1 + h11 * dt * f1


def _refine(model: ModelSpec, before, after, dt, thermostat: bool):
    """Fraction of the step and interpolated state where q hits the section."""
    z0, z1 = np.asarray(before), np.asarray(after)
    m = math.floor(z1[0] / (2 * math.pi))
    shift = 2 * math.pi * m
    z0 = z0 - [shift, 0, 0]
    z1 = z1 - [shift, 0, 0]
    f0, f1 = _field(model, z0), _field(model, z1)
    if not thermostat:
        f0[2] = f1[2] = 0.0
        f0[1] = -math.sin(z0[0])
        f1[1] = -math.sin(z1[0])
    g = lambda s: _hermite(z0, z1, f0, f1, dt, s)[0]  # noqa: E731
    if g(0.0) >= 0:
        s = 0.0
    elif g(1.0) <= 0:
        s = 1.0
    else:
        s = brentq(g, 0.0, 1.0, xtol=1e-15, rtol=1e-15)
    z = _hermite(z0, z1, f0, f1, dt, s)
    return s, z


def poincare_map(model: ModelSpec, init: ThermostatState, n_crossings: int, dt: float = 1e-3,
                 thermostat: bool = True, max_gap: int = MAX_GAP_STEPS) -> SectionRun:
    """Integrate the pendulum until ``n_crossings`` valid section crossings.

    With ``thermostat=False`` the constant-energy flow is used instead (a
    diagnostic mode; xi stays at its initial value and is not coupled).
    """
    if model.kind is not Kind.PENDULUM:
        raise ValueError("the section is defined for the pendulum")
    q0 = np.array(init.q, dtype=float)
    p0 = np.array(init.p, dtype=float)
    xi0 = float(init.xi) if thermostat else 0.0
    crossings: list[SectionCrossing] = []
    skipped = 0
    t_offset = 0.0
    total_steps = 0
    while len(crossings) < n_crossings:
        need = n_crossings - len(crossings)
        before, after, steps, status, n_done = _kernels.section_run(
            model.code, model.beta, model.Q, q0, p0, xi0, float(dt), need, int(max_gap),
            thermostat)
        for b, a, k in zip(before, after, steps):
            s, z = _refine(model, b, a, dt, thermostat)
            q, p, xi = float(z[0]), float(z[1]), float(z[2])
            h = 0.5 * p * p - math.cos(q)
            t = t_offset + (k - 1 + s) * dt
            try:
                act = action_1d(model, h)
            except ActionError:
                skipped += 1
                continue
            crossings.append(SectionCrossing(t, act, xi / math.sqrt(model.Q), h, q, p, xi))
        total_steps += n_done
        if status == 1:
            raise IntegrationError("non-finite state", t_offset + n_done * dt)
        if status == 2:
            raise StallError(f"no section crossing within {max_gap} steps")
        if len(crossings) < n_crossings:
            # resume from the end of this batch
            q0 = after[-1, :1].copy()
            p0 = after[-1, 1:2].copy()
            xi0 = float(after[-1, 2])
            t_offset += n_done * dt
    return SectionRun(crossings, skipped, total_steps)


def momentum_for_action(model: ModelSpec, a_target: float) -> float:
    """p > 0 with q = 0 whose energy has action ``a_target``."""
    lo, hi = model.min_energy, 1.0 - 0.005
    if not 0 < a_target < action_1d(model, hi):
        raise ActionError(f"action {a_target} outside the oscillation range")
    h = brentq(lambda e: action_1d(model, e) - a_target, lo + 1e-12, hi, xtol=1e-14)
    return math.sqrt(2.0 * (h - model.min_energy))


def G_window(table: ActionTable, beta: float, a0: float) -> float:
    """Depth of the well of G = alpha^2/2 + W(a) around the minimizer a0."""
    maxima = find_W_maximizers(table, beta)
    lo, hi = table.action_range
    a_lo = max([m for m in maxima if m < a0], default=lo)
    a_hi = min([m for m in maxima if m > a0], default=hi)
    return float(min(W_of_a(a_lo, table, beta), W_of_a(a_hi, table, beta))
                 - W_of_a(a0, table, beta))


def match_to_averaged(crossings, a0: float, table: ActionTable, beta: float) -> float:
    """max |G(a, alpha) - G(a_first, alpha_first)| over the crossings, in units
    of the G window depth around a0."""
    if not crossings:
        raise ValueError("no crossings")
    a = np.array([c.a for c in crossings])
    alpha = np.array([c.alpha for c in crossings])
    G = 0.5 * alpha ** 2 + W_of_a(a, table, beta)
    return float(np.max(np.abs(G - G[0])) / G_window(table, beta, a0))
