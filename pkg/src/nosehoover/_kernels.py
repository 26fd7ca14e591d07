"""Compiled inner loops.

Everything here works on flat float arrays and an integer model code so
that numba can compile it once. The public modules wrap these with
dataclasses and validation.
"""

import math

import numpy as np
from numba import njit

HARMONIC = 0
PENDULUM = 1
CENTRAL = 2

FAIL_NONE = -1


@njit(cache=True)
def grad_v(kind, q, out):
    if kind == HARMONIC:
        for i in range(q.shape[0]):
            out[i] = q[i]
    elif kind == PENDULUM:
        out[0] = math.sin(q[0])
    else:
        r2 = 0.0
        for i in range(q.shape[0]):
            r2 += q[i] * q[i]
        c = 2.0 + 4.0 * r2
        for i in range(q.shape[0]):
            out[i] = c * q[i]


@njit(cache=True)
def potential(kind, q):
    if kind == HARMONIC:
        return 0.5 * q[0] * q[0]
    elif kind == PENDULUM:
        return -math.cos(q[0])
    r2 = 0.0
    for i in range(q.shape[0]):
        r2 += q[i] * q[i]
    return r2 + r2 * r2


@njit(cache=True)
def kinetic2(p):
    s = 0.0
    for i in range(p.shape[0]):
        s += p[i] * p[i]
    return s


@njit(cache=True)
def _thermostat(n_dof, beta, Q, p, xi, h):
    target = n_dof / beta
    xi += 0.5 * h * (kinetic2(p) - target)
    scale = math.exp(-(xi / Q) * h)
    for i in range(p.shape[0]):
        p[i] *= scale
    xi += 0.5 * h * (kinetic2(p) - target)
    return xi


@njit(cache=True)
def _kick(kind, q, p, h, g):
    grad_v(kind, q, g)
    for i in range(p.shape[0]):
        p[i] -= h * g[i]


@njit(cache=True)
def _drift(q, p, h):
    for i in range(q.shape[0]):
        q[i] += h * p[i]


@njit(cache=True)
def nh_step_inplace(kind, beta, Q, q, p, xi, dt, g):
    n = q.shape[0]
    half = 0.5 * dt
    xi = _thermostat(n, beta, Q, p, xi, half)
    _kick(kind, q, p, half, g)
    _drift(q, p, dt)
    _kick(kind, q, p, half, g)
    xi = _thermostat(n, beta, Q, p, xi, half)
    return xi


@njit(cache=True)
def verlet_step_inplace(kind, q, p, dt, g):
    half = 0.5 * dt
    _kick(kind, q, p, half, g)
    _drift(q, p, dt)
    _kick(kind, q, p, half, g)


@njit(cache=True)
def _finite(q, p, xi):
    if not math.isfinite(xi):
        return False
    for i in range(q.shape[0]):
        if not (math.isfinite(q[i]) and math.isfinite(p[i])):
            return False
    return True


@njit(cache=True)
def run(kind, beta, Q, q0, p0, xi0, dt, n_steps, stride, thermostat):
    """Fixed-step loop. ``thermostat=False`` runs plain Verlet with xi frozen."""
    n = q0.shape[0]
    n_samples = n_steps // stride + 1
    qs = np.empty((n_samples, n))
    ps = np.empty((n_samples, n))
    xis = np.empty(n_samples)
    q = q0.copy()
    p = p0.copy()
    xi = xi0
    g = np.empty(n)
    qs[0] = q
    ps[0] = p
    xis[0] = xi
    j = 1
    for i in range(1, n_steps + 1):
        if thermostat:
            xi = nh_step_inplace(kind, beta, Q, q, p, xi, dt, g)
        else:
            verlet_step_inplace(kind, q, p, dt, g)
        if not _finite(q, p, xi):
            return qs[:j], ps[:j], xis[:j], i
        if i % stride == 0:
            qs[j] = q
            ps[j] = p
            xis[j] = xi
            j += 1
    return qs, ps, xis, FAIL_NONE


@njit(cache=True)
def _bump(s):
    if s <= 0.0 or s >= 1.0:
        return 0.0
    return math.exp(-1.0 / (s * (1.0 - s)))


@njit(cache=True)
def kinetic_average(kind, q0, p0, dt, n_steps, smooth):
    """Time averages of |p|^2 over the full run and over its first half.

    With ``smooth`` the samples are weighted by a C-infinity bump that
    vanishes at both ends of the window, which removes the partial-period
    bias of the plain running mean.
    """
    n = q0.shape[0]
    q = q0.copy()
    p = p0.copy()
    g = np.empty(n)
    half_steps = n_steps // 2
    num_full = 0.0
    den_full = 0.0
    num_half = 0.0
    den_half = 0.0
    for i in range(n_steps + 1):
        if i > 0:
            verlet_step_inplace(kind, q, p, dt, g)
        k = kinetic2(p)
        if smooth:
            w = _bump(i / n_steps)
        else:
            w = 0.5 if (i == 0 or i == n_steps) else 1.0
        num_full += w * k
        den_full += w
        if i <= half_steps:
            if smooth:
                wh = _bump(i / half_steps)
            else:
                wh = 0.5 if (i == 0 or i == half_steps) else 1.0
            num_half += wh * k
            den_half += wh
    return num_full / den_full, num_half / den_half


@njit(cache=True)
def section_run(kind, beta, Q, q0, p0, xi0, dt, n_crossings, max_gap, thermostat):
    """Integrate until ``n_crossings`` upward passages of q through 0 mod 2pi.

    Returns, per crossing, the step index and the bracketing states
    (q, p, xi) before and after the step. The status is 0 on success,
    1 on a non-finite state and 2 when more than ``max_gap`` steps pass
    without a crossing.
    """
    before = np.empty((n_crossings, 3))
    after = np.empty((n_crossings, 3))
    steps = np.empty(n_crossings, dtype=np.int64)
    q = q0.copy()
    p = p0.copy()
    xi = xi0
    g = np.empty(1)
    found = 0
    i = 0
    last = 0
    two_pi = 2.0 * math.pi
    while found < n_crossings:
        q_old = q[0]
        p_old = p[0]
        xi_old = xi
        if thermostat:
            xi = nh_step_inplace(kind, beta, Q, q, p, xi, dt, g)
        else:
            verlet_step_inplace(kind, q, p, dt, g)
        i += 1
        if not _finite(q, p, xi):
            return before[:found], after[:found], steps[:found], 1, i
        # upward passage through some multiple of 2pi within this step
        m = math.floor(q[0] / two_pi)
        if q_old < two_pi * m <= q[0]:
            before[found, 0] = q_old
            before[found, 1] = p_old
            before[found, 2] = xi_old
            after[found, 0] = q[0]
            after[found, 1] = p[0]
            after[found, 2] = xi
            steps[found] = i
            found += 1
            last = i
        if i - last > max_gap:
            return before[:found], after[:found], steps[:found], 2, i
    return before, after, steps, 0, i


@njit(cache=True)
def symplectic_euler_run(knots_a, knots_k, a0, sigma0, alpha0, dt, n_steps, stride):
    """Symplectic Euler on sigma' = -alpha, alpha' = k(a0 e^sigma).

    Returns the sampled path and the index of the first step that left the
    tabulated action range (-1 if none).
    """
    n_samples = n_steps // stride + 1
    sig = np.empty(n_samples)
    alp = np.empty(n_samples)
    s = sigma0
    al = alpha0
    sig[0] = s
    alp[0] = al
    lo = knots_a[0]
    hi = knots_a[-1]
    j = 1
    for i in range(1, n_steps + 1):
        a = a0 * math.exp(s)
        if a < lo or a > hi:
            return sig[:j], alp[:j], i
        al = al + dt * np.interp(a, knots_a, knots_k)
        s = s - dt * al
        if i % stride == 0:
            sig[j] = s
            alp[j] = al
            j += 1
    return sig, alp, FAIL_NONE


@njit(cache=True)
def _rhs2d(knots_h, knots_k0, two_over_beta, L, H, al):
    k0 = np.interp(H, knots_h, knots_k0)
    return -al * L, -al * k0, k0 - two_over_beta


@njit(cache=True)
def averaged2d_rk4_run(knots_h, knots_k0, beta, L0, H0, alpha0, dt, n_steps, stride):
    n_samples = n_steps // stride + 1
    out = np.empty((n_samples, 3))
    L = L0
    H = H0
    al = alpha0
    out[0, 0] = L
    out[0, 1] = H
    out[0, 2] = al
    c = 2.0 / beta
    lo = knots_h[0]
    hi = knots_h[-1]
    j = 1
    for i in range(1, n_steps + 1):
        k1 = _rhs2d(knots_h, knots_k0, c, L, H, al)
        k2 = _rhs2d(knots_h, knots_k0, c, L + 0.5 * dt * k1[0], H + 0.5 * dt * k1[1],
                    al + 0.5 * dt * k1[2])
        k3 = _rhs2d(knots_h, knots_k0, c, L + 0.5 * dt * k2[0], H + 0.5 * dt * k2[1],
                    al + 0.5 * dt * k2[2])
        k4 = _rhs2d(knots_h, knots_k0, c, L + dt * k3[0], H + dt * k3[1], al + dt * k3[2])
        L += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        H += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        al += dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        if H < lo or H > hi:
            return out[:j], i
        if i % stride == 0:
            out[j, 0] = L
            out[j, 1] = H
            out[j, 2] = al
            j += 1
    return out, FAIL_NONE
