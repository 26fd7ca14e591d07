import math

import numpy as np
import pytest
from scipy.integrate import quad

from nosehoover import actionlib as al
from nosehoover.interp import PiecewiseLinear, RangeError
from nosehoover.models import Kind, ModelSpec

PEND = ModelSpec("pendulum")
HARM = ModelSpec("harmonic")
CENT = ModelSpec("central")


def _loop_quad(v, lo, hi):
    val, _ = quad(lambda x: math.sqrt(max(2.0 * v(x), 0.0)), lo, hi, epsabs=0, epsrel=1e-13,
                  limit=200)
    return 2.0 * val


def _period_quad(v, lo, hi):
    val, _ = quad(lambda x: 1.0 / math.sqrt(2.0 * v(x)), lo, hi, epsabs=0, epsrel=1e-12,
                  limit=400)
    return 2.0 * val


@pytest.mark.parametrize("h", [-0.9, -0.3, 0.125, 0.6, 0.98])
def test_pendulum_oscillation_action_against_quad(h):
    qm = math.acos(-h)
    ref = _loop_quad(lambda q: h + math.cos(q), -qm, qm)
    assert al.action_1d(PEND, h) == pytest.approx(ref, rel=1e-11)


@pytest.mark.parametrize("h", [1.01, 1.5, 2.0, 3.5])
def test_pendulum_rotation_counts_both_branches(h):
    one = 0.5 * _loop_quad(lambda q: h + math.cos(q), -math.pi, math.pi)
    assert al.action_1d(PEND, h) == pytest.approx(2 * one, rel=1e-11)
    loop = al._loop_1d(PEND, h, 256)
    assert loop.components == 2
    assert loop.period == pytest.approx(
        0.5 * _period_quad(lambda q: h + math.cos(q), -math.pi, math.pi), rel=1e-10)


def test_frozen_pendulum_actions():
    frozen = {0.125: 7.718625262651132, 0.98: 15.664594742325203, 2.0: 24.71409638109418,
              1.002: 16.042717287272225}
    for h, a in frozen.items():
        assert al.action_1d(PEND, h, check_band=False) == pytest.approx(a, rel=1e-13)


def test_separatrix_limits_and_band():
    assert al.action_1d(PEND, 1 - 1e-10, check_band=False) == pytest.approx(16.0, abs=1e-7)
    # two rotation branches enclose the same area as the separatrix eye
    assert al.action_1d(PEND, 1 + 1e-10, check_band=False) == pytest.approx(16.0, abs=1e-7)
    for h in (0.996, 1.0, 1.004):
        with pytest.raises(al.ActionError):
            al.action_1d(PEND, h)
    with pytest.raises(al.ActionError):
        al.action_1d(PEND, -1.5)
    assert al.action_1d(PEND, -1.0) == 0.0


@pytest.mark.parametrize("h", [1e-3, 0.5, 1.0, 7.0])
def test_harmonic_action_and_period_exact(h):
    assert al.action_1d(HARM, h) == pytest.approx(2 * math.pi * h, rel=1e-13)
    assert al.orbit_period(HARM, h) == pytest.approx(2 * math.pi, rel=1e-13)
    assert al.k0_quadrature(HARM, h) == pytest.approx(h, rel=1e-13)


@pytest.mark.parametrize("h", [0.2, 1.3, 4.0])
def test_central_line_action_against_quad(h):
    xm = math.sqrt((math.sqrt(1 + 4 * h) - 1) / 2)
    ref = _loop_quad(lambda x: h - x * x - x ** 4, -xm, xm)
    assert al.action_1d(CENT, h) == pytest.approx(ref, rel=1e-11)


@pytest.mark.parametrize("h,f", [(0.3, 0.2), (1.3, 0.5), (3.0, 0.9)])
def test_radial_action_and_period_against_quad(h, f):
    L = f * al.max_angular_momentum(h)
    rm, rp = al.radial_turning_points(h, L)

    def v(r):
        return h - 0.5 * L * L / (r * r) - r * r - r ** 4
    assert abs(v(rm)) < 1e-12 and abs(v(rp)) < 1e-12
    assert al.radial_action(CENT, h, L) == pytest.approx(_loop_quad(v, rm, rp), rel=1e-10)
    assert al.orbit_period(CENT, h, L) == pytest.approx(_period_quad(v, rm, rp), rel=1e-9)


def test_circular_orbit_quantities():
    L = 0.7
    u = al.circular_u(L)
    assert 2 * u * u + 4 * u ** 3 == pytest.approx(L * L, rel=1e-14)
    h = al.circular_energy(L)
    assert al.max_angular_momentum(h) == pytest.approx(L, rel=1e-12)
    assert al.radial_action(CENT, h, L) == 0.0
    with pytest.raises(al.ActionError):
        al.radial_action(CENT, h - 0.1, L)
    with pytest.raises(al.ActionError):
        al.radial_action(PEND, 1.0, 0.5)


@pytest.mark.parametrize("h", [-0.5, 0.98, 1.3])
def test_pendulum_k0_time_average_matches_quadrature(h):
    assert al.k0_time_average(PEND, h) == pytest.approx(al.k0_quadrature(PEND, h), rel=1e-3)


def test_radial_k0_time_average_matches_quadrature():
    got = al.k0_time_average(CENT, 1.3, 0.5)
    assert got == pytest.approx(al.k0_quadrature(CENT, 1.3, 0.5), rel=1e-3)
    assert got == pytest.approx(1.48178668, rel=1e-6)


def test_k0_time_average_convergence_guard():
    with pytest.raises(al.ConvergenceError):
        al.k0_time_average(PEND, 0.5, horizon=3.0, smooth=False, tol=1e-8)


def test_level_set_point_lies_on_level():
    from nosehoover.models import PhaseState, angular_momentum, hamiltonian
    q, p = al.level_set_point(CENT, 2.0, 0.8)
    s = PhaseState(q, p)
    assert hamiltonian(CENT, s) == pytest.approx(2.0, rel=1e-13)
    assert angular_momentum(s) == pytest.approx(0.8, rel=1e-13)


def test_action_table_checks_and_lookups(pendulum_quad_table):
    tab = pendulum_quad_table
    assert tab.h.size == 40 and tab.N == 1
    assert np.all(np.abs(tab.h - 1) >= al.SEPARATRIX_BAND)
    assert np.all(np.diff(tab.a) > 0)
    assert tab.a_of_h(tab.h[3]) == tab.a[3]
    assert tab.h_of_a(tab.a[7]) == pytest.approx(tab.h[7])
    assert set(tab.columns()) >= {"h", "a", "k0", "period"}
    rot = tab.h > 1
    # per-branch average: a / (2 T) on rotation levels, a / T on oscillation
    assert np.allclose(tab.k0[rot], tab.a[rot] / (2 * tab.period[rot]), rtol=1e-12)
    assert np.allclose(tab.k0[~rot], tab.a[~rot] / tab.period[~rot], rtol=1e-12)
    with pytest.raises(ValueError):
        al.ActionTable(Kind.PENDULUM, tab.h[::-1], tab.a, tab.k0, tab.period, tab.components)
    with pytest.raises(al.TableError):
        al.build_action_table(PEND, [0.5, 1.0], k0_method="quadrature")
    with pytest.raises(ValueError):
        al.build_action_table(PEND, [0.5], k0_method="guess")


def test_pendulum_grid_layout():
    g = al.pendulum_grid()
    assert g.size == 40 and np.all(np.diff(g) > 0)
    assert np.sum(g < 1) == 27
    assert g[0] == -0.95 and g[-1] == pytest.approx(2.0)
    assert np.all(np.abs(g - 1) > al.SEPARATRIX_BAND)


def test_W_is_the_integral_of_k_over_a(pendulum_quad_table):
    tab = pendulum_quad_table
    for a in (5.0, 12.0, 16.1, 22.0):
        ref, _ = quad(lambda s: al.k_of_a(s, tab, 1.0) / s, tab.a[0], a, points=tab.a[1:-1],
                      epsabs=1e-13, epsrel=1e-12, limit=400)
        assert al.W_of_a(a, tab, 1.0) == pytest.approx(ref, rel=1e-9, abs=1e-11)
    assert al.W_of_a(tab.a[0], tab, 1.0) == 0.0
    with pytest.raises(RangeError):
        al.W_of_a(tab.a[-1] * 1.01, tab, 1.0)


def test_W_critical_points_on_quadrature_table(pendulum_quad_table):
    mins = al.find_W_minimizers(pendulum_quad_table, 1.0)
    maxs = al.find_W_maximizers(pendulum_quad_table, 1.0)
    assert len(mins) == 2 and len(maxs) == 1
    assert mins[0] < maxs[0] < mins[1]
    assert al.count_sign_changes(pendulum_quad_table, 1.0) == 3
    for m in mins + maxs:
        assert abs(al.k_of_a(m, pendulum_quad_table, 1.0)) < 1e-12


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
def test_harmonic_W_minimizer_is_two_pi_over_beta(beta):
    tab = al.build_action_table(HARM, np.linspace(0.05, 5.0, 40), k0_method="quadrature")
    mins = al.find_W_minimizers(tab, beta)
    assert len(mins) == 1
    assert mins[0] == pytest.approx(2 * math.pi / beta, rel=1e-12)


def test_tau_is_exponential_integral_of_inverse_k0():
    k0app = PiecewiseLinear([0.1, 0.5, 1.5, 4.0], [0.2, 0.6, 1.1, 3.0])
    for h in (0.1, 0.3, 1.0, 3.7):
        ref, _ = quad(lambda s: 1.0 / k0app(s), 0.1, h, points=[0.5, 1.5], epsabs=1e-14)
        assert al.tau_of_H(h, k0app) == pytest.approx(math.exp(ref), rel=1e-12)
        assert al.H_of_tau(al.tau_of_H(h, k0app), k0app) == pytest.approx(h, rel=1e-12)
    flat = PiecewiseLinear([0.0, 2.0], [2.0, 2.0])
    assert al.tau_of_H(1.0, flat) == pytest.approx(math.exp(0.5), rel=1e-15)
    with pytest.raises(RangeError):
        al.H_of_tau(0.5, k0app)
    with pytest.raises(ValueError):
        al.tau_of_H(1.0, PiecewiseLinear([0.0, 2.0], [0.0, 1.0]))


def test_symplectic_angle_map_recovers_action():
    for a in (0.3, 3.0, 40.0):
        assert al.exact_symplectic_average(a) == pytest.approx(a, rel=1e-12)
    q, p = al.harmonic_angle_map(np.linspace(0, 1, 7), 2.0)
    assert np.allclose(0.5 * (q * q + p * p), 2.0 / (2 * math.pi))


def test_radial_table_quadrature():
    tab = al.build_radial_table(CENT, [0.5, 2.0], (0.25, 0.75), k0_method="quadrature")
    assert tab.k0.shape == (2, 2)
    assert np.all(tab.spread() >= 0)
    assert tab.k0app(1.0) == pytest.approx(np.interp(1.0, tab.h, tab.k0.mean(axis=1)))
    with pytest.raises(ValueError):
        al.build_radial_table(CENT, [1.0], (0.0, 0.5))
