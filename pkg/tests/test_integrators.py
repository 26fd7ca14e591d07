import math

import numpy as np
import pytest

from nosehoover.integrators import (IntegrationError, IntegratorConfig, Trajectory, integrate,
                                    nh_step, rk4_path, run_nh, symplectic_euler_path,
                                    symplectic_euler_step, verlet_step)
from nosehoover.models import ModelSpec, PhaseState, ThermostatState, hamiltonian


def _flow_reference(model, s, t):
    """High-accuracy Nosé-Hoover solution from scipy's DOP853."""
    from scipy.integrate import solve_ivp
    n = model.N

    def rhs(_, z):
        q, p, xi = z[:n], z[n:2 * n], z[-1]
        from nosehoover.models import grad_potential
        return np.concatenate([p, -grad_potential(model, q) - xi / model.Q * p,
                               [p @ p - n / model.beta]])
    sol = solve_ivp(rhs, (0, t), s.as_array(), method="DOP853", rtol=1e-13, atol=1e-13)
    return sol.y[:, -1]


def test_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0.1, t_final=0.01)
    with pytest.raises(ValueError):
        IntegratorConfig(sample_stride=0)
    assert IntegratorConfig(1e-3, 1.0).n_steps == 1000


@pytest.mark.parametrize("kind", ["harmonic", "pendulum", "central"])
def test_nh_step_is_second_order(kind):
    model = ModelSpec(kind, beta=1.0, Q=2.0)
    n = model.N
    s0 = ThermostatState(np.full(n, 0.3), np.linspace(0.5, -0.7, n), 0.4)
    ref = _flow_reference(model, s0, 1.0)
    errs = []
    for dt in (0.02, 0.01):
        tr = run_nh(model, s0, dt, 1.0, stride=int(round(1.0 / dt)))
        errs.append(np.max(np.abs(tr.final.as_array() - ref)))
    assert 3.6 < errs[0] / errs[1] < 4.4


@pytest.mark.parametrize("kind", ["pendulum", "central"])
def test_nh_step_is_reversible(kind):
    model = ModelSpec(kind, Q=0.7)
    n = model.N
    s = ThermostatState(np.full(n, 0.2), np.full(n, -1.1), 0.9)
    z = s
    for _ in range(100):
        z = nh_step(model, z, 0.01)
    for _ in range(100):
        z = nh_step(model, z, -0.01)
    assert np.allclose(z.as_array(), s.as_array(), rtol=0, atol=1e-12)


def test_verlet_energy_error_is_bounded_and_second_order():
    model = ModelSpec("pendulum")
    s0 = PhaseState([0.0], [1.5])
    h0 = hamiltonian(model, s0)
    drifts = []
    for dt in (0.02, 0.01):
        tr = integrate(model, "verlet", s0, IntegratorConfig(dt, 200.0, 1))
        assert tr.xi is None
        H = 0.5 * tr.p[:, 0] ** 2 - np.cos(tr.q[:, 0])
        drifts.append(np.max(np.abs(H - h0)))
    assert drifts[0] < 1e-3
    assert 3.5 < drifts[0] / drifts[1] < 4.5


def test_single_steps_match_the_compiled_run():
    model = ModelSpec("central", Q=5.0)
    s = ThermostatState([0.0, 0.5], [-1.5, 1.5], 0.0)
    z = s
    for _ in range(50):
        z = nh_step(model, z, 1e-3)
    tr = integrate(model, "nh", s, IntegratorConfig(1e-3, 0.05, 50))
    assert np.array_equal(tr.final.as_array(), z.as_array())
    p = PhaseState([0.3], [0.1])
    y = p
    for _ in range(10):
        y = verlet_step(ModelSpec("pendulum"), y, 0.1)
    tr = integrate(ModelSpec("pendulum"), "verlet", p, IntegratorConfig(0.1, 1.0, 10))
    assert np.array_equal(tr.final.q, y.q) and np.array_equal(tr.final.p, y.p)


def test_thermostat_decouples_for_huge_Q():
    model = ModelSpec("pendulum", Q=1e12)
    s = ThermostatState([0.0], [1.0], 0.0)
    tr = run_nh(model, s, 1e-3, 10.0, stride=1000)
    assert abs(hamiltonian(model, tr.final) - hamiltonian(model, s)) < 1e-6


def test_integrate_rejects_bad_arguments_and_reports_blowup():
    model = ModelSpec("central")
    with pytest.raises(ValueError):
        integrate(model, "euler", ThermostatState([0, 0], [1, 0]), IntegratorConfig())
    with pytest.raises(TypeError):
        integrate(model, "nh", PhaseState([0, 0], [1, 0]), IntegratorConfig())
    with pytest.raises(ValueError):
        integrate(model, "nh", ThermostatState([0], [1]), IntegratorConfig())
    with pytest.raises(IntegrationError) as err:
        integrate(model, "verlet", PhaseState([3.0, 0.0], [0.0, 0.0]),
                  IntegratorConfig(0.5, 50.0))
    assert err.value.t > 0


def test_observers_see_every_sample():
    seen = []
    tr = integrate(ModelSpec("harmonic"), "nh", ThermostatState([1.0], [0.0]),
                   IntegratorConfig(0.01, 1.0, 10), observers=[lambda t, s: seen.append(t)])
    assert isinstance(tr, Trajectory)
    assert len(seen) == len(tr) == 11
    assert seen[-1] == pytest.approx(1.0)


def test_symplectic_euler_kernel_matches_python_step():
    # k(a) = 2 - a on knots wide enough to never leave the table
    ka, kk = np.array([0.1, 10.0]), np.array([1.9, -8.0])
    a0, sig0, alp0, dt = 2.0, 0.1, 0.0, 0.01
    sig, alp = symplectic_euler_path(ka, kk, a0, sig0, alp0, dt, 200, 200)

    def rhs(s):
        return 2.0 - a0 * math.exp(s)
    st = (sig0, alp0)
    for _ in range(200):
        st = symplectic_euler_step(rhs, st, dt)
    assert sig[-1] == pytest.approx(st[0], abs=1e-13)
    assert alp[-1] == pytest.approx(st[1], abs=1e-13)
    with pytest.raises(IntegrationError):
        symplectic_euler_path(ka, kk, a0, 3.0, 0.0, dt, 10)


def test_rk4_path_fourth_order():
    errs = [abs(rk4_path(lambda y: -y, [1.0], dt, int(1 / dt))[-1, 0] - math.exp(-1))
            for dt in (0.1, 0.05)]
    assert 14 < errs[0] / errs[1] < 18
