import json
import math

import numpy as np
import pytest
from scipy.integrate import quad

from nosehoover import actionlib as al
from nosehoover import csvio
from nosehoover import experiments as ex
from nosehoover.models import Kind, ModelSpec, gibbs_energy_density


@pytest.fixture(scope="module")
def pend_hist_table():
    return ex.histogram_table(Kind.PENDULUM, *ex.HISTOGRAM_H)


def test_reference_masses_against_quad(pend_hist_table):
    tab = pend_hist_table
    edges = np.array([-1.0, -0.4, 0.3, 0.9, 1.8])
    got = ex.reference_bin_masses(edges, tab, 1.0)
    for i in range(4):
        ref, _ = quad(lambda h: gibbs_energy_density(h, tab, 1.0), edges[i], edges[i + 1],
                      points=tab.h[(tab.h > edges[i]) & (tab.h < edges[i + 1])], limit=400)
        assert got[i] == pytest.approx(ref, rel=1e-9)


def test_gibbs_density_shape_on_pendulum(pend_hist_table):
    tab = pend_hist_table
    h = np.linspace(-1.0, 0.8, 200)
    rho = gibbs_energy_density(h, tab, 1.0)
    assert np.all(np.diff(rho) < 0)
    # one-sided secant slope at the table end: first order in the node spacing 0.03
    assert rho[0] == pytest.approx(math.e * 2 * math.pi, rel=5e-3)
    # a'(h) = T(h) diverges at the separatrix, so the density rises again below h = 1
    near = gibbs_energy_density(np.array([0.9, 0.99]), tab, 1.0)
    assert near[1] > near[0]
    full = gibbs_energy_density(tab.h, tab, 1.0)
    assert np.argmax(full) == 0
    with pytest.raises(ValueError):
        gibbs_energy_density(5.0, tab, 1.0)


def test_energy_histogram(pend_hist_table):
    rng_free = np.linspace(-0.9, 0.5, 1000)
    hist = ex.energy_histogram(rng_free, 20, pend_hist_table, 1.0, h_range=(-1.0, 2.0))
    assert hist.empirical.sum() == pytest.approx(1.0)
    assert hist.reference.sum() == pytest.approx(1.0)
    assert 0 < hist.tv_distance < 1
    assert hist.mass_below(2.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ex.energy_histogram([3.0], 10, pend_hist_table, 1.0, h_range=(-1.0, 2.0))
    with pytest.raises(ValueError):
        ex.energy_histogram([0.0], 10, pend_hist_table, 1.0, h_range=(-2.0, 2.0))
    with pytest.raises(ValueError):
        ex.energy_histogram([], 10, pend_hist_table, 1.0)


def test_sample_points_deterministic_and_spread():
    a = ex.sample_points(ModelSpec("central"))
    b = ex.sample_points(ModelSpec("central"))
    assert len(a) == 100
    assert all(np.array_equal(x.as_array(), y.as_array()) for x, y in zip(a, b))
    z = np.array([s.as_array() for s in a])
    assert np.all(np.abs(z[:, :-1]) <= 1) and np.all(np.abs(z[:, -1]) <= 2)
    assert np.ptp(z[:, 0]) > 1.8


def test_property_checks_all_pass():
    checks = ex.property_checks()
    assert {c.name for c in checks} >= {"divergence_pendulum1d", "perturbed_beta_centralforce2d",
                                        "symplectic_action_identity"}
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_config_validation():
    with pytest.raises(ValueError):
        ex.ExperimentConfig("fig7")
    with pytest.raises(ValueError):
        ex.ExperimentConfig("fig1", Q=0.0)
    with pytest.raises(ValueError):
        ex.ExperimentConfig("fig1", k0_method="guess")
    cfg = ex.ExperimentConfig("fig1")
    assert cfg.horizon(5e3, 5e4) == 5e3
    assert ex.ExperimentConfig("fig1", paper_scale=True).horizon(5e3, 5e4) == 5e4
    assert ex.ExperimentConfig("fig1", t_final=3.0, paper_scale=True).horizon(5e3, 5e4) == 3.0


def test_table_and_period_experiments_write_files(tmp_path):
    paths = ex.run_experiment(ex.ExperimentConfig("fig8", out=tmp_path, k0_method="quadrature"))
    assert {p.name for p in paths} == {"action_table.csv", "manifest.json"}
    man = json.loads((tmp_path / "fig8" / "manifest.json").read_text())
    assert man["separatrix_band"] == al.SEPARATRIX_BAND and man["paper_scale"] is False
    ex.run_experiment(ex.ExperimentConfig("fig12", out=tmp_path, k0_method="quadrature"))
    per = csvio.read(tmp_path / "fig12" / "period.csv")
    T1 = np.array(per["T1"])
    assert T1.size == 50
    assert np.allclose(T1, per["T1_return"], rtol=1e-6)


def test_short_invariant_experiment(tmp_path):
    res = ex.compute_experiment(ex.ExperimentConfig("fig2", t_final=5.0, stride=100))
    inv = res.files["invariants"]
    assert inv["G_rel"][0] == 1.0
    assert np.max(np.abs(inv["G_rel"] - 1)) < 1e-5
    assert res.manifest["Q"] == 1.0


def test_experiment_errors_name_the_stage():
    with pytest.raises(ex.ExperimentError) as err:
        ex.compute_experiment(ex.ExperimentConfig("fig1", t_final=1.0, init=((0.0, 0.0),
                                                                             (1.0, 0.0), 0.0)))
    assert err.value.stage == "fig1"
