"""Figure-level experiments and the energy-histogram diagnostic.

Each experiment returns named column sets (one per plotted curve) and a
manifest of every physical input, so the emitted files describe
themselves. Everything is deterministic; there is no random seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import actionlib as al
from . import averaged as av
from . import csvio
from .integrators import IntegratorConfig, integrate, nh_step
from .invariants import (angular_invariant_series, e1, e2, energy_series, g1,
                         measure_divergence)
from .models import Kind, ModelSpec, ThermostatState, gibbs_energy_density, hamiltonian
from .poincare import match_to_averaged, momentum_for_action, poincare_map
from .quadrature import gauss_legendre

FIG1_INIT = ((0.0, 0.5), (-1.5, 1.5), 0.0)
LINE_INIT = ((-0.5, 0.5), (-1.0, 1.0), 0.0)
PENDULUM_INIT = ((0.0,), (1.5,), 0.0)
SECTION_ACTIONS = (7.72, 10.72, 13.6)

DESK_T = 5e3
PAPER_T = 5e4
DESK_T_PENDULUM = 1e4
PAPER_T_PENDULUM = 5e5

PENDULUM_H = (-0.95, 2.0)
PENDULUM_NODES = 40
HISTOGRAM_H = (-1.0, 4.0)
RADIAL_H = (0.1, 4.0)
RADIAL_NODES = 10
LINE_H = (0.0, 8.0)

EXPERIMENTS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig8", "fig9", "fig10",
               "fig11", "fig12", "fig13", "histogram", "properties")


class ExperimentError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of one experiment; ``None`` fields take the figure's default."""

    id: str
    out: Path = Path("out")
    beta: float = 1.0
    Q: float | None = None
    dt: float = 1e-3
    t_final: float | None = None
    init: tuple | None = None
    paper_scale: bool = False
    k0_method: str = "time"
    stride: int | None = None
    n_crossings: int = 2000

    def __post_init__(self):
        if self.id not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.id!r}")
        if not self.beta > 0 or (self.Q is not None and not self.Q > 0):
            raise ValueError("beta and Q must be positive")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.k0_method not in ("time", "quadrature"):
            raise ValueError(f"unknown k0 method {self.k0_method!r}")

    def horizon(self, desk: float, paper: float) -> float:
        if self.t_final is not None:
            return self.t_final
        return paper if self.paper_scale else desk


@dataclass
class ExperimentResult:
    files: dict = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)

    def write(self, directory: Path) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = [csvio.write(directory / f"{name}.csv", cols) for name, cols in self.files.items()]
        man = directory / "manifest.json"
        with open(man, "w", newline="") as f:
            f.write(json.dumps(self.manifest, indent=2, sort_keys=True) + "\n")
        return paths + [man]


def state(init) -> ThermostatState:
    q, p, xi = init
    return ThermostatState(np.array(q, dtype=float), np.array(p, dtype=float), float(xi))


# ---------------------------------------------------------------- shared tables

@lru_cache(maxsize=8)
def pendulum_table(k0_method: str = "time", nodes: int = PENDULUM_NODES,
                   h_lo: float = PENDULUM_H[0], h_hi: float = PENDULUM_H[1]) -> al.ActionTable:
    return al.build_action_table(ModelSpec(Kind.PENDULUM), al.pendulum_grid(h_lo, h_hi, nodes),
                                 k0_method=k0_method)


@lru_cache(maxsize=4)
def radial_table(k0_method: str = "time", nodes: int = RADIAL_NODES) -> al.RadialTable:
    return al.build_radial_table(ModelSpec(Kind.CENTRAL), np.linspace(*RADIAL_H, nodes),
                                 k0_method=k0_method)


@lru_cache(maxsize=4)
def histogram_table(kind: Kind, h_lo: float, h_hi: float, nodes: int = 200) -> al.ActionTable:
    """Quadrature-only table (k0 unused) for reference energy densities."""
    model = ModelSpec(kind)
    if kind is Kind.PENDULUM:
        grid = al.pendulum_grid(h_lo, h_hi, nodes)
    else:
        grid = np.linspace(h_lo, h_hi, nodes)
    return al.build_action_table(model, grid, k0_method="quadrature")


# ---------------------------------------------------------------- histogram

@dataclass(frozen=True)
class EnergyHistogram:
    edges: np.ndarray
    empirical: np.ndarray
    reference: np.ndarray

    @property
    def tv_distance(self) -> float:
        return 0.5 * float(np.sum(np.abs(self.empirical - self.reference)))

    def mass_below(self, h: float, which: str = "reference") -> float:
        w = self.reference if which == "reference" else self.empirical
        return float(np.sum(w[self.edges[1:] <= h]))


def reference_bin_masses(edges: np.ndarray, table: al.ActionTable, beta: float,
                         n: int = 16) -> np.ndarray:
    """∫ exp(-beta h) a'(h) dh over each bin, with panels split at table nodes."""
    x, w = gauss_legendre(n)
    out = np.empty(edges.size - 1)
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        inner = table.h[(table.h > lo) & (table.h < hi)]
        brk = np.concatenate([[lo], inner, [hi]])
        total = 0.0
        for a, b in zip(brk[:-1], brk[1:]):
            half = 0.5 * (b - a)
            total += half * np.sum(w * gibbs_energy_density(a + half * (x + 1), table, beta))
        out[i] = total
    return out


def energy_histogram(energies, bins, table: al.ActionTable, beta: float,
                     h_range: tuple | None = None) -> EnergyHistogram:
    """Normalized histogram of sampled energies next to the Gibbs energy density."""
    energies = np.asarray(energies, dtype=float)
    if energies.size == 0:
        raise ValueError("no energy samples")
    if np.ndim(bins) == 0:
        lo, hi = h_range if h_range is not None else (table.h[0], table.h[-1])
        if not hi > lo:
            raise ValueError("empty bin range")
        edges = np.linspace(lo, hi, int(bins) + 1)
    else:
        edges = np.asarray(bins, dtype=float)
    if edges[0] < table.h[0] or edges[-1] > table.h[-1]:
        raise ValueError("bin range must lie inside the table range")
    if energies.min() < edges[0] or energies.max() > edges[-1]:
        raise ValueError("samples fall outside the bin range")
    counts, _ = np.histogram(energies, edges)
    ref = reference_bin_masses(edges, table, beta)
    return EnergyHistogram(edges, counts / counts.sum(), ref / ref.sum())


# ---------------------------------------------------------------- experiments

def _run(model: ModelSpec, init, dt: float, t_final: float, stride: int):
    cfg = IntegratorConfig(dt, t_final, stride)
    return integrate(model, "nh", state(init), cfg)


def _invariant_manifest(cfg: ExperimentConfig, model: ModelSpec, init, t_final, stride):
    return {"experiment": cfg.id, "model": model.kind.value, "beta": model.beta, "Q": model.Q,
            "dt": cfg.dt, "t_final": t_final, "sample_stride": stride,
            "init": {"q": list(init[0]), "p": list(init[1]), "xi": init[2]}}


def exp_invariants(cfg: ExperimentConfig, Q_default: float) -> ExperimentResult:
    """G and G1 relative to their initial values (figures 1 and 2)."""
    model = ModelSpec(Kind.CENTRAL, cfg.beta, cfg.Q or Q_default)
    init = cfg.init or FIG1_INIT
    T = cfg.horizon(DESK_T, PAPER_T)
    stride = cfg.stride or 1000
    tr = _run(model, init, cfg.dt, T, stride)
    G = angular_invariant_series(model, tr.q, tr.p, tr.xi)
    G1 = np.array([g1(model, s) for s in tr])
    res = ExperimentResult(manifest=_invariant_manifest(cfg, model, init, T, stride))
    res.files["invariants"] = {"t": tr.times, "G_rel": G / G[0], "G1_rel": G1 / G1[0]}
    return res


def exp_k0(cfg: ExperimentConfig) -> ExperimentResult:
    tab = radial_table(cfg.k0_method)
    k0app = tab.k0app
    res = ExperimentResult(manifest={"experiment": cfg.id, "model": Kind.CENTRAL.value,
                                     "k0_method": cfg.k0_method, "H_grid": tab.h.tolist(),
                                     "L_fractions": list(al.DEFAULT_L_FRACTIONS)})
    H = np.repeat(tab.h, tab.L.shape[1])
    res.files["k0_samples"] = {"H": H, "L": tab.L.ravel(), "k0": tab.k0.ravel(),
                               "a1": tab.a1.ravel()}
    res.files["k0app"] = {"H": k0app.x, "k0app": k0app.y, "spread": tab.spread()}
    return res


def exp_e1(cfg: ExperimentConfig) -> ExperimentResult:
    model = ModelSpec(Kind.CENTRAL, cfg.beta, cfg.Q or 100.0)
    init = cfg.init or FIG1_INIT
    T = cfg.horizon(DESK_T, PAPER_T)
    stride = cfg.stride or 1000
    k0app = radial_table(cfg.k0_method).k0app
    tr = _run(model, init, cfg.dt, T, stride)
    E1 = np.array([e1(model, s, k0app) for s in tr])
    res = ExperimentResult(manifest=_invariant_manifest(cfg, model, init, T, stride))
    res.manifest["k0_method"] = cfg.k0_method
    res.files["E1"] = {"t": tr.times, "E1_rel": E1 / E1[0]}
    return res


def exp_e2(cfg: ExperimentConfig) -> ExperimentResult:
    init = cfg.init or LINE_INIT
    T = cfg.horizon(DESK_T, PAPER_T)
    stride = cfg.stride or 1000
    k0app = radial_table(cfg.k0_method).k0app
    res = ExperimentResult(manifest={"experiment": cfg.id, "model": Kind.CENTRAL.value,
                                     "beta": cfg.beta, "dt": cfg.dt, "t_final": T,
                                     "sample_stride": stride, "k0_method": cfg.k0_method,
                                     "init": {"q": list(init[0]), "p": list(init[1]),
                                              "xi": init[2]}, "runs": {}})
    for Q in ([cfg.Q] if cfg.Q else [100.0, 1.0]):
        model = ModelSpec(Kind.CENTRAL, cfg.beta, Q)
        tr = _run(model, init, cfg.dt, T, stride)
        E2 = np.array([e2(model, s, k0app) for s in tr])
        name = f"E2_Q{Q:g}"
        res.files[name] = {"t": tr.times, "E2_rel": E2 / E2[0]}
        res.manifest["runs"][name] = {"Q": Q}
    return res


def exp_energy(cfg: ExperimentConfig, kind: Kind, init_default, desk, paper) -> ExperimentResult:
    model = ModelSpec(kind, cfg.beta, cfg.Q or 1.0)
    init = cfg.init or init_default
    T = cfg.horizon(desk, paper)
    stride = cfg.stride or 100
    tr = _run(model, init, cfg.dt, T, stride)
    H = energy_series(model, tr.q, tr.p)
    res = ExperimentResult(manifest=_invariant_manifest(cfg, model, init, T, stride))
    res.files["energy"] = {"t": tr.times, "H": H, "H_min": np.minimum.accumulate(H)}
    return res


def exp_table(cfg: ExperimentConfig) -> ExperimentResult:
    tab = pendulum_table(cfg.k0_method)
    res = ExperimentResult(manifest={"experiment": cfg.id, "model": Kind.PENDULUM.value,
                                     "k0_method": cfg.k0_method,
                                     "separatrix_band": al.SEPARATRIX_BAND,
                                     "nodes": PENDULUM_NODES, "h_range": list(PENDULUM_H)})
    res.files["action_table"] = tab.columns()
    return res


def _well(cfg: ExperimentConfig):
    tab = pendulum_table(cfg.k0_method)
    mins = al.find_W_minimizers(tab, cfg.beta)
    if not mins:
        raise ValueError("W has no minimizer on the table")
    return tab, av.SlowPotential.from_table(tab, cfg.beta, mins[0]), mins


def exp_level_curves(cfg: ExperimentConfig) -> ExperimentResult:
    tab, well, mins = _well(cfg)
    res = ExperimentResult(manifest={"experiment": cfg.id, "beta": cfg.beta, "a0": well.a0,
                                     "minimizers": mins, "dt": cfg.dt,
                                     "k0_method": cfg.k0_method,
                                     "a_start": list(SECTION_ACTIONS)})
    for a_start in SECTION_ACTIONS:
        a, alpha = av.level_curve(well, a_start, dt=cfg.dt, table=tab, beta=cfg.beta,
                                  stride=cfg.stride or 10)
        res.files[f"level_a{a_start:g}"] = {"a": a, "alpha": alpha,
                                            "G": 0.5 * alpha ** 2 + well.W(a)}
    return res


def exp_poincare(cfg: ExperimentConfig, Q_default: float) -> ExperimentResult:
    model = ModelSpec(Kind.PENDULUM, cfg.beta, cfg.Q or Q_default)
    tab, well, _ = _well(cfg)
    res = ExperimentResult(manifest={"experiment": cfg.id, "beta": model.beta, "Q": model.Q,
                                     "dt": cfg.dt, "n_crossings": cfg.n_crossings,
                                     "section": "q = 0 mod 2pi, dq/dt > 0", "runs": {}})
    for a_start in SECTION_ACTIONS:
        p0 = momentum_for_action(model, a_start)
        run = poincare_map(model, state(((0.0,), (p0,), 0.0)), cfg.n_crossings, cfg.dt)
        cr = run.crossings
        name = f"section_a{a_start:g}"
        res.files[name] = {"t": [c.t for c in cr], "a": [c.a for c in cr],
                           "alpha": [c.alpha for c in cr], "h": [c.h for c in cr]}
        res.manifest["runs"][name] = {"p0": p0, "skipped_band_crossings": run.skipped,
                                      "tube_thickness": match_to_averaged(cr, well.a0, tab,
                                                                          cfg.beta)}
    return res


def exp_period(cfg: ExperimentConfig) -> ExperimentResult:
    _, well, _ = _well(cfg)
    grid = av.T1_grid(well)
    T1 = np.array([av.period_T1(G, well) for G in grid])
    T1r = np.array([av.period_first_return(G, well) for G in grid])
    ww = [av.well_width_and_isochrony(G, well) for G in grid]
    res = ExperimentResult(manifest={"experiment": cfg.id, "beta": cfg.beta, "a0": well.a0,
                                     "G0": well.G0, "G_top": well.G_top,
                                     "k0_method": cfg.k0_method})
    res.files["period"] = {"G": grid, "T1": T1, "T1_return": T1r,
                           "width": [w for w, _ in ww], "isochrony_residual": [r for _, r in ww]}
    return res


def exp_histogram(cfg: ExperimentConfig, bins: int = 50) -> ExperimentResult:
    model = ModelSpec(Kind.PENDULUM, cfg.beta, cfg.Q or 1.0)
    init = cfg.init or PENDULUM_INIT
    T = cfg.horizon(DESK_T_PENDULUM, PAPER_T_PENDULUM)
    stride = cfg.stride or 10
    tr = _run(model, init, cfg.dt, T, stride)
    H = energy_series(model, tr.q, tr.p)
    tab = histogram_table(Kind.PENDULUM, *HISTOGRAM_H)
    hist = energy_histogram(H, bins, tab, model.beta, h_range=(-1.0, max(2.0, float(H.max()))))
    res = ExperimentResult(manifest=_invariant_manifest(cfg, model, init, T, stride))
    res.manifest.update({"bins": bins, "tv_distance": hist.tv_distance,
                         "reference_mass_below_-0.5": hist.mass_below(-0.5)})
    res.files["histogram"] = {"h_lo": hist.edges[:-1], "h_hi": hist.edges[1:],
                              "empirical": hist.empirical, "reference": hist.reference}
    return res


# ---------------------------------------------------------------- property suite

def sample_points(model: ModelSpec, n: int = 100, xi_scale: float = 2.0):
    """Deterministic quasi-random extended phase points (additive recurrence)."""
    dim = 2 * model.N + 1
    # generalized golden-ratio sequence
    phi = 2.0
    for _ in range(32):
        phi = (1 + phi) ** (1.0 / (dim + 1))
    alpha = (1.0 / phi) ** np.arange(1, dim + 1) % 1.0
    pts = (0.5 + np.outer(np.arange(1, n + 1), alpha)) % 1.0
    z = 2.0 * pts - 1.0
    z[:, -1] *= xi_scale
    return [ThermostatState.from_array(row) for row in z]


def perturbed_divergence_ratio(model: ModelSpec, s: ThermostatState, factor: float = 2.0) -> float:
    """|div(rho' f)| / rho' for the density at inverse temperature factor * beta.

    Measured relative to the density itself, so that points far out in
    phase space (where rho' is tiny) still count.
    """
    b = factor * model.beta
    rho = math.exp(-b * (hamiltonian(model, s) + s.xi ** 2 / (2.0 * model.Q)))
    return abs(measure_divergence(model, s, beta_density=b)) / rho


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    passed: bool


def property_checks() -> list[Check]:
    out = []
    for kind in Kind:
        model = ModelSpec(kind)
        pts = sample_points(model)
        div = float(max(abs(measure_divergence(model, s)) for s in pts))
        out.append(Check(f"divergence_{kind.value}", div, 1e-6, div < 1e-6))
        n_away = int(sum(perturbed_divergence_ratio(model, s) > 1e-3 for s in pts))
        out.append(Check(f"perturbed_beta_{kind.value}", n_away, 95, n_away >= 95))
        worst = 0.0
        for s in pts[:20]:
            back = nh_step(model, nh_step(model, s, 0.01), -0.01)
            worst = max(worst, float(np.max(np.abs(back.as_array() - s.as_array())
                                            / np.maximum(1.0, np.abs(s.as_array())))))
        out.append(Check(f"reversibility_{kind.value}", worst, 1e-12, worst < 1e-12))
    s_a = abs(al.exact_symplectic_average(3.0) - 3.0)
    out.append(Check("symplectic_action_identity", s_a, 1e-10, s_a < 1e-10))
    ho = abs(al.action_1d(ModelSpec(Kind.HARMONIC), 1.0) / (2 * math.pi) - 1)
    out.append(Check("harmonic_action", ho, 1e-8, ho < 1e-8))
    return out


def exp_properties(cfg: ExperimentConfig) -> ExperimentResult:
    checks = property_checks()
    res = ExperimentResult(manifest={"experiment": cfg.id})
    res.files["checks"] = {"name": [c.name for c in checks], "value": [c.value for c in checks],
                           "threshold": [c.threshold for c in checks],
                           "passed": [int(c.passed) for c in checks]}
    return res


_RUNNERS = {
    "fig1": lambda c: exp_invariants(c, 100.0),
    "fig2": lambda c: exp_invariants(c, 1.0),
    "fig3": exp_k0,
    "fig4": exp_e1,
    "fig5": exp_e2,
    "fig6": lambda c: exp_energy(c, Kind.CENTRAL, LINE_INIT, DESK_T, PAPER_T),
    "fig8": exp_table,
    "fig9": exp_level_curves,
    "fig10": lambda c: exp_poincare(c, 1e5),
    "fig11": lambda c: exp_poincare(c, 1.0),
    "fig12": exp_period,
    "fig13": lambda c: exp_energy(c, Kind.PENDULUM, PENDULUM_INIT, DESK_T_PENDULUM,
                                  PAPER_T_PENDULUM),
    "histogram": exp_histogram,
    "properties": exp_properties,
}


def compute_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    try:
        return _RUNNERS[cfg.id](cfg)
    except ExperimentError:
        raise
    except Exception as exc:
        raise ExperimentError(cfg.id, exc) from exc


def run_experiment(cfg: ExperimentConfig) -> list[Path]:
    """Compute one experiment and write its CSV files and manifest under out/id."""
    res = compute_experiment(cfg)
    res.manifest.setdefault("experiment", cfg.id)
    res.manifest["paper_scale"] = cfg.paper_scale
    return res.write(Path(cfg.out) / cfg.id)
