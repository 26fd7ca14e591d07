"""Command-line runner.

    nosehoover simulate   --model pendulum --Q 1 --t-final 100 --init 0,1.5,0 --out run
    nosehoover table      --model pendulum --out tab
    nosehoover averaged   --a-start 7.72 --out avg
    nosehoover poincare   --Q 1e5 --a-start 7.72 --n-crossings 500 --out sec
    nosehoover period     --out per
    nosehoover histogram  --out hist
    nosehoover experiment fig1 --out results
    nosehoover check

A plain-text configuration file (``--config``) holds ``key = value``
lines with the long option names (dashes or underscores); flags given on
the command line override it. Failures exit nonzero after printing one
line ``error: category=<name> message=<text>`` to stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import actionlib as al
from . import averaged as av
from . import experiments as ex
from .integrators import IntegrationError, IntegratorConfig, integrate
from .interp import RangeError
from .invariants import InvariantError, averaged_E, energy_series
from .models import Kind, ModelSpec
from .poincare import StallError, match_to_averaged, momentum_for_action, poincare_map

EXIT_CODES = {"usage": 2, "config": 3, "range": 4, "integration": 5, "convergence": 6,
              "io": 7, "check": 8, "internal": 9}


class CliError(Exception):
    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


def _categorize(exc: BaseException) -> str:
    if isinstance(exc, ex.ExperimentError):
        return _categorize(exc.cause)
    if isinstance(exc, CliError):
        return exc.category
    if isinstance(exc, (IntegrationError, StallError)):
        return "integration"
    if isinstance(exc, (al.ConvergenceError,)):
        return "convergence"
    if isinstance(exc, al.TableError):
        return _categorize(exc.cause)
    if isinstance(exc, (RangeError, al.ActionError, av.WellError, InvariantError)):
        return "range"
    if isinstance(exc, OSError):
        return "io"
    if isinstance(exc, ValueError):
        return "config"
    return "internal"


# ---------------------------------------------------------------- config

def read_config(path: str | Path) -> dict[str, str]:
    """``key = value`` lines; blank lines and ``#`` comments are ignored."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise CliError("io", f"cannot read config {path}: {exc.strerror}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError("config", f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def parse_init(text: str, n_dof: int) -> tuple:
    """``q1,..,qN,p1,..,pN,xi``; xi may be omitted (taken as 0)."""
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise CliError("config", f"bad --init {text!r}") from exc
    if len(vals) == 2 * n_dof:
        vals.append(0.0)
    if len(vals) != 2 * n_dof + 1 or not all(math.isfinite(v) for v in vals):
        raise CliError("config", f"--init needs {2 * n_dof} or {2 * n_dof + 1} finite numbers")
    return tuple(vals[:n_dof]), tuple(vals[n_dof:2 * n_dof]), vals[-1]


def _model_arg(text: str) -> Kind:
    try:
        return ModelSpec(text).kind
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"unknown model {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        msg = " ".join(message.split())
        self.exit(EXIT_CODES["usage"], f"error: category=usage message={msg}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--model", type=_model_arg, default=None)
    common.add_argument("--beta", type=float, default=None)
    common.add_argument("--Q", type=float, default=None)
    common.add_argument("--dt", type=float, default=None)
    common.add_argument("--t-final", type=float, default=None)
    common.add_argument("--init", default=None, help="q...,p...,xi")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--stride", type=int, default=None, help="store every k-th step")
    common.add_argument("--k0-method", choices=["time", "quadrature"], default=None)
    common.add_argument("--paper-scale", action="store_true", default=None,
                        help="use the long published horizons (hours)")

    p = _Parser(prog="nosehoover", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("simulate", parents=[common], help="integrate one trajectory")
    s.add_argument("--scheme", choices=["nh", "verlet"], default=None)
    t = sub.add_parser("table", parents=[common], help="action table a(h), k0, period")
    t.add_argument("--h-min", type=float, default=None)
    t.add_argument("--h-max", type=float, default=None)
    t.add_argument("--nodes", type=int, default=None)
    a = sub.add_parser("averaged", parents=[common], help="integrate the averaged system")
    a.add_argument("--a-start", type=float, default=None, help="1D: initial action")
    a.add_argument("--alpha", type=float, default=None)
    a.add_argument("--L", type=float, default=None, help="2D: angular momentum")
    a.add_argument("--H", type=float, default=None, help="2D: energy")
    pc = sub.add_parser("poincare", parents=[common], help="section crossings of the pendulum")
    pc.add_argument("--a-start", type=float, default=None)
    pc.add_argument("--n-crossings", type=int, default=None)
    sub.add_parser("period", parents=[common], help="period function of the averaged well")
    e = sub.add_parser("experiment", parents=[common], help="reproduce one figure's data")
    e.add_argument("id", choices=ex.EXPERIMENTS)
    e.add_argument("--n-crossings", type=int, default=None)
    h = sub.add_parser("histogram", parents=[common], help="energy histogram vs Gibbs density")
    h.add_argument("--bins", type=int, default=None)
    sub.add_parser("check", parents=[common], help="run the property suite")
    return p


DEFAULTS = {"model": None, "beta": 1.0, "Q": None, "dt": 1e-3, "t_final": None, "init": None,
            "out": "out", "stride": None, "k0_method": "time", "paper_scale": False,
            "scheme": "nh", "h_min": None, "h_max": None, "nodes": None, "a_start": None,
            "alpha": 0.0, "L": None, "H": None, "n_crossings": None, "bins": 50}
_CASTS = {"beta": float, "Q": float, "dt": float, "t_final": float, "stride": int,
          "h_min": float, "h_max": float, "nodes": int, "a_start": float, "alpha": float,
          "L": float, "H": float, "n_crossings": int, "bins": int,
          "model": lambda v: ModelSpec(v).kind,
          "paper_scale": lambda v: v.strip().lower() in ("1", "true", "yes", "on")}


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, then the config file, then explicit flags."""
    opts = dict(DEFAULTS)
    if args.config:
        for k, v in read_config(args.config).items():
            if k not in DEFAULTS:
                raise CliError("config", f"unknown config key {k!r}")
            try:
                opts[k] = _CASTS.get(k, str)(v)
            except ValueError as exc:
                raise CliError("config", f"bad value for {k}: {v!r}") from exc
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None:
            opts[k] = v
    return opts


def _write(out: Path, name: str, cols: dict, manifest: dict) -> list[Path]:
    res = ex.ExperimentResult({name: cols}, manifest)
    return res.write(out)


# ---------------------------------------------------------------- commands

def cmd_simulate(o: dict) -> list[Path]:
    kind = o["model"] or Kind.PENDULUM
    model = ModelSpec(kind, o["beta"], o["Q"] or 1.0)
    init = parse_init(o["init"], model.N) if o["init"] else (
        ex.PENDULUM_INIT if kind is Kind.PENDULUM else
        ex.FIG1_INIT if kind is Kind.CENTRAL else ((0.0,), (1.0,), 0.0))
    T = o["t_final"] or 100.0
    stride = o["stride"] or 10
    cfg = IntegratorConfig(o["dt"], T, stride)
    s0 = ex.state(init)
    tr = integrate(model, o["scheme"], s0, cfg)
    cols = {"t": tr.times}
    for i in range(model.N):
        cols[f"q{i + 1}"] = tr.q[:, i]
    for i in range(model.N):
        cols[f"p{i + 1}"] = tr.p[:, i]
    if tr.xi is not None:
        cols["xi"] = tr.xi
    cols["H"] = energy_series(model, tr.q, tr.p)
    man = {"command": "simulate", "model": kind.value, "beta": model.beta, "Q": model.Q,
           "scheme": o["scheme"], "dt": o["dt"], "t_final": T, "sample_stride": stride,
           "init": {"q": list(init[0]), "p": list(init[1]), "xi": init[2]}}
    return _write(Path(o["out"]), "trajectory", cols, man)


def cmd_table(o: dict) -> list[Path]:
    kind = o["model"] or Kind.PENDULUM
    model = ModelSpec(kind)
    n = o["nodes"] or ex.PENDULUM_NODES
    if kind is Kind.PENDULUM:
        grid = al.pendulum_grid(o["h_min"] if o["h_min"] is not None else ex.PENDULUM_H[0],
                                o["h_max"] if o["h_max"] is not None else ex.PENDULUM_H[1], n)
    else:
        grid = np.linspace(o["h_min"] if o["h_min"] is not None else 0.05,
                           o["h_max"] if o["h_max"] is not None else 4.0, n)
    tab = al.build_action_table(model, grid, k0_method=o["k0_method"])
    man = {"command": "table", "model": kind.value, "k0_method": o["k0_method"], "nodes": n,
           "separatrix_band": al.SEPARATRIX_BAND}
    return _write(Path(o["out"]), "action_table", tab.columns(), man)


def cmd_averaged(o: dict) -> list[Path]:
    kind = o["model"] or Kind.PENDULUM
    beta, dt = o["beta"], o["dt"]
    if kind is Kind.CENTRAL:
        k0app = ex.radial_table(o["k0_method"]).k0app
        L = o["L"] if o["L"] is not None else 0.75
        H = o["H"] if o["H"] is not None else 2.5625
        T = o["t_final"] or 100.0
        stride = o["stride"] or 100
        path = av.averaged_path_2d(k0app, beta, L, H, o["alpha"], dt, int(round(T / dt)),
                                   stride)
        E = [averaged_E(r[0], r[1], r[2], beta) for r in path]
        cols = {"t": np.arange(len(path)) * dt * stride, "L": path[:, 0], "H": path[:, 1],
                "alpha": path[:, 2], "E": E}
        man = {"command": "averaged", "model": kind.value, "beta": beta, "dt": dt,
               "t_final": T, "L0": L, "H0": H, "alpha0": o["alpha"]}
        return _write(Path(o["out"]), "averaged_2d", cols, man)
    if kind is Kind.HARMONIC:
        model = ModelSpec(kind)
        tab = al.build_action_table(model, np.linspace(0.05, 5.0, 60), k0_method="quadrature")
    else:
        tab = ex.pendulum_table(o["k0_method"])
    mins = al.find_W_minimizers(tab, beta)
    if not mins:
        raise CliError("range", "W has no minimizer on the table")
    well = av.SlowPotential.from_table(tab, beta, mins[0])
    a_start = o["a_start"] if o["a_start"] is not None else 7.72
    T = o["t_final"]
    a, alpha = av.level_curve(well, a_start, dt=dt, t_final=T, table=tab, beta=beta,
                              stride=o["stride"] or 10)
    cols = {"a": a, "alpha": alpha, "G": 0.5 * alpha ** 2 + well.W(a)}
    man = {"command": "averaged", "model": kind.value, "beta": beta, "dt": dt, "a0": well.a0,
           "a_start": a_start}
    return _write(Path(o["out"]), "averaged_1d", cols, man)


def cmd_poincare(o: dict) -> list[Path]:
    model = ModelSpec(Kind.PENDULUM, o["beta"], o["Q"] or 1e5)
    a_start = o["a_start"] if o["a_start"] is not None else 7.72
    n = o["n_crossings"] or 2000
    if o["init"]:
        init = parse_init(o["init"], 1)
    else:
        init = ((0.0,), (momentum_for_action(model, a_start),), 0.0)
    run = poincare_map(model, ex.state(init), n, o["dt"])
    cr = run.crossings
    tab = ex.pendulum_table(o["k0_method"])
    mins = al.find_W_minimizers(tab, model.beta)
    man = {"command": "poincare", "beta": model.beta, "Q": model.Q, "dt": o["dt"],
           "n_crossings": n, "init": {"q": list(init[0]), "p": list(init[1]), "xi": init[2]},
           "skipped_band_crossings": run.skipped}
    if mins:
        man["tube_thickness"] = match_to_averaged(cr, mins[0], tab, model.beta)
    cols = {"t": [c.t for c in cr], "a": [c.a for c in cr], "alpha": [c.alpha for c in cr],
            "h": [c.h for c in cr]}
    return _write(Path(o["out"]), "crossings", cols, man)


def _experiment_cfg(o: dict, eid: str) -> ex.ExperimentConfig:
    init = None
    if o["init"]:
        n = 2 if eid in ("fig1", "fig2", "fig4", "fig5", "fig6") else 1
        init = parse_init(o["init"], n)
    return ex.ExperimentConfig(id=eid, out=Path(o["out"]), beta=o["beta"], Q=o["Q"],
                               dt=o["dt"], t_final=o["t_final"], init=init,
                               paper_scale=bool(o["paper_scale"]), k0_method=o["k0_method"],
                               stride=o["stride"], n_crossings=o["n_crossings"] or 2000)


def cmd_experiment(o: dict, eid: str) -> list[Path]:
    return ex.run_experiment(_experiment_cfg(o, eid))


def cmd_period(o: dict) -> list[Path]:
    res = ex.exp_period(_experiment_cfg(o, "fig12"))
    return res.write(Path(o["out"]))


def cmd_histogram(o: dict) -> list[Path]:
    res = ex.exp_histogram(_experiment_cfg(o, "histogram"), bins=o["bins"])
    print(f"tv_distance={res.manifest['tv_distance']!r}")
    return res.write(Path(o["out"]))


def cmd_check(o: dict) -> list[Path]:
    checks = ex.property_checks()
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} value={c.value!r} "
              f"threshold={c.threshold!r}")
    failed = [c.name for c in checks if not c.passed]
    if failed:
        raise CliError("check", "failed: " + ",".join(failed))
    return []


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        o = resolve(args)
        if o["dt"] is not None and not o["dt"] > 0:
            raise CliError("config", "dt must be positive")
        cmd = args.command
        if cmd == "experiment":
            paths = cmd_experiment(o, args.id)
        else:
            paths = {"simulate": cmd_simulate, "table": cmd_table, "averaged": cmd_averaged,
                     "poincare": cmd_poincare, "period": cmd_period,
                     "histogram": cmd_histogram, "check": cmd_check}[cmd](o)
        for p in paths:
            print(p)
        return 0
    except Exception as exc:  # one machine-parsable line, no traceback
        cat = _categorize(exc)
        msg = " ".join(str(exc).split())
        print(f"error: category={cat} message={msg}", file=sys.stderr)
        return EXIT_CODES[cat]


if __name__ == "__main__":
    sys.exit(main())
