import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nosehoover import csvio
from nosehoover.expcli import EXIT_CODES, main, parse_init, read_config, CliError


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=True, width=64), min_size=1,
                max_size=20))
def test_float_columns_round_trip_bit_exact(xs):
    text = csvio.dumps({"x": xs, "i": list(range(len(xs)))})
    back = csvio.loads(text)
    assert [float(v) for v in back["x"]] == [float(v) for v in xs]
    assert back["i"] == list(range(len(xs)))
    assert csvio.dumps(back) == text


def test_csv_layout(tmp_path):
    p = csvio.write(tmp_path / "sub" / "a.csv", {"t": np.array([0.0, 0.1]), "n": [1, 2]})
    raw = p.read_bytes()
    assert raw == b"t,n\n0.0,1\n0.1,2\n"
    assert csvio.read(p) == {"t": [0.0, 0.1], "n": [1, 2]}
    with pytest.raises(ValueError):
        csvio.dumps({"a": [1], "b": [1, 2]})
    with pytest.raises(ValueError):
        csvio.loads("")


def test_parse_init_and_config(tmp_path):
    assert parse_init("0,1.5", 1) == ((0.0,), (1.5,), 0.0)
    assert parse_init("0,0.5,-1.5,1.5,0.2", 2) == ((0.0, 0.5), (-1.5, 1.5), 0.2)
    with pytest.raises(CliError):
        parse_init("1,2,3", 2)
    with pytest.raises(CliError):
        parse_init("a,b", 1)
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nQ = 2.5\nt-final = 1  # trailing\n\n")
    assert read_config(cfg) == {"Q": "2.5", "t_final": "1"}


def _error_line(capsys):
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1
    return err[0]


def test_simulate_writes_trajectory_and_manifest(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["simulate", "--model", "pendulum", "--Q", "1", "--t-final", "1",
                 "--init", "0,1.5,0", "--stride", "100", "--out", str(out)]) == 0
    cols = csvio.read(out / "trajectory.csv")
    assert list(cols) == ["t", "q1", "p1", "xi", "H"]
    assert len(cols["t"]) == 11
    man = json.loads((out / "manifest.json").read_text())
    assert man["Q"] == 1.0 and man["init"]["p"] == [1.5]


def test_runs_are_byte_reproducible(tmp_path):
    args = ["simulate", "--model", "central", "--t-final", "2", "--stride", "50"]
    main(args + ["--out", str(tmp_path / "a")])
    main(args + ["--out", str(tmp_path / "b")])
    for name in ("trajectory.csv", "manifest.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("model = harmonic\nQ = 7\nt_final = 0.5\nscheme = verlet\n")
    out = tmp_path / "o"
    assert main(["simulate", "--config", str(cfg), "--Q", "3", "--out", str(out)]) == 0
    man = json.loads((out / "manifest.json").read_text())
    assert man["model"] == "harmonic1d" and man["Q"] == 3.0 and man["scheme"] == "verlet"
    assert "xi" not in csvio.read(out / "trajectory.csv")


def test_error_categories(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--model", "duffing"])
    assert exc.value.code == EXIT_CODES["usage"]
    assert _error_line(capsys).startswith("error: category=usage message=")

    assert main(["simulate", "--dt", "-1", "--out", str(tmp_path)]) == EXIT_CODES["config"]
    assert "category=config" in _error_line(capsys)

    assert main(["simulate", "--config", str(tmp_path / "missing.cfg")]) == EXIT_CODES["io"]
    assert "category=io" in _error_line(capsys)

    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert main(["simulate", "--config", str(bad)]) == EXIT_CODES["config"]
    capsys.readouterr()

    assert main(["simulate", "--model", "central", "--dt", "0.5", "--t-final", "50",
                 "--init", "3,0,0,0", "--out", str(tmp_path)]) == EXIT_CODES["integration"]
    assert "category=integration" in _error_line(capsys)

    assert main(["poincare", "--a-start", "40", "--out", str(tmp_path)]) == EXIT_CODES["range"]
    assert "category=range" in _error_line(capsys)

    # a table node below the harmonic ground energy is a range error
    assert main(["table", "--model", "harmonic", "--h-min", "-1", "--nodes", "3",
                 "--k0-method", "quadrature", "--out", str(tmp_path)]) == EXIT_CODES["range"]
    assert "category=range" in _error_line(capsys)


def test_table_and_averaged_commands(tmp_path):
    assert main(["table", "--model", "harmonic", "--nodes", "8", "--k0-method", "quadrature",
                 "--out", str(tmp_path / "t")]) == 0
    tab = csvio.read(tmp_path / "t" / "action_table.csv")
    assert np.allclose(np.array(tab["a"]) / np.array(tab["h"]), 2 * np.pi)
    assert main(["averaged", "--model", "pendulum", "--k0-method", "quadrature",
                 "--a-start", "7.72", "--out", str(tmp_path / "a")]) == 0
    G = np.array(csvio.read(tmp_path / "a" / "averaged_1d.csv")["G"])
    assert np.ptp(G) < 1e-4
    assert main(["averaged", "--model", "central", "--k0-method", "quadrature", "--t-final",
                 "5", "--out", str(tmp_path / "c")]) == 0
    E = np.array(csvio.read(tmp_path / "c" / "averaged_2d.csv")["E"])
    assert np.ptp(E) < 1e-8


def test_check_command_passes(capsys):
    assert main(["check"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
