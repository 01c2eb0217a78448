import csv
import io
import json
import math

import numpy as np
import pytest

from relspin import cli
from relspin.config import ExperimentConfig, parse_config
from relspin.errors import ConfigError

DEFAULT_TEXT = """\
# default entropy experiment
mass = 1
p0 = 0, 0, 2
width = 0.5
spinor = 1, 0, 0, 0
grid.n = 21
grid.k = 4
boost.axis = 1, 0, 0
rapidities = 0, 1
frame = adapted
experiment = default
"""


def run(tmp_path, command, text=DEFAULT_TEXT, fmt="csv", env=None, monkeypatch=None):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(text)
    out = tmp_path / f"{command}.{fmt}"
    if env is not None:
        monkeypatch.setenv(cli.THREADS_ENV, env)
    code = cli.main([command, "--config", str(cfg), "--out", str(out), "--format", fmt])
    return code, (out.read_text() if out.exists() else None)


def rows_of(text):
    return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(io.StringIO(text))]


def test_parse_config_defaults_and_keys():
    cfg = parse_config(DEFAULT_TEXT)
    assert cfg.p0 == (0.0, 0.0, 2.0)
    assert cfg.grid_n == 21 and cfg.grid_k == 4.0
    assert cfg.rapidities == (0.0, 1.0)
    assert cfg.experiment == "default"
    np.testing.assert_array_equal(cfg.spinor_complex, [1, 0])


def test_parse_config_custom_frame_and_axis_normalization():
    cfg = parse_config("frame = custom:1,0,0,-1\nboost.axis = 0, 0, 3\n")
    assert cfg.custom_t == (1.0, 0.0, 0.0, -1.0)
    assert cfg.boost_axis == (0.0, 0.0, 1.0)


@pytest.mark.parametrize("text", [
    "mass = -1",
    "grid.n = 20",
    "grid.n = 2.5",
    "rapidities = ",
    "frame = sideways",
    "frame = custom:0,0,0,0",
    "output.format = xml",
    "p0 = 1, 2",
    "width = nan",
    "boost.axis = 0, 0, 0",
    "unknown.key = 1",
    "no equals sign",
])
def test_bad_config_rejected(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_config_error_exit_code(tmp_path):
    code, _ = run(tmp_path, "entropy-scan", "grid.n = 4\n")
    assert code == 1
    assert cli.main(["wigner", "--config", str(tmp_path / "missing.cfg")]) == 1


def test_bad_thread_count_is_config_error(tmp_path, monkeypatch):
    code, _ = run(tmp_path, "wigner", "wigner.xi = 1\n", env="zero", monkeypatch=monkeypatch)
    assert code == 1


def test_entropy_scan_default(tmp_path):
    code, text = run(tmp_path, "entropy-scan")
    assert code == 0
    assert text.splitlines()[0] == ",".join(cli.ENTROPY_COLUMNS)
    zero, one = rows_of(text)
    assert abs(zero["S_pst_after"] - zero["S_pst_before"]) < 1e-12
    assert one["S_pst_before"] < 1e-12
    assert one["S_pst_after"] > 1e-4
    assert abs(one["S_adapted_after"] - one["S_adapted_before"]) < 1e-9
    assert one["channel_offdiag"] < 1e-9 and one["channel_phase_spread"] < 1e-8


def test_entropy_scan_sharp_packet(tmp_path):
    code, text = run(tmp_path, "entropy-scan", DEFAULT_TEXT + "width = 0.001\nrapidities = 1\n")
    assert code == 0
    (row,) = rows_of(text)
    assert row["S_pst_after"] < 1e-6


def test_entropy_scan_frame_singularity_exit_code(tmp_path, capsys):
    # packet centred at rest: the helicity frame is singular at p = 0
    code, _ = run(tmp_path, "entropy-scan", "p0 = 0, 0, 0\nframe = helicity\nrapidities = 1\n")
    assert code == 2
    assert "momenta" in capsys.readouterr().err


def test_entropy_scan_pst_frame_has_canonical_columns(tmp_path):
    code, text = run(tmp_path, "entropy-scan", DEFAULT_TEXT + "frame = pst\ngrid.n = 11\n")
    assert code == 0
    for row in rows_of(text):
        assert row["S_adapted_after"] == row["S_pst_after"]


def test_wigner_table(tmp_path):
    text = "wigner.xi = 0, 1\nwigner.eta = 1\nwigner.theta = 0, 1.5707963267948966\n"
    code, out = run(tmp_path, "wigner", text)
    assert code == 0
    rows = rows_of(out)
    assert len(rows) == 4
    assert all(r["abs_delta"] < 1e-10 for r in rows)
    assert rows[0]["omega_composed"] == 0.0
    spot = rows[3]
    assert (spot["xi"], spot["eta"]) == (1.0, 1.0)
    assert abs(spot["omega_oracle"] - 2 * math.atan(math.tanh(0.5) ** 2)) < 1e-15
    assert abs(spot["omega_oracle"] - 0.420782) < 5e-6


def test_wigner_default_grid(tmp_path):
    code, out = run(tmp_path, "wigner", "wigner.xi = 0.25, 0.5, 1, 2\n")
    assert code == 0
    rows = rows_of(out)
    assert len(rows) == 4 * 4 * 7
    assert max(r["abs_delta"] for r in rows) < 1e-10


def test_gauge_check_json(tmp_path):
    code, out = run(tmp_path, "gauge-check", DEFAULT_TEXT, fmt="json")
    assert code == 0
    report = json.loads(out)
    assert {"max_defect", "n_samples"} <= set(report)
    assert report["n_samples"] == 9261
    assert report["max_defect"] < 1e-12
    assert report["max_orthogonality"] < 1e-10


def test_gauge_check_degenerate(tmp_path):
    # t = (m, 0, 0, 0) is the momentum of the rest sample at the grid centre
    code, _ = run(tmp_path, "gauge-check", "p0 = 0, 0, 0\ngauge.t = 1, 0, 0, 0\ngrid.n = 5\n")
    assert code == 2


ENTANGLE_TEXT = """\
boost.axis = 0, 0, 1
rapidities = 0, 1
width = 0.5
p0 = 0, 0, 2
entangle.grid.n = 7
"""


@pytest.fixture(scope="module")
def entangle_rows(tmp_path_factory):
    code, out = run(tmp_path_factory.mktemp("ent"), "entangle-scan", ENTANGLE_TEXT)
    assert code == 0
    return rows_of(out)


def test_entangle_scan_zero_rapidity(entangle_rows):
    zero = entangle_rows[0]
    assert abs(zero["N_pst_after"] - zero["N_pst_before"]) < 1e-12
    assert abs(zero["N_adapted_after"] - zero["N_adapted_before"]) < 1e-12


def test_entangle_scan_boosted(entangle_rows):
    one = entangle_rows[1]
    assert one["N_pst_before"] - one["N_pst_after"] > 1e-5
    assert abs(one["N_adapted_after"] - one["N_adapted_before"]) < 1e-9
    assert abs(one["N_pst_before"] - 0.5) < 5e-3


@pytest.mark.xfail(strict=True, reason=(
    "a spin Bell state built in the canonical basis becomes a mixture in the "
    "momentum-dependent adapted basis; N_adapted_before is about 0.32 here"))
def test_entangle_scan_adapted_before_is_bell(entangle_rows):
    assert abs(entangle_rows[1]["N_adapted_before"] - 0.5) < 5e-3


def test_json_table_output(tmp_path):
    code, out = run(tmp_path, "wigner", "wigner.xi = 1\nwigner.eta = 1\nwigner.theta = 0\n", fmt="json")
    assert code == 0
    data = json.loads(out)
    assert data["command"] == "wigner"
    assert list(data["rows"][0]) == list(cli.WIGNER_COLUMNS)


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, 2.0 ** -40, 123456.789):
        text = cli.format_value(x)
        assert float(text) == x
        assert len(text.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 17
    assert cli.format_value(9261) == "9261"


def test_stdout_when_no_output_path(capsys):
    assert cli.main(["wigner"]) == 0
    assert capsys.readouterr().out.startswith("xi,eta,theta,")


def test_default_config_is_valid():
    ExperimentConfig()


@pytest.mark.parametrize("command", ["entropy-scan", "wigner", "gauge-check", "entangle-scan"])
def test_determinism_across_thread_counts(tmp_path, monkeypatch, command):
    text = DEFAULT_TEXT + "grid.n = 11\nrapidities = 0, 0.5, 1, 2\nentangle.grid.n = 5\n"
    outputs = []
    for threads in ("1", "4"):
        d = tmp_path / threads
        d.mkdir()
        code, out = run(d, command, text, env=threads, monkeypatch=monkeypatch)
        assert code == 0
        outputs.append(out.encode())
    assert outputs[0] == outputs[1]
