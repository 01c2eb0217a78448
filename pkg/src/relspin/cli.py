"""Command-line experiment runner.

Subcommands: ``entropy-scan``, ``wigner``, ``gauge-check``, ``entangle-scan``.
Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""
import argparse
import json
from concurrent.futures import ThreadPoolExecutor
import os
import sys

import numpy as np

from .config import ExperimentConfig, load_config, with_overrides
from .entanglement import bell_packet, boost_two, negativity, reduced_two_qubit
from .errors import ConfigError, NumericalError
from .minkowski import boost, four_momentum, wigner_angle, wigner_angle_oracle
from .polarization import (
    Canonical,
    Helicity,
    PauliLubanski,
    adapted_frame,
    channel_defect,
    entropy,
    gauge_shift,
    pl_matrix,
    reduced_density,
)
from .wavepacket import GridSpec, boost_state, gaussian_packet

THREADS_ENV = "RELSPIN_THREADS"


def worker_count(environ=os.environ):
    raw = environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _map_rows(fn, items, workers):
    # ThreadPoolExecutor.map yields in submission order
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def make_frame(cfg, rapidity):
    """Frame for the configured selector under a boost of the given rapidity."""
    if cfg.frame == "pst":
        return Canonical()
    if cfg.frame == "helicity":
        return Helicity()
    if cfg.frame == "adapted":
        # eigenvectors of a boost do not depend on its (nonzero) rapidity
        return adapted_frame(boost(cfg.boost_axis, rapidity if rapidity != 0 else 1.0))
    return PauliLubanski(np.array(cfg.custom_t))


def _packet(cfg):
    return gaussian_packet(cfg.mass, cfg.p0, cfg.width, cfg.spinor_complex,
                           GridSpec(cfg.grid_n, cfg.grid_k))


ENTROPY_COLUMNS = ("chi", "S_pst_before", "S_pst_after", "S_adapted_before",
                   "S_adapted_after", "channel_offdiag", "channel_phase_spread")


def run_entropy_scan(cfg, workers=1):
    state = _packet(cfg)
    s_pst_before = entropy(reduced_density(state, Canonical()))

    def row(chi):
        lam = boost(cfg.boost_axis, chi)
        frame = make_frame(cfg, chi)
        boosted = boost_state(state, lam)
        offdiag, spread = channel_defect(lam, frame, state.momenta, state.mass)
        return (
            chi,
            s_pst_before,
            entropy(reduced_density(boosted, Canonical())),
            entropy(reduced_density(state, frame)),
            entropy(reduced_density(boosted, frame)),
            offdiag,
            spread,
        )

    return ENTROPY_COLUMNS, _map_rows(row, list(cfg.rapidities), workers)


WIGNER_COLUMNS = ("xi", "eta", "theta", "omega_composed", "omega_oracle", "abs_delta")


def wigner_row(xi, eta, theta, mass=1.0):
    """Compare the composed Wigner angle for boost ``xi`` along z with the oracle."""
    p = mass * np.sinh(eta) * np.array([np.sin(theta), 0.0, np.cos(theta)])
    composed = float(wigner_angle(boost([0.0, 0.0, 1.0], xi), p, mass))
    oracle = float(wigner_angle_oracle(xi, eta, theta))
    return (xi, eta, theta, composed, oracle, abs(composed - oracle))


def run_wigner_table(cfg, workers=1):
    xis = cfg.wigner_xi if cfg.wigner_xi is not None else cfg.rapidities
    if any(x < 0 for x in xis):
        raise ConfigError("Wigner table rapidities must be non-negative")
    combos = [(xi, eta, th) for xi in xis for eta in cfg.wigner_eta for th in cfg.wigner_theta]
    rows = _map_rows(lambda c: wigner_row(*c, mass=cfg.mass), combos, workers)
    bad = [r for r in rows if not r[-1] < 1e-10]
    if bad:
        raise NumericalError(f"Wigner angle oracle mismatch in {len(bad)} row(s), worst {max(r[-1] for r in bad):.3g}")
    return WIGNER_COLUMNS, rows


def run_gauge_check(cfg, workers=1):
    state = _packet(cfg)
    if cfg.gauge_t is not None:
        t = np.array(cfg.gauge_t)
    else:
        t = np.concatenate([[1.0], -np.array(cfg.boost_axis)])
    p, m = state.momenta, state.mass
    shifted = gauge_shift(np.broadcast_to(t, (len(p), 4)), p, m)
    defect = float(np.max(np.abs(pl_matrix(shifted, p, m) - pl_matrix(t, p, m))))
    big_p = four_momentum(p, m)
    ortho = np.abs(shifted[:, 0] * big_p[:, 0] - np.sum(shifted[:, 1:] * big_p[:, 1:], axis=1))
    ortho /= np.linalg.norm(t) * np.linalg.norm(big_p, axis=1)
    return {"max_defect": defect, "max_orthogonality": float(np.max(ortho)), "n_samples": len(p)}


ENTANGLE_COLUMNS = ("chi", "N_pst_before", "N_pst_after", "N_adapted_before", "N_adapted_after")


def run_entangle_scan(cfg, workers=1):
    p1 = cfg.entangle_p1 if cfg.entangle_p1 is not None else cfg.p0
    p2 = cfg.entangle_p2 if cfg.entangle_p2 is not None else tuple(-c for c in cfg.p0)
    width = cfg.entangle_width if cfg.entangle_width is not None else cfg.width
    k = cfg.entangle_grid_k if cfg.entangle_grid_k is not None else cfg.grid_k
    state = bell_packet(cfg.mass, p1, p2, width, GridSpec(cfg.entangle_grid_n, k))
    n_pst_before = negativity(reduced_two_qubit(state))

    def row(chi):
        lam = boost(cfg.boost_axis, chi)
        frame = make_frame(cfg, chi)
        boosted = boost_two(state, lam)
        return (
            chi,
            n_pst_before,
            negativity(reduced_two_qubit(boosted)),
            negativity(reduced_two_qubit(state, frame, frame)),
            negativity(reduced_two_qubit(boosted, frame, frame)),
        )

    return ENTANGLE_COLUMNS, _map_rows(row, list(cfg.rapidities), workers)


def format_value(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.17g}"


def render_csv(columns, rows):
    lines = [",".join(columns)]
    lines += [",".join(format_value(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def render_json(cfg, command, columns=None, rows=None, report=None):
    """JSON with numbers written at 17 significant digits."""
    head = f'{{"experiment": {json.dumps(cfg.experiment)}, "command": {json.dumps(command)}'
    if report is not None:
        body = ", ".join(f"{json.dumps(k)}: {format_value(v)}" for k, v in report.items())
        return head + ", " + body + "}\n"
    items = []
    for row in rows:
        fields = ", ".join(f"{json.dumps(c)}: {format_value(v)}" for c, v in zip(columns, row))
        items.append("    {" + fields + "}")
    return head + ', "rows": [\n' + ",\n".join(items) + "\n]}\n"


COMMANDS = {
    "entropy-scan": run_entropy_scan,
    "wigner": run_wigner_table,
    "gauge-check": run_gauge_check,
    "entangle-scan": run_entangle_scan,
}


def render(cfg, command, result):
    if isinstance(result, dict):
        if cfg.output_format == "json":
            return render_json(cfg, command, report=result)
        return render_csv(tuple(result), [tuple(result.values())])
    columns, rows = result
    if cfg.output_format == "json":
        return render_json(cfg, command, columns, rows)
    return render_csv(columns, rows)


def build_parser():
    parser = argparse.ArgumentParser(prog="relspin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", help="key = value configuration file")
        cmd.add_argument("--out", help="output path (default: stdout)")
        cmd.add_argument("--format", choices=("csv", "json"))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else ExperimentConfig()
        cfg = with_overrides(cfg, output_path=args.out, output_format=args.format)
        text = render(cfg, args.command, COMMANDS[args.command](cfg, worker_count()))
    except ConfigError as exc:
        print(f"relspin: configuration error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, ValueError) as exc:
        print(f"relspin: numerical failure: {exc}", file=sys.stderr)
        return 2
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
