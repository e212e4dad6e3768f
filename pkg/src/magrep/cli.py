"""Command-line front end: pair generation, chain studies and parameter sweeps.

Exit codes: 0 success, 2 configuration error, 3 numerical failure (trace
drift), 4 I/O error. CSV output is UTF-8, comma-separated, LF-terminated,
with a header row and 9 significant digits; identical configurations produce
byte-identical files.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import dynamics, network
from .config import ConfigError, OUTPUT_FORMATS, RunConfig, load_config
from .dynamics import IntegrationError
from .svgplot import LineChart

SWEEP_AXES = ("mux", "conv", "hops", "length")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".9g")
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    text = "\n".join([",".join(header)] + [",".join(_fmt(v) for v in row) for row in rows]) + "\n"
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def _write_svg(path: Path, chart: LineChart) -> Path:
    try:
        path.write_text(chart.render(), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def _ensure_out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    return out


def cmd_pair(cfg: RunConfig) -> list[Path]:
    """Trace pair generation over time and snapshot the heralded-state matrix."""
    p = cfg.lindblad.without_dissipation() if cfg.ideal else cfg.lindblad
    if p.dim_c != 2 or p.dim_m != 2:
        raise ConfigError("the pair command requires dim_c = dim_m = 2")
    out = _ensure_out_dir(cfg)
    t_final = cfg.t_final if cfg.t_final is not None else 3.0 * math.pi / (4.0 * p.g_mc)
    trace = dynamics.evolve(dynamics.initial_pair_state(p), p, t_final, dt=cfg.dt)

    rows = [
        [t * 1e9, c, *pops]
        for t, c, pops in zip(trace.times, trace.concurrences, trace.populations)
    ]
    files = [
        _write_csv(
            out / "pair_trace.csv",
            ["t_ns", "concurrence", "pop_00", "pop_01", "pop_10", "pop_11"],
            rows,
        )
    ]

    state, _ = dynamics.generate_bell_pair(p, dt=cfg.dt)
    labels = ["00", "01", "10", "11"]
    dm_rows = [
        [labels[i], labels[j], state.matrix[i, j].real, state.matrix[i, j].imag,
         abs(state.matrix[i, j])]
        for i in range(4)
        for j in range(4)
    ]
    files.append(
        _write_csv(out / "pair_dm.csv", ["row_label", "col_label", "re", "im", "abs"], dm_rows)
    )

    if "svg" in cfg.formats:
        chart = LineChart("Pair generation", "time (ns)", "concurrence")
        chart.add("concurrence", trace.times * 1e9, trace.concurrences)
        files.append(_write_svg(out / "pair_trace.svg", chart))
    return files


def _chain_rows(report: network.ChainReport) -> list[list]:
    return [
        [r.hop, r.fidelity, r.concurrence, r.p_hop, r.p_cumulative, r.usable]
        for r in report.hops
    ]


def cmd_chain(cfg: RunConfig) -> list[Path]:
    """Per-hop fidelity, concurrence and success probabilities for one chain."""
    out = _ensure_out_dir(cfg)
    report = network.simulate_chain(cfg.scenario, cfg.hops, cfg.noise, cfg.pclick_override)
    files = [
        _write_csv(
            out / "chain.csv",
            ["hop", "fidelity", "concurrence", "p_hop", "p_cumulative", "usable"],
            _chain_rows(report),
        )
    ]
    if "svg" in cfg.formats:
        hops = [r.hop for r in report.hops]
        chart = LineChart(f"Repeater chain ({report.scenario_name})", "hop", "value")
        chart.add("fidelity", hops, [r.fidelity for r in report.hops])
        chart.add(
            "usable threshold", hops,
            [network.USABLE_FIDELITY_THRESHOLD] * len(hops), dashed=True,
        )
        chart.add("cumulative success", hops, [r.p_cumulative for r in report.hops], dashed=True)
        files.append(_write_svg(out / "chain.svg", chart))
    return files


def _sweep_scenario(cfg: RunConfig, axis: str, value: float):
    """One (scenario, hops) variant per sweep point; validates the axis domain."""
    s = cfg.scenario
    if axis == "mux":
        if value < 1 or value != int(value):
            raise ConfigError(f"mux sweep values must be integers >= 1, got {value}")
        return network.with_mux(s, int(value)), cfg.hops
    if axis == "conv":
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"conv sweep values must lie in [0, 1], got {value}")
        return network.with_conversion(s, value), cfg.hops
    if axis == "hops":
        if value < 1 or value != int(value):
            raise ConfigError(f"hops sweep values must be integers >= 1, got {value}")
        return s, int(value)
    if axis == "length":
        if value <= 0:
            raise ConfigError(f"length sweep values must be > 0 km, got {value}")
        return network.with_span(s, value), cfg.hops
    raise ConfigError(f"unknown sweep axis {axis!r}; valid: {SWEEP_AXES}")


def cmd_sweep(cfg: RunConfig, axis: str, values: list[float]) -> list[Path]:
    """Chain reports across one swept parameter, one CSV row per value per hop."""
    if not values:
        raise ConfigError("sweep needs at least one value")
    out = _ensure_out_dir(cfg)
    rows = []
    for value in sorted(values):
        scenario, hops = _sweep_scenario(cfg, axis, value)
        report = network.simulate_chain(scenario, hops, cfg.noise, cfg.pclick_override)
        for r in report.hops:
            rows.append(
                [axis, value, r.hop, r.fidelity, r.concurrence, report.p_click,
                 r.p_hop, r.p_cumulative, r.usable]
            )
    return [
        _write_csv(
            out / "sweep.csv",
            ["axis", "value", "hop", "fidelity", "concurrence", "p_click",
             "p_hop", "p_cumulative", "usable"],
            rows,
        )
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magrep",
        description="Cavity-magnon repeater chain simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("pair", "simulate lossy pair generation at one node"),
        ("chain", "evaluate a multi-hop repeater chain"),
        ("sweep", "sweep one chain parameter"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", help="built-in scenario name (chip-a .. metro-c)")
        p.add_argument("--hops", type=int, help="number of chain hops")
        p.add_argument("--config", help="config file (key = value [unit] lines)")
        p.add_argument("--seed", type=int, help="64-bit run seed")
        p.add_argument("--out", help="output directory (default: out)")
        p.add_argument("--format", help="comma-separated outputs: csv,svg (default csv)")
        p.add_argument("--pclick-override", type=float, dest="pclick_override",
                       help="pin the single-channel click probability")
        p.add_argument("--ideal", action="store_true",
                       help="zero all dissipation rates (pair command)")
        if name == "sweep":
            p.add_argument("--sweep-axis", required=True, choices=SWEEP_AXES)
            p.add_argument("--sweep-values", required=True,
                           help="comma-separated values for the swept axis")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    cfg.command = args.command
    if args.scenario is not None:
        try:
            cfg.scenario = network.get_scenario(args.scenario)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if args.hops is not None:
        if args.hops < 1:
            raise ConfigError(f"hops must be >= 1, got {args.hops}")
        cfg.hops = args.hops
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 bits, got {args.seed}")
        cfg.seed = args.seed
    if args.out is not None:
        cfg.output_dir = Path(args.out)
    if args.format is not None:
        formats = tuple(f.strip().lower() for f in args.format.split(",") if f.strip())
        bad = [f for f in formats if f not in OUTPUT_FORMATS]
        if bad or not formats:
            raise ConfigError(f"--format takes a non-empty subset of {OUTPUT_FORMATS}")
        cfg.formats = formats
    if args.pclick_override is not None:
        if not 0.0 <= args.pclick_override <= 1.0:
            raise ConfigError(f"--pclick-override outside [0, 1]: {args.pclick_override}")
        cfg.pclick_override = args.pclick_override
    cfg.ideal = bool(args.ideal)
    return cfg


def _parse_sweep_values(raw: str) -> list[float]:
    try:
        return [float(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse sweep values {raw!r}") from None


def exit_code_for(exc: BaseException) -> int:
    """Map a failure to the documented process exit code."""
    if isinstance(exc, IntegrationError):
        return 3
    if isinstance(exc, (ConfigError, ValueError)):
        return 2
    if isinstance(exc, OSError):
        return 4
    raise exc


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "pair":
            files = cmd_pair(cfg)
        elif args.command == "chain":
            files = cmd_chain(cfg)
        else:
            files = cmd_sweep(cfg, args.sweep_axis, _parse_sweep_values(args.sweep_values))
    except (ConfigError, ValueError, IntegrationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    for f in files:
        print(f)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
