#!/usr/bin/env python3
"""Four-hop chain study across all six built-in deployment scenarios."""
import argparse

from magrep import network
from magrep.cli import cmd_chain
from magrep.config import RunConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/chain", help="output directory")
    ap.add_argument("--hops", type=int, default=4)
    args = ap.parse_args()

    print(f"{'scenario':10s} {'p_click':>11s} {'p_hop':>9s} {'P_cum':>11s} "
          f"{'F_final':>8s} usable")
    for name in sorted(network.BUILTIN_SCENARIOS):
        cfg = RunConfig(
            command="chain",
            scenario=network.BUILTIN_SCENARIOS[name],
            hops=args.hops,
            output_dir=f"{args.out}/{name}",
            formats=("csv", "svg"),
        )
        cmd_chain(cfg)
        report = network.simulate_chain(cfg.scenario, cfg.hops, cfg.noise)
        last = report.hops[-1]
        print(
            f"{name:10s} {report.p_click:11.3e} {last.p_hop:9.4f} "
            f"{last.p_cumulative:11.3e} {last.fidelity:8.4f} {last.usable}"
        )


if __name__ == "__main__":
    main()
