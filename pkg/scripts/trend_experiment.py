#!/usr/bin/env python3
"""How does rule redundancy move with dataset size?

Synthesizes datasets of increasing size from one seed, runs the full
pipeline on each, and tabulates essential vs redundant rule counts. The
direction of the trend depends on the data; this script reports it rather
than asserting it.

Usage: python scripts/trend_experiment.py [--sizes 500,2000,8000] [--seed 11]
"""

import argparse
import json
import tempfile
from pathlib import Path

from triage_miner.cli import main as cli_main


def run(sizes: list[int], seed: int) -> None:
    rows = []
    with tempfile.TemporaryDirectory(prefix="trend-") as scratch:
        scratch_dir = Path(scratch)
        for size in sizes:
            csv_path = scratch_dir / f"bugs_{size}.csv"
            out_dir = scratch_dir / f"report_{size}"
            assert cli_main(
                ["synthesize", "--output", str(csv_path), "--rows", str(size),
                 "--seed", str(seed)]
            ) == 0
            assert cli_main(["run", "--input", str(csv_path), "--output", str(out_dir)]) == 0
            totals = json.loads((out_dir / "report" / "summary.json").read_text())["totals"]
            rows.append((size, totals["rules"], totals["essential"], totals["redundant"]))

    print()
    print(f"{'rows':>8} {'rules':>8} {'essential':>10} {'redundant':>10} {'redundant%':>11}")
    for size, rules, essential, redundant in rows:
        share = 100.0 * redundant / rules if rules else 0.0
        print(f"{size:>8} {rules:>8} {essential:>10} {redundant:>10} {share:>10.1f}%")
    shares = [red / rules for _, rules, _, red in rows if rules]
    if shares == sorted(shares) and len(set(shares)) > 1:
        print("\nobservation: the redundant share grows with dataset size here")
    else:
        print("\nobservation: no monotone redundancy growth on this configuration")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="500,2000,8000",
                        help="comma-separated dataset sizes")
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args()
    run([int(s) for s in args.sizes.split(",")], args.seed)
