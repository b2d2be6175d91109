#!/usr/bin/env python3
"""Regenerate the bundled sample dataset (data/sample_bugs.csv).

The shape and seed are pinned; rerunning always reproduces the same bytes.
If you change them, refresh the golden report too (scripts/refresh_golden.py).
"""

from pathlib import Path

from triage_miner.synth import synthesize_rows, write_csv

REPO_ROOT = Path(__file__).resolve().parent.parent
TARGET = REPO_ROOT / "data" / "sample_bugs.csv"

if __name__ == "__main__":
    rows = synthesize_rows(
        rows=360, components=10, operating_systems=6, assignees=12, skew=1.1, seed=7
    )
    write_csv(TARGET, rows)
    print(f"wrote {len(rows)} rows to {TARGET}")
