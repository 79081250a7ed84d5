"""Exhaustive transfer sweep; writes a CSV and prints a per-signature tally."""
from __future__ import annotations

import argparse
import collections
import time
from dataclasses import dataclass
from pathlib import Path

from chctransfer.cli import dump_csv
from chctransfer.sweep import SweepRow, parameter_count, run_sweep


@dataclass
class SweepConfig:
    max_n: int = 5
    max_twice: int = 13
    jobs: int = 1
    out: Path = Path("results/sweep.csv")


def main(cfg: SweepConfig) -> int:
    t0 = time.perf_counter()
    rows = run_sweep(cfg.max_n, cfg.max_twice, cfg.jobs)
    elapsed = time.perf_counter() - t0
    assert len(rows) == parameter_count(cfg.max_n, cfg.max_twice)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(dump_csv(SweepRow.header(), [r.csv_fields() for r in rows]))
    tally = collections.Counter((r.p, r.q, r.ok) for r in rows)
    for p, q in sorted({(r.p, r.q) for r in rows}):
        print(f"U({p},{q}): {tally[p, q, True]} pass, {tally[p, q, False]} fail")
    bad = sum(not r.ok for r in rows)
    print(f"{len(rows)} parameters in {elapsed:.1f}s, {bad} failures -> {cfg.out}")
    return int(bad > 0)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--max-twice", type=int, default=SweepConfig.max_twice)
    ap.add_argument("--jobs", type=int, default=SweepConfig.jobs)
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    a = ap.parse_args()
    raise SystemExit(main(SweepConfig(a.max_n, a.max_twice, a.jobs, a.out)))
