"""Measured constants for the cosh inequality, against the 2^{np} bound."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from chctransfer.oracles import omega_constant_table


@dataclass
class OmegaConfig:
    samples: int = 1000
    max_p: int = 3
    extra_n: int = 2
    x_max: float = 5.0
    seed: int = 0


def main(cfg: OmegaConfig) -> None:
    rows = omega_constant_table(np.random.default_rng(cfg.seed), cfg.samples, cfg.max_p,
                                cfg.extra_n, cfg.x_max)
    print(f"{'p':>2} {'n':>2} {'measured C':>12} {'2^(np)':>10} {'C=1 fails':>10} {'ch>=e^X fails':>14}")
    for r in rows:
        print(f"{r.p:>2} {r.n:>2} {r.measured_constant:>12.4f} {r.constant_bound:>10.0f} "
              f"{r.unit_constant_failures:>10} {r.chain_failures:>14}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=OmegaConfig.samples)
    ap.add_argument("--x-max", type=float, default=OmegaConfig.x_max)
    ap.add_argument("--seed", type=int, default=OmegaConfig.seed)
    a = ap.parse_args()
    main(OmegaConfig(samples=a.samples, x_max=a.x_max, seed=a.seed))
