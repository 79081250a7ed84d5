"""How the torus quadrature approaches the residue slice.

Two tables: error vs grid size at a fixed deformation, and the extrapolation
error vs schedule length for slices of growing degree in e^{-x}.
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

import numpy as np

from chctransfer.algebra import Deformation, Permutation, TorusPoint, Weight
from chctransfer.oracles import (deformation_sides, slice_degree, transfer_quadrature,
                                 transfer_quadrature_limit)
from chctransfer.theta import theta_signature, validate_hc_parameter
from chctransfer.transfer import sigma_slice


@dataclass
class ConvergenceConfig:
    grids: tuple[int, ...] = (16, 32, 64, 128, 256)
    x: float = 0.25
    seed: int = 0


CASES = [("1/2,-1/2", 1, 1), ("3/2,-1/2", 1, 1), ("3/2,1/2", 0, 2), ("5/2,-3/2", 1, 1)]
SCHEDULES = [(0.5, 0.25, 0.125), (0.5, 0.25, 0.125, 0.0625),
             (0.5, 0.25, 0.125, 0.0625, 0.03125)]


def grid_for(schedule) -> int:
    return max(256, 2 ** math.ceil(math.log2(32 / min(schedule))))


def main(cfg: ConvergenceConfig) -> None:
    rng = np.random.default_rng(cfg.seed)
    tp = TorusPoint(rng.uniform(0, 2 * math.pi, 2))
    sigma = Permutation.identity(2)
    print("grid refinement at fixed deformation, |quadrature - residues|")
    for text, p, q in CASES:
        lam = validate_hc_parameter(Weight.of(text.split(",")), p, q)
        target = theta_signature(lam)
        d = Deformation([cfg.x * s for s in deformation_sides(sigma, lam, target)])
        exact = sigma_slice(lam, target, sigma, tp, d)
        errs = [abs(transfer_quadrature(lam, target, tp, sigma, d, N) - exact) for N in cfg.grids]
        print(f"  {text:>10} U({p},{q}): " + " ".join(f"N={N}:{e:.1e}" for N, e in zip(cfg.grids, errs)))
    print("extrapolation to the unit torus vs schedule length")
    for text, p, q in CASES:
        lam = validate_hc_parameter(Weight.of(text.split(",")), p, q)
        target = theta_signature(lam)
        sym = sigma_slice(lam, target, sigma, tp)
        # aliasing at deformation x is about e^{-N x}: keep N·min(x) ≥ 32
        errs = [abs(transfer_quadrature_limit(lam, target, tp, sigma, s, grid_for(s)).value - sym)
                for s in SCHEDULES]
        print(f"  {text:>10} U({p},{q}) degree {slice_degree(lam)}: "
              + " ".join(f"{len(s)} pts:{e:.1e}" for s, e in zip(SCHEDULES, errs)))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--x", type=float, default=0.25)
    a = ap.parse_args()
    main(ConvergenceConfig(x=a.x, seed=a.seed))
