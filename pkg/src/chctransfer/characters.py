"""Discrete series characters on the compact Cartan subgroup of U(p,q)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import SignedExpSum, TorusPoint, alternating_sum
from .roots import (REGULARITY_TOL, RootSystem, SingularPointError, build_root_system,
                    delta_psi, sample_regular_points, weyl_D_sqrt)
from .theta import HCParameter


@dataclass(frozen=True)
class DSCharacter:
    """Θ_λ on the compact Cartan as global_sign · numerator / Δ_Ψ."""

    numerator: SignedExpSum
    global_sign: int
    roots: RootSystem


def ds_numerator(lam: HCParameter) -> DSCharacter:
    """Σ_{w ∈ S_p×S_q} ε(w) e^{wλ}, with the sign (-1)^{pq}."""
    num = alternating_sum(lam.twice, (lam.p, lam.q))
    sign = -1 if (lam.p * lam.q) % 2 else 1
    return DSCharacter(num, sign, build_root_system(lam.p, lam.q))


def ds_evaluate(c: DSCharacter, theta: TorusPoint | np.ndarray,
                tol: float = REGULARITY_TOL) -> complex | np.ndarray:
    arr = theta.as_array() if isinstance(theta, TorusPoint) else np.asarray(theta, float)
    if np.any(weyl_D_sqrt(c.roots, arr) <= tol):
        raise SingularPointError("character evaluated at a singular point")
    return c.global_sign * c.numerator.evaluate(arr) / delta_psi(c.roots, arr)


def boundedness_scan(num: SignedExpSum, samples: int, rng: np.random.Generator,
                     roots: RootSystem | None = None, chunk: int = 4096) -> float:
    """max |D|^{1/2}·|num/Δ_Ψ| = max |num| over sampled regular points.

    |D|^{1/2} = |Δ_Ψ| on the compact Cartan, so the scanned quantity is |num(θ)|,
    computed here through the quotient to exercise the denominator as well.
    """
    if not num:
        raise ValueError("empty numerator")
    rs = roots or build_root_system(num.n, 0)
    best = 0.0
    left = samples
    while left > 0:
        pts = sample_regular_points(rs, min(chunk, left), rng)
        vals = np.abs(weyl_D_sqrt(rs, pts) * (num.evaluate(pts) / delta_psi(rs, pts)))
        best = max(best, float(np.max(vals)))
        left -= len(pts)
    return best
