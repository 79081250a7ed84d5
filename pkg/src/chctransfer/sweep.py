"""Exhaustive parameter sweeps over small unitary groups."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass

from .algebra import expsum_equal_up_to_constant
from .characters import ds_numerator
from .theta import (HCParameter, enumerate_hc_parameters, signature_pairs, tau_lambda,
                    theta_lift, theta_parameter, theta_signature, weyl_orbit_equal)
from .transfer import transfer_bruteforce, transfer_closed_form

MAX_SWEEP_N = 8


@dataclass(frozen=True, order=True)
class SweepRow:
    p: int
    q: int
    lam: str
    a: int
    b: int
    r: int
    s: int
    terms: int
    match: bool
    zero_elsewhere: bool
    orbit_ok: bool

    @property
    def ok(self) -> bool:
        return self.match and self.zero_elsewhere and self.orbit_ok

    @staticmethod
    def header() -> list[str]:
        return ["p", "q", "lambda", "a", "b", "r", "s", "terms", "match",
                "zero_elsewhere", "orbit_ok"]

    def csv_fields(self) -> list[str]:
        return [str(v).lower() if isinstance(v, bool) else str(v) for v in astuple(self)]


def check_parameter(lam: HCParameter) -> SweepRow:
    sig = theta_signature(lam)
    brute = transfer_bruteforce(lam, sig)
    closed = transfer_closed_form(lam, sig)
    lifted = ds_numerator(theta_lift(lam)).numerator
    match = (bool(brute) and expsum_equal_up_to_constant(brute, closed)
             and expsum_equal_up_to_constant(brute, lifted))
    zero_elsewhere = all(not transfer_bruteforce(lam, t)
                         for t in signature_pairs(lam.n) if t != sig)
    tl, lp = tau_lambda(lam), theta_parameter(lam)
    orbit_ok = (weyl_orbit_equal(tl, lp, "block", sig.r) and weyl_orbit_equal(tl, lp, "full"))
    return SweepRow(lam.p, lam.q, ";".join(lam.entries.to_strings()), lam.a, lam.b,
                    sig.r, sig.s, len(brute), match, zero_elsewhere, orbit_ok)


def _check_group(args: tuple[int, int, int]) -> list[SweepRow]:
    p, q, max_twice = args
    return [check_parameter(lam) for lam in enumerate_hc_parameters(p, q, max_twice)]


def sweep_groups(max_n: int) -> list[tuple[int, int]]:
    return [(p, n - p) for n in range(1, max_n + 1) for p in range(0, n // 2 + 1)]


def run_sweep(max_n: int, max_twice: int, jobs: int = 1) -> list[SweepRow]:
    """Every valid λ for U(p,q), p ≤ q, p+q ≤ max_n, |λ_i| ≤ max_twice/2; rows sorted."""
    if max_n > MAX_SWEEP_N:
        raise ValueError(f"max_n={max_n} exceeds the guard {MAX_SWEEP_N}")
    work = [(p, q, max_twice) for p, q in sweep_groups(max_n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_check_group, work))
    else:
        chunks = [_check_group(w) for w in work]
    return sorted(row for chunk in chunks for row in chunk)


def parameter_count(max_n: int, max_twice: int) -> int:
    """Closed-form size of a sweep: Σ C(m, p)·C(m - p, q), m = number of admissible values."""
    m = 2 * ((max_twice + 1) // 2)
    return sum(math.comb(m, p) * math.comb(m - p, q) for p, q in sweep_groups(max_n))


__all__ = ["SweepRow", "check_parameter", "run_sweep", "sweep_groups", "parameter_count",
           "MAX_SWEEP_N"]
