"""Floating-point oracles, independent of the residue bookkeeping.

Contour integrals are approximated by the trapezoid rule on equispaced points
of the unit circle (or product grids on the torus); for integrands analytic in
an annulus around the contour the error decays geometrically in N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import Deformation, Permutation, TorusPoint
from .characters import ds_numerator
from .roots import build_root_system, is_regular, SingularPointError
from .theta import HCParameter, SignaturePair
from .transfer import e_sigma_pattern

DEFAULT_SCHEDULE = (0.5, 0.25, 0.125)
# |a| = 1.1 sits at |log|a|| ≈ 0.095 and must stay admissible
CONTOUR_MARGIN = 0.05
MAX_GRID_POINTS = 2 ** 26


class PatternMismatch(ValueError):
    """A deformation lies outside the region E_σ prescribed for σ."""


def circle_quadrature(k: int, a: complex, N: int = 2048) -> complex:
    """Trapezoid rule for (1/2πi) ∮_{|z|=1} z^k / (z - a) dz."""
    if a != 0 and abs(math.log(abs(a))) < CONTOUR_MARGIN:
        raise ValueError(f"|a| = {abs(a):.4f} is too close to the contour")
    if N < 64:
        raise ValueError("N must be at least 64")
    z = np.exp(2j * np.pi * np.arange(N) / N)
    # dz = i z dθ, so the integral is the mean of z^{k+1} / (z - a)
    return complex(np.mean(z ** (k + 1) / (z - a)))


def deformation_sides(sigma: Permutation, lam: HCParameter,
                      target: SignaturePair | tuple[int, int]) -> tuple[int, ...]:
    """Sign of X_j for each coordinate j on the deformation region of σ."""
    r, s = target
    pattern = e_sigma_pattern(sigma, lam.p, lam.q, r, s)
    sides = [0] * lam.n
    for m in range(1, lam.n + 1):
        sides[sigma(m) - 1] = pattern[m - 1]
    return tuple(sides)


def transfer_quadrature(lam: HCParameter, target: SignaturePair | tuple[int, int],
                        theta_p: TorusPoint, sigma: Permutation, d: Deformation,
                        N: int = 512, enforce_pattern: bool = True) -> complex:
    """σ-term of the transfer at θ' and deformation d, by product trapezoid quadrature.

    Integrates num(θ)·e^{iΣθ_j/2} / ∏_i(1 - h_i (r h')^{-1}_{σ(i)}) over the torus,
    num being the S_p×S_q alternating sum of λ, then multiplies by
    ε(σ) ∏_j e^{-iθ'_j/2}.
    """
    n = lam.n
    if len(theta_p) != n or len(d) != n:
        raise ValueError("length mismatch")
    if enforce_pattern and d.signs() != deformation_sides(sigma, lam, target):
        raise PatternMismatch(f"deformation signs {d.signs()} do not match "
                              f"{deformation_sides(sigma, lam, target)}")
    if n > 1 and not is_regular(build_root_system(n, 0), theta_p):
        raise SingularPointError("θ' is singular")
    if N ** n > MAX_GRID_POINTS:
        raise ValueError(f"grid {N}^{n} too large")
    num = ds_numerator(lam).numerator
    w, c = num.weight_matrix()
    grid = 2.0 * np.pi * np.arange(N) / N
    # a_j = e^{-X_j + iθ'_j}; the factor for coordinate i uses a_{σ(i)}
    a = np.exp(-np.asarray(d.log_radii) + 1j * theta_p.as_array())
    a_sig = np.array([a[sigma(i) - 1] for i in range(1, n + 1)])
    # per-axis pieces: e^{iθ/2} / (1 - e^{iθ}/a_{σ(i)})
    axis_factor = [np.exp(0.5j * grid) / (1.0 - np.exp(1j * grid) / a_sig[i]) for i in range(n)]
    total = 0j
    # axis-major accumulation: fix θ_1, sum the remaining axes, in order
    rest = np.stack(np.meshgrid(*([grid] * (n - 1)), indexing="ij"), axis=-1).reshape(-1, n - 1) \
        if n > 1 else np.zeros((1, 0))
    rest_factor = np.ones(len(rest), dtype=complex)
    for i in range(1, n):
        idx = np.indices([N] * (n - 1)).reshape(n - 1, -1)[i - 1]
        rest_factor = rest_factor * axis_factor[i][idx]
    for t0 in range(N):
        pts = np.concatenate([np.full((len(rest), 1), grid[t0]), rest], axis=1)
        vals = np.exp(1j * (pts @ w.T)) @ c
        total += axis_factor[0][t0] * np.sum(vals * rest_factor)
    mean = total / N ** n
    return sigma.sign() * np.exp(-0.5j * np.sum(theta_p.as_array())) * mean


def extrapolate_to_unit(xs: Sequence[float], values: Sequence[complex]) -> complex:
    """Polynomial extrapolation in u = e^{-x} to u = 1 (Neville's scheme)."""
    u = [math.exp(-x) for x in xs]
    p = [complex(v) for v in values]
    m = len(u)
    for level in range(1, m):
        for i in range(m - level):
            j = i + level
            p[i] = ((1.0 - u[j]) * p[i] - (1.0 - u[i]) * p[i + 1]) / (u[i] - u[j])
    return p[0]


@dataclass
class QuadratureLimit:
    value: complex
    raw: list[complex] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)


def transfer_quadrature_limit(lam: HCParameter, target: SignaturePair | tuple[int, int],
                              theta_p: TorusPoint, sigma: Permutation,
                              schedule: Sequence[float] = DEFAULT_SCHEDULE, N: int = 512,
                              sides: Sequence[int] | None = None) -> QuadratureLimit:
    """Run the quadrature along X_j = x·side_j for x in ``schedule`` and extrapolate x → 0.

    ``sides`` defaults to the deformation region of σ; any other choice is
    accepted and simply integrated (used to probe the vanishing branch).
    """
    own = deformation_sides(sigma, lam, target)
    sides = tuple(own if sides is None else sides)
    raw = [transfer_quadrature(lam, target, theta_p, sigma,
                               Deformation([x * sd for sd in sides]), N,
                               enforce_pattern=sides == own)
           for x in schedule]
    value = extrapolate_to_unit(schedule, raw)
    return QuadratureLimit(value, raw, [abs(v - value) for v in raw])


def omega_log_ratio(p: int, n: int, X: Sequence[float]) -> float:
    """log of ∏ ch(X_k)^{-n} / ∏ e^{-2pX_k}, computed without overflow."""
    total = 0.0
    for x in X:
        log_ch = x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)
        total += 2.0 * p * x - n * log_ch
    return total


def omega_bound_check(p: int, n: int, X: Sequence[float], constant: float | None = None) -> bool:
    """∏ ch(X_k)^{-n} ≤ C·∏ e^{-2pX_k}, with C = 2^{np} unless given."""
    if n < 2 * p:
        raise ValueError(f"n={n} < 2p={2 * p}")
    if len(X) != p or any(x <= 0 for x in X):
        raise ValueError("X must hold p positive entries")
    log_c = n * p * math.log(2.0) if constant is None else math.log(constant)
    return omega_log_ratio(p, n, X) <= log_c + 1e-12


@dataclass(frozen=True)
class OmegaRow:
    p: int
    n: int
    samples: int
    measured_constant: float
    constant_bound: float
    unit_constant_failures: int
    chain_failures: int

    def as_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "samples": self.samples,
                "measured_constant": self.measured_constant,
                "constant_bound": self.constant_bound,
                "unit_constant_failures": self.unit_constant_failures,
                "chain_failures": self.chain_failures}


def omega_constant_table(rng: np.random.Generator, samples: int = 1000, max_p: int = 3,
                         extra_n: int = 2, x_max: float = 5.0) -> list[OmegaRow]:
    """Smallest C with ∏ch(X)^{-n} ≤ C ∏e^{-2pX} over random X ∈ (0, x_max]^p.

    ``unit_constant_failures`` counts samples violating C = 1;
    ``chain_failures`` counts samples where ch(X_k) ≥ e^{X_k} fails for some k.
    """
    rows = []
    for p in range(1, max_p + 1):
        for n in range(2 * p, 2 * p + extra_n + 1):
            # uniform on (0, x_max]
            X = x_max - rng.uniform(0.0, x_max, size=(samples, p))
            logs = np.array([omega_log_ratio(p, n, x) for x in X])
            chain = int(np.sum(np.any(np.cosh(X) < np.exp(X), axis=1)))
            rows.append(OmegaRow(p, n, samples, float(np.exp(logs.max())),
                                 float(2.0 ** (n * p)), int(np.sum(logs > 0.0)), chain))
    return rows


CIRCLE_TOL = 1e-8
SLICE_TOL = 1e-6
CIRCLE_KS = tuple(range(-6, 7))
CIRCLE_MODULI = (0.5, 0.9, 1.1, 2.0)
CIRCLE_PHASES = 8


def circle_error_grid(N: int = 2048) -> float:
    """Largest |quadrature - Cauchy| over k ∈ [-6,6], |a| ∈ CIRCLE_MODULI, 8 phases."""
    from .transfer import cauchy_circle_integral

    worst = 0.0
    for k in CIRCLE_KS:
        for m in CIRCLE_MODULI:
            for j in range(CIRCLE_PHASES):
                a = m * np.exp(2j * np.pi * j / CIRCLE_PHASES)
                worst = max(worst, abs(circle_quadrature(k, a, N) - cauchy_circle_integral(k, a)))
    return worst


def slice_cases(max_n: int = 2, max_twice: int = 1):
    """(λ, target, σ) for every valid λ with p+q ≤ max_n, |λ_i| ≤ max_twice/2."""
    import itertools

    from .theta import enumerate_hc_parameters, signature_pairs

    for n in range(1, max_n + 1):
        for p in range(n + 1):
            for lam in enumerate_hc_parameters(p, n - p, max_twice):
                for target in signature_pairs(n):
                    for images in itertools.permutations(range(1, n + 1)):
                        yield lam, target, Permutation(images)


def slice_degree(lam: HCParameter) -> int:
    """Degree in u = e^{-x} of the deformed σ-slice along the ray X = x·sides.

    Each surviving factor contributes a^{k+1} (inside) or a^{k+1} with k < 0
    (outside); either way the power of u is |λ_i + 1/2| or |λ_i - 1/2|.
    """
    return sum((t + 1) // 2 if t > 0 else (-t - 1) // 2 for t in lam.twice)


@dataclass
class SliceReport:
    cases: int
    max_rel_error: float
    monotone: bool


def slice_error_scan(rng: np.random.Generator, points: int = 5,
                     schedule: Sequence[float] = DEFAULT_SCHEDULE, N: int = 512,
                     max_n: int = 2, max_twice: int = 1) -> SliceReport:
    """Extrapolated quadrature vs the symbolic σ-slice at random regular θ'."""
    from .transfer import sigma_slice

    thetas = {n: [TorusPoint(t) for t in
                  _regular_angles(n, points, rng)] for n in range(1, max_n + 1)}
    worst, cases, monotone = 0.0, 0, True
    for lam, target, sigma in slice_cases(max_n, max_twice):
        for tp in thetas[lam.n]:
            lim = transfer_quadrature_limit(lam, target, tp, sigma, schedule, N)
            sym = sigma_slice(lam, target, sigma, tp)
            worst = max(worst, abs(lim.value - sym) / max(1.0, abs(sym)))
            res = lim.residuals
            monotone &= all(b <= a + 1e-12 for a, b in zip(res, res[1:]))
            cases += 1
    return SliceReport(cases, worst, monotone)


def _regular_angles(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    from .roots import sample_regular_points

    if n == 1:
        return rng.uniform(0.0, 2.0 * np.pi, size=(count, 1))
    return sample_regular_points(build_root_system(n, 0), count, rng)


def oracle_report(N: int = 2048, seed: int = 0, points: int = 5,
                  schedule: Sequence[float] = DEFAULT_SCHEDULE, grid: int = 512,
                  omega_samples: int = 1000) -> dict:
    """All numerical oracles in one JSON-ready dict; ``ok`` is false past any tolerance."""
    rng = np.random.default_rng(seed)
    circle = circle_error_grid(N)
    slices = slice_error_scan(rng, points, schedule, grid)
    omega = omega_constant_table(rng, omega_samples)
    omega_ok = all(math.isfinite(r.measured_constant)
                   and r.measured_constant <= r.constant_bound for r in omega)
    report = {
        "circle": {"N": N, "cases": len(CIRCLE_KS) * len(CIRCLE_MODULI) * CIRCLE_PHASES,
                   "max_abs_error": circle, "tolerance": CIRCLE_TOL, "ok": circle <= CIRCLE_TOL},
        "slices": {"schedule": list(schedule), "grid": grid, "points": points,
                   "cases": slices.cases, "max_rel_error": slices.max_rel_error,
                   "residuals_monotone": slices.monotone, "tolerance": SLICE_TOL,
                   "ok": slices.max_rel_error <= SLICE_TOL},
        "omega": {"rows": [r.as_dict() for r in omega], "ok": omega_ok},
        "seed": seed,
    }
    report["ok"] = all(report[k]["ok"] for k in ("circle", "slices", "omega"))
    return report
