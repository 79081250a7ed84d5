"""Transfer of a U(p,q) discrete series character to the compact Cartan of U(r,s).

Two routes are computed independently:

* ``transfer_bruteforce`` sums the residue product over every σ ∈ S_{r+s} and
  β ∈ S_p × S_q, taking each circle integral by the Cauchy case analysis with
  the side of the unit circle fixed by the deformation region of σ;
* ``transfer_closed_form`` is the alternating S_r × S_s orbit sum of τ_{a,b}λ.

Both drop the global constant, so they are compared up to a scalar.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .algebra import (Deformation, Permutation, SignedExpSum, TorusPoint, Weight,
                      alternating_sum, block_permutations, expsum_equal_up_to_constant,
                      perm_sign, weight_permute)
from .characters import ds_numerator
from .theta import (HCParameter, SignaturePair, tau_permutation, theta_lift,
                    theta_signature)

CONTOUR_TOL = 1e-12


class OnContourError(ValueError):
    """The pole of a circle integral lies on the unit circle."""


def cauchy_circle_integral(k: int, a: complex, tol: float = CONTOUR_TOL) -> complex:
    """(1/2πi) ∮_{|z|=1} z^k / (z - a) dz for an integer k and |a| ≠ 1."""
    if abs(abs(a) - 1.0) <= tol:
        raise OnContourError(f"|a| = {abs(a)!r} lies on the unit circle")
    if k < 0 and a == 0:
        raise ValueError("a = 0 with k < 0 is a pole of order > 1 at the origin")
    if k >= 0 and abs(a) < 1:
        return complex(a) ** k
    if k < 0 and abs(a) > 1:
        return -(complex(a) ** k)
    return 0j


def residue_branch(k: int, inside: bool) -> int:
    """Sign left by the circle integral as |a| → 1 from the given side (0 if it vanishes)."""
    if k >= 0 and inside:
        return 1
    if k < 0 and not inside:
        return -1
    return 0


def e_sigma_pattern(sigma: Permutation, p: int, q: int, r: int, s: int) -> tuple[int, ...]:
    """Required sign of X_{σ(i)} for each i; +1 means |r_{σ(i)}| = e^{-X} < 1."""
    if sigma.n != p + q or r + s != p + q:
        raise ValueError("sizes do not match")
    return tuple(1 if (i <= p) == (sigma(i) <= r) else -1 for i in range(1, p + q + 1))


def residue_support_predicate(g: Permutation, lam: HCParameter,
                              target: SignaturePair | tuple[int, int]) -> bool:
    """True iff R(σ, λ, β) ≠ 0 where g = σ∘β⁻¹."""
    r, _ = target
    p = lam.p
    for i, t in enumerate(lam.twice, start=1):
        lands_first = g(i) <= r
        if (t > 0) == (i <= p):
            if not lands_first:
                return False
        elif lands_first:
            return False
    return True


@dataclass(frozen=True)
class ResidueTerm:
    sigma: Permutation
    beta: Permutation
    weight: Weight
    sign: int


def _check_target(lam: HCParameter, target) -> SignaturePair:
    r, s = target
    if r < 0 or s < 0 or r + s != lam.n:
        raise ValueError(f"target ({r},{s}) must be a signature of size {lam.n}")
    return SignaturePair(r, s)


def residue_terms(lam: HCParameter, target: SignaturePair | tuple[int, int]) -> Iterator[ResidueTerm]:
    """Nonzero terms of the (σ, β) double sum, one at a time (reference path)."""
    r, s = _check_target(lam, target)
    p, q, n = lam.p, lam.q, lam.n
    ks = [(t - 1) // 2 for t in lam.twice]  # k_i = λ_i - 1/2
    betas = [(b, b.inverse(), perm_sign(b)) for b in block_permutations((p, q))]
    for images in itertools.permutations(range(1, n + 1)):
        sigma = Permutation(images)
        pattern = e_sigma_pattern(sigma, p, q, r, s)
        side = {sigma(m): pattern[m - 1] > 0 for m in range(1, n + 1)}
        eps_sigma = perm_sign(sigma)
        for beta, beta_inv, eps_beta in betas:
            g = sigma * beta_inv
            sign = eps_sigma * eps_beta
            for i in range(1, n + 1):
                sign *= residue_branch(ks[i - 1], side[g(i)])
                if not sign:
                    break
            if not sign:
                continue
            # z^{k_i} at (r h')_{g(i)} in the limit, times the ∏ h'^{1/2} prefactor
            twice = [1] * n
            for i in range(1, n + 1):
                twice[g(i) - 1] += 2 * ks[i - 1]
            yield ResidueTerm(sigma, beta, Weight(tuple(twice)), sign)


@lru_cache(maxsize=None)
def _all_perms(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    signs = np.array([perm_sign(Permutation.from_zero_based(p)) for p in perms], dtype=np.int64)
    return perms, signs


@lru_cache(maxsize=None)
def _block_perms(p: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Zero-based inverses of S_p × S_q and their signs."""
    inv, signs = [], []
    for b in block_permutations((p, q)):
        inv.append([i - 1 for i in b.inverse().images])
        signs.append(perm_sign(b))
    return np.array(inv, dtype=np.int64).reshape(-1, p + q), np.array(signs, dtype=np.int64)


@lru_cache(maxsize=None)
def residue_support_table(p: int, q: int, r: int, s: int,
                          positive: tuple[bool, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Aggregated (g, coefficient) over all (σ, β) with g = σ∘β⁻¹, zero-based g.

    Whether a residue factor survives, and its sign, depend on λ only through
    the sign of each entry, so the full S_{r+s} × S_p × S_q enumeration is done
    once per sign pattern.
    """
    n = p + q
    S, eps_s = _all_perms(n)
    Binv, eps_b = _block_perms(p, q)
    # side[σ, m] = +1 iff X_{σ(m)} > 0 on the deformation region of σ
    side = np.where((np.arange(n) < p)[None, :] == (S < r), 1, -1)
    G = S[:, Binv]                        # G[σ, β, i] = σ(β⁻¹(i))
    inside = side[:, Binv] > 0            # side of X_{G[σ,β,i]}
    pos = np.asarray(positive, dtype=bool)[None, None, :]
    branch = np.where(pos & inside, 1, np.where(~pos & ~inside, -1, 0))
    coeff = eps_s[:, None] * eps_b[None, :] * np.prod(branch, axis=-1)
    G = G.reshape(-1, n)
    coeff = coeff.reshape(-1)
    keep = coeff != 0
    if not keep.any():
        return ()
    codes = G[keep] @ (n ** np.arange(n, dtype=np.int64))
    uniq, first, inverse = np.unique(codes, return_index=True, return_inverse=True)
    totals = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(totals, inverse, coeff[keep])
    rows = G[keep][first]
    return tuple((tuple(int(x) for x in row), int(c)) for row, c in zip(rows, totals) if c)


def transfer_bruteforce(lam: HCParameter, target: SignaturePair | tuple[int, int],
                        memo: bool = True) -> SignedExpSum:
    """Σ_{σ,β} ε(σ)ε(β)·(residue signs)·e^{(σβ⁻¹)λ}, global constant dropped.

    ``memo=False`` walks the terms one by one through :func:`residue_terms`.
    """
    r, s = _check_target(lam, target)
    n = lam.n
    if not memo:
        acc: dict[tuple[int, ...], int] = {}
        for term in residue_terms(lam, (r, s)):
            acc[term.weight.twice] = acc.get(term.weight.twice, 0) + term.sign
        return SignedExpSum(n, acc)
    table = residue_support_table(lam.p, lam.q, r, s, lam.positives_mask())
    ks = [t - 1 for t in lam.twice]       # 2(λ_i - 1/2)
    acc = {}
    for g, c in table:
        twice = [1] * n                   # ξ = Σ e_i / 2
        for i, j in enumerate(g):
            twice[j] += ks[i]
        key = tuple(twice)
        acc[key] = acc.get(key, 0) + c
    return SignedExpSum(n, acc)


def transfer_closed_form(lam: HCParameter, target: SignaturePair | tuple[int, int]) -> SignedExpSum:
    """Σ_{σ ∈ S_r×S_s} ε(σ) e^{σ(τ_{a,b}λ)}; the empty sum off the theta signature."""
    r, s = _check_target(lam, target)
    if SignaturePair(r, s) != theta_signature(lam):
        return SignedExpSum(lam.n)
    tau = tau_permutation(lam, (r, s))
    return alternating_sum(weight_permute(tau, lam.entries).twice, (r, s))


def weil_kernel_det(theta: TorusPoint, theta_p: TorusPoint, sigma: Permutation,
                    d: Deformation) -> complex:
    """∏_i (1 - h_i (r h')^{-1}_{σ(i)}) with h_i = e^{iθ_i}, (r h')_j = e^{-X_j + iθ'_j}."""
    n = len(theta)
    if not (len(theta_p) == len(d) == sigma.n == n):
        raise ValueError("length mismatch")
    val = 1.0 + 0j
    for i in range(1, n + 1):
        j = sigma(i)
        a = cmath.exp(-d.log_radii[j - 1] + 1j * theta_p.theta[j - 1])
        val *= 1.0 - cmath.exp(1j * theta.theta[i - 1]) / a
    return val


def sigma_slice(lam: HCParameter, target: SignaturePair | tuple[int, int], sigma: Permutation,
                theta_p: TorusPoint, d: Deformation | None = None) -> complex:
    """The σ-term of the transfer at θ', by residues.

    ε(σ) ∏_j e^{-iθ'_j/2} Σ_β ε(β) ∏_i (-a_{σ(i)}) · I(k_i, a_{σ(i)}), where
    a_j = e^{-X_j + iθ'_j}, k = β·λ - 1/2 and I is the Cauchy circle integral.
    With ``d`` the value at that deformation, otherwise the limit r → 1 from
    the deformation region of σ.
    """
    r, s = _check_target(lam, target)
    p, q, n = lam.p, lam.q, lam.n
    th = theta_p.theta
    pattern = e_sigma_pattern(sigma, p, q, r, s)
    side = [0] * n
    for m in range(1, n + 1):
        side[sigma(m) - 1] = pattern[m - 1]
    total = 0j
    for beta in block_permutations((p, q)):
        m_twice = weight_permute(beta, lam.entries).twice
        term = complex(perm_sign(beta))
        for i in range(1, n + 1):
            j = sigma(i) - 1
            k = (m_twice[i - 1] - 1) // 2
            if d is None:
                a = cmath.exp(1j * th[j])
                term *= -a * residue_branch(k, side[j] > 0) * a ** k
            else:
                a = cmath.exp(-d.log_radii[j] + 1j * th[j])
                term *= -a * cauchy_circle_integral(k, a)
            if term == 0:
                break
        total += term
    prefactor = perm_sign(sigma) * cmath.exp(-0.5j * math.fsum(th))
    return prefactor * total


def transfer_matches_theta_lift(lam: HCParameter) -> bool:
    """Brute-force transfer ∝ discrete-series numerator of θ(λ) on U(r,s)."""
    sig = theta_signature(lam)
    brute = transfer_bruteforce(lam, sig)
    return bool(brute) and expsum_equal_up_to_constant(brute, ds_numerator(theta_lift(lam)).numerator)
