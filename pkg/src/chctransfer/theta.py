"""Harish-Chandra parameters of U(p,q) and their theta lifts to U(r,s)."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .algebra import Permutation, Weight, weight_permute


class InvalidParameter(ValueError):
    """Base class for rejected Harish-Chandra parameters."""

    name = "InvalidParameter"


class NonHalfInteger(InvalidParameter):
    name = "NonHalfInteger"


class NotDecreasing(InvalidParameter):
    name = "NotDecreasing"


class ZeroEntry(InvalidParameter):
    name = "ZeroEntry"


class Duplicate(InvalidParameter):
    name = "Duplicate"


@dataclass(frozen=True)
class SignaturePair:
    r: int
    s: int

    def __iter__(self):
        return iter((self.r, self.s))


@dataclass(frozen=True)
class HCParameter:
    """λ_{a,b} = (α | β | γ | δ): positive/negative parts of the two blocks."""

    p: int
    q: int
    entries: Weight
    a: int
    b: int

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def twice(self) -> tuple[int, ...]:
        return self.entries.twice

    def positives_mask(self) -> tuple[bool, ...]:
        return tuple(t > 0 for t in self.twice)

    def lowest_k_type(self) -> Weight:
        """ν = λ + ρ - 2ρ(𝔨); informational only."""
        from .roots import build_root_system

        rs = build_root_system(self.p, self.q)
        return Weight(tuple(l + r - 2 * k for l, r, k in
                            zip(self.twice, rs.rho.twice, rs.rho_compact.twice)))

    def __str__(self) -> str:
        w = self.entries.to_strings()
        return f"U({self.p},{self.q}) ({','.join(w[:self.p])} | {','.join(w[self.p:])})"


def validate_hc_parameter(raw: Weight | Sequence[int], p: int, q: int) -> HCParameter:
    """Check the block shape (positives before negatives in each block) and compute (a, b).

    ``raw`` may be a Weight or a sequence of doubled integers.
    """
    twice = raw.twice if isinstance(raw, Weight) else tuple(int(t) for t in raw)
    if p < 0 or q < 0:
        raise ValueError("signature entries must be nonnegative")
    if len(twice) != p + q:
        raise ValueError(f"expected {p + q} entries, got {len(twice)}")
    if any(t == 0 for t in twice):
        raise ZeroEntry(f"zero entry in {Weight(twice)}")
    if any(t % 2 == 0 for t in twice):
        raise NonHalfInteger(f"integer entry in {Weight(twice)}; entries must lie in Z+1/2")
    for block in (twice[:p], twice[p:]):
        if any(x <= y for x, y in zip(block, block[1:])):
            raise NotDecreasing(f"block {Weight(block)} is not strictly decreasing")
    if len(set(twice)) != len(twice):
        raise Duplicate(f"repeated entry across blocks in {Weight(twice)}")
    a = sum(1 for t in twice[:p] if t > 0)
    b = sum(1 for t in twice[p:] if t > 0)
    return HCParameter(p, q, Weight(twice), a, b)


def theta_signature(lam: HCParameter) -> SignaturePair:
    return SignaturePair(lam.a + lam.q - lam.b, lam.b + lam.p - lam.a)


def theta_parameter(lam: HCParameter) -> Weight:
    """λ'_{a,b} = (α, δ, γ, β)."""
    t, p, a, b = lam.twice, lam.p, lam.a, lam.b
    alpha, beta = t[:a], t[a:p]
    gamma, delta = t[p:p + b], t[p + b:]
    return Weight(alpha + delta + gamma + beta)


def theta_lift(lam: HCParameter) -> HCParameter:
    """The lifted parameter as a validated U(r,s) parameter."""
    sig = theta_signature(lam)
    return validate_hc_parameter(theta_parameter(lam), sig.r, sig.s)


def tau_permutation(lam: HCParameter, target: SignaturePair | tuple[int, int]) -> Permutation:
    """τ_{a,b} ∈ S_{r+s}, pinned to the identity on the stabilized index sets."""
    r, s = target
    if SignaturePair(r, s) != theta_signature(lam):
        raise ValueError(f"target ({r},{s}) is not the theta signature {theta_signature(lam)}")
    p, q, a, b = lam.p, lam.q, lam.a, lam.b
    n = p + q
    img = list(range(1, n + 1))

    def assign(src: range, dst: range) -> None:
        assert len(src) == len(dst)
        for i, j in zip(src, dst):
            img[i - 1] = j

    if r <= p + b:
        # r <= p: the transpositions (a+1, p+b+1)...(r, p+q); for p < r <= p+b the
        # same swap, now fixing {r+1..p+b} as well
        assign(range(a + 1, r + 1), range(p + b + 1, n + 1))
        assign(range(p + b + 1, n + 1), range(a + 1, r + 1))
    else:
        assign(range(a + 1, p + b + 1), range(r + 1, n + 1))
        assign(range(r + 1, n + 1), range(a + 1, p + b + 1))
    return Permutation(tuple(img))


def weyl_orbit_equal(mu: Weight, nu: Weight, mode: Literal["full", "block"] = "full",
                     r: int | None = None) -> bool:
    """Same W-orbit for W = S_n (full) or W = S_r × S_s (block)."""
    if len(mu) != len(nu):
        raise ValueError("length mismatch")
    if mode == "full":
        return Counter(mu.twice) == Counter(nu.twice)
    if mode == "block":
        if r is None:
            raise ValueError("block mode needs r")
        return (Counter(mu.twice[:r]) == Counter(nu.twice[:r])
                and Counter(mu.twice[r:]) == Counter(nu.twice[r:]))
    raise ValueError(f"unknown mode {mode!r}")


def tau_lambda(lam: HCParameter) -> Weight:
    sig = theta_signature(lam)
    return weight_permute(tau_permutation(lam, sig), lam.entries)


def half_integer_values(max_twice: int) -> list[int]:
    """Doubled values ±1, ±3, ..., ±max_twice (odd), in decreasing order."""
    odd = [t for t in range(1, max_twice + 1) if t % 2]
    return sorted([*odd, *(-t for t in odd)], reverse=True)


def enumerate_hc_parameters(p: int, q: int, max_twice: int) -> Iterator[HCParameter]:
    """All valid λ for U(p,q) with |λ_i| ≤ max_twice/2, in a fixed order."""
    values = half_integer_values(max_twice)
    for first in itertools.combinations(values, p):
        used = set(first)
        rest = [v for v in values if v not in used]
        for second in itertools.combinations(rest, q):
            yield validate_hc_parameter(first + second, p, q)


def signature_pairs(n: int) -> list[SignaturePair]:
    return [SignaturePair(r, n - r) for r in range(n + 1)]
