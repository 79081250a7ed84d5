"""Exact half-integer weights, permutations and signed exponential sums.

Everything here is immutable. Half-integers are stored doubled so that no
float ever enters the residue bookkeeping; only evaluation at a torus point
produces floating values.
"""
from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

Number = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of ½ℤ, stored as ``twice`` = 2x."""

    twice: int

    @classmethod
    def of(cls, value: Union[int, str, Fraction, "HalfInt"]) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        frac = Fraction(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise ValueError(f"{value} is not in (1/2)Z")
        return cls(int(doubled))

    def is_strict_half(self) -> bool:
        return self.twice % 2 != 0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __float__(self) -> float:
        return self.twice / 2

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        return format_twice(self.twice)


def format_twice(twice: int) -> str:
    """Render 2x as ``"k/2"`` for strict halves and as a plain integer otherwise."""
    if twice % 2:
        return f"{twice}/2"
    return str(twice // 2)


def parse_halfint_list(text: str) -> tuple[int, ...]:
    """Parse ``"1/2,-3/2"`` into doubled integers. Raises ValueError off ½ℤ."""
    if not text.strip():
        return ()
    return tuple(HalfInt.of(tok).twice for tok in text.split(","))


@dataclass(frozen=True, order=True)
class Weight:
    """A linear form Σ λ_i e_i with half-integer coordinates (stored doubled)."""

    twice: tuple[int, ...]

    @classmethod
    def of(cls, values: Iterable[Union[int, str, Fraction, HalfInt]]) -> "Weight":
        return cls(tuple(HalfInt.of(v).twice for v in values))

    @property
    def coords(self) -> tuple[HalfInt, ...]:
        return tuple(HalfInt(t) for t in self.twice)

    def __len__(self) -> int:
        return len(self.twice)

    def __add__(self, other: "Weight") -> "Weight":
        _check_len(self.twice, other.twice)
        return Weight(tuple(a + b for a, b in zip(self.twice, other.twice)))

    def __sub__(self, other: "Weight") -> "Weight":
        _check_len(self.twice, other.twice)
        return Weight(tuple(a - b for a, b in zip(self.twice, other.twice)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.twice))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.twice, dtype=float) / 2.0

    def to_strings(self) -> list[str]:
        return [format_twice(t) for t in self.twice]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


def _check_len(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} in one-line notation: ``images[i-1] = p(i)``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_zero_based(cls, images: Iterable[int]) -> "Permutation":
        return cls(tuple(i + 1 for i in images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        _check_len(self.images, other.images)
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return perm_sign(self)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.images)


def perm_sign(p: Permutation) -> int:
    """(-1)^(number of inversions), by cycle decomposition."""
    seen = [False] * p.n
    parity = 0
    for start in range(p.n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p.images[j] - 1
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def weight_permute(p: Permutation, w: Weight) -> Weight:
    """Coordinate action: ``result[p(i)] = w[i]``."""
    _check_len(p.images, w.twice)
    out = [0] * p.n
    for i, j in enumerate(p.images):
        out[j - 1] = w.twice[i]
    return Weight(tuple(out))


def block_permutations(sizes: Sequence[int]) -> Iterator[Permutation]:
    """All of S_{n1} × S_{n2} × ... acting on consecutive index blocks."""
    offsets = list(itertools.accumulate([0, *sizes]))
    blocks = [itertools.permutations(range(offsets[k] + 1, offsets[k + 1] + 1))
              for k in range(len(sizes))]
    for parts in itertools.product(*(list(b) for b in blocks)):
        yield Permutation(tuple(itertools.chain.from_iterable(parts)))


@dataclass(frozen=True)
class TorusPoint:
    """Angles θ ∈ ℝⁿ parameterizing a point of the double cover of the torus."""

    theta: tuple[float, ...]

    def __init__(self, theta: Iterable[float]):
        object.__setattr__(self, "theta", tuple(float(t) for t in theta))

    def __len__(self) -> int:
        return len(self.theta)

    def permute(self, p: Permutation) -> "TorusPoint":
        """Same coordinate action as on weights: ``result[p(i)] = θ[i]``."""
        _check_len(p.images, self.theta)
        out = [0.0] * p.n
        for i, j in enumerate(p.images):
            out[j - 1] = self.theta[i]
        return TorusPoint(out)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-t for t in self.theta)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.theta, dtype=float)


@dataclass(frozen=True)
class Deformation:
    """Log-radii X_j of a point r = (e^{-X_j}) strictly off the unit torus."""

    log_radii: tuple[float, ...]

    def __init__(self, log_radii: Iterable[float]):
        xs = tuple(float(x) for x in log_radii)
        if any(x == 0.0 or not math.isfinite(x) for x in xs):
            raise ValueError(f"deformation must be finite and nonzero in every coordinate: {xs}")
        object.__setattr__(self, "log_radii", xs)

    def __len__(self) -> int:
        return len(self.log_radii)

    def radii(self) -> np.ndarray:
        return np.exp(-np.asarray(self.log_radii))

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if x > 0 else -1 for x in self.log_radii)


def torus_char(theta: TorusPoint, w: Weight) -> complex:
    """ȟ^w = exp(i Σ w_j θ_j); single-valued on the double cover."""
    _check_len(theta.theta, w.twice)
    phase = math.fsum(t * th for t, th in zip(w.twice, theta.theta)) / 2.0
    return cmath.exp(1j * phase)


class SignedExpSum:
    """A finite sum Σ c_w e^{i w·θ} with exact coefficients.

    Keys are doubled weight tuples; zero coefficients are never stored.
    Supports addition, scalar normalization and coordinate permutation only.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Number] | None = None):
        self._n = n
        clean: dict[tuple[int, ...], Number] = {}
        for key, c in (terms or {}).items():
            if len(key) != n:
                raise ValueError(f"weight {key} has length {len(key)}, expected {n}")
            if c:
                clean[tuple(key)] = c
        self._terms = clean

    @classmethod
    def from_weights(cls, n: int, items: Iterable[tuple[Weight, Number]]) -> "SignedExpSum":
        acc: dict[tuple[int, ...], Number] = {}
        for w, c in items:
            acc[w.twice] = acc.get(w.twice, 0) + c
        return cls(n, acc)

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> dict[Weight, Number]:
        return {Weight(k): c for k, c in self._terms.items()}

    def raw(self) -> dict[tuple[int, ...], Number]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedExpSum):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{Weight(k)}: {c}" for k, c in self.sorted_items())
        return f"SignedExpSum({{{body}}})"

    def coefficient(self, w: Weight) -> Number:
        return self._terms.get(w.twice, 0)

    def sorted_items(self) -> list[tuple[tuple[int, ...], Number]]:
        return sorted(self._terms.items())

    def __add__(self, other: "SignedExpSum") -> "SignedExpSum":
        if self._n != other._n:
            raise ValueError("length mismatch")
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return SignedExpSum(self._n, acc)

    def __neg__(self) -> "SignedExpSum":
        return SignedExpSum(self._n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "SignedExpSum") -> "SignedExpSum":
        return self + (-other)

    def scale(self, c: Number) -> "SignedExpSum":
        return SignedExpSum(self._n, {k: c * v for k, v in self._terms.items()})

    def permute(self, p: Permutation) -> "SignedExpSum":
        """Apply ``weight_permute(p, ·)`` to every weight."""
        _check_len(p.images, range(self._n))
        out = {}
        for key, c in self._terms.items():
            new = [0] * self._n
            for i, j in enumerate(p.images):
                new[j - 1] = key[i]
            out[tuple(new)] = c
        return SignedExpSum(self._n, out)

    def coefficient_bound(self) -> Number:
        """Σ|c_w|, the triangle-inequality bound for |value| on the torus."""
        return sum(abs(c) for c in self._terms.values())

    def weight_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        items = self.sorted_items()
        if not items:
            return np.zeros((0, self._n)), np.zeros(0)
        w = np.array([k for k, _ in items], dtype=float) / 2.0
        c = np.array([float(v) for _, v in items])
        return w, c

    def evaluate(self, theta: TorusPoint | np.ndarray) -> complex | np.ndarray:
        """Σ c_w exp(i w·θ). Accepts one point or an (m, n) array of angles."""
        arr = theta.as_array() if isinstance(theta, TorusPoint) else np.asarray(theta, float)
        w, c = self.weight_matrix()
        single = arr.ndim == 1
        pts = arr[None, :] if single else arr
        if pts.shape[-1] != self._n:
            raise ValueError(f"point has length {pts.shape[-1]}, expected {self._n}")
        vals = np.exp(1j * (pts @ w.T)) @ c if len(c) else np.zeros(len(pts), complex)
        return complex(vals[0]) if single else vals

    def normalize(self) -> "SignedExpSum":
        return expsum_normalize(self)

    def to_json_obj(self) -> list[dict]:
        return [{"weight": [format_twice(t) for t in k], "coeff": str(c)}
                for k, c in self.sorted_items()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, n: int, obj: list[dict]) -> "SignedExpSum":
        acc: dict[tuple[int, ...], Number] = {}
        for entry in obj:
            key = tuple(HalfInt.of(s).twice for s in entry["weight"])
            c = Fraction(entry["coeff"])
            acc[key] = acc.get(key, 0) + (int(c) if c.denominator == 1 else c)
        return cls(n, acc)

    @classmethod
    def from_json(cls, n: int, text: str) -> "SignedExpSum":
        return cls.from_json_obj(n, json.loads(text))


def expsum_normalize(s: SignedExpSum) -> SignedExpSum:
    """Divide by the coefficient of the lexicographically greatest weight."""
    if not s:
        raise ValueError("cannot normalize the empty sum")
    raw = s.raw()
    pivot = raw[max(raw)]
    return SignedExpSum(s.n, {k: Fraction(c) / pivot for k, c in raw.items()})


def expsum_equal_up_to_constant(s1: SignedExpSum, s2: SignedExpSum) -> bool:
    if not s1 and not s2:
        return True
    if not s1 or not s2 or s1.n != s2.n:
        return False
    a, b = s1.raw(), s2.raw()
    if a.keys() != b.keys():
        return False
    top = max(a)
    ca, cb = a[top], b[top]
    # cross-multiplied form of comparing the normalized maps
    return all(a[k] * cb == b[k] * ca for k in a)


@lru_cache(maxsize=None)
def block_perm_table(sizes: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """(zero-based inverse images, sign) for every element of S_{n1} × S_{n2} × ...

    Reading coordinates through the inverse gives ``weight_permute`` directly:
    ``result[j] = w[p⁻¹(j)]``.
    """
    table = []
    for p in block_permutations(sizes):
        inv = p.inverse()
        table.append((tuple(i - 1 for i in inv.images), perm_sign(p)))
    return tuple(table)


def alternating_sum(twice: tuple[int, ...], sizes: tuple[int, ...]) -> SignedExpSum:
    """Σ_{w ∈ S_{n1}×S_{n2}×...} ε(w) e^{w·λ} for λ given by doubled coordinates."""
    n = len(twice)
    acc: dict[tuple[int, ...], int] = {}
    for inv, sgn in block_perm_table(tuple(sizes)):
        key = tuple(twice[j] for j in inv)
        acc[key] = acc.get(key, 0) + sgn
    return SignedExpSum(n, acc)
