"""Root data of u(p,q), strongly orthogonal root sets and Weyl denominators."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import TorusPoint, Weight

REGULARITY_TOL = 1e-9


class SingularPointError(ValueError):
    """A torus point (or Cartan coordinate) lies on a root hyperplane."""


class PositivityViolation(ArithmeticError):
    """The η-determinant came out non-real or non-positive."""


@dataclass(frozen=True)
class RootSystem:
    n: int
    split: tuple[int, int]
    positive_roots: tuple[tuple[int, int], ...]
    compact_flags: tuple[bool, ...]
    rho: Weight
    rho_compact: Weight

    @property
    def p(self) -> int:
        return self.split[0]

    @property
    def q(self) -> int:
        return self.split[1]

    def compact_roots(self) -> list[tuple[int, int]]:
        return [r for r, c in zip(self.positive_roots, self.compact_flags) if c]

    def noncompact_roots(self) -> list[tuple[int, int]]:
        return [r for r, c in zip(self.positive_roots, self.compact_flags) if not c]

    def root_differences(self, theta: np.ndarray) -> np.ndarray:
        """α(θ) = θ_i - θ_j for every positive root, along the last axis."""
        i, j = _root_index_arrays(self.n)
        return theta[..., i] - theta[..., j]


@lru_cache(maxsize=None)
def _root_index_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not pairs:
        return np.zeros(0, int), np.zeros(0, int)
    a = np.array(pairs)
    return a[:, 0], a[:, 1]


def _half_sum(n: int, roots) -> Weight:
    twice = [0] * n
    for i, j in roots:
        twice[i - 1] += 1
        twice[j - 1] -= 1
    return Weight(tuple(twice))


@lru_cache(maxsize=None)
def build_root_system(p: int, q: int) -> RootSystem:
    if p < 0 or q < 0:
        raise ValueError("signature entries must be nonnegative")
    n = p + q
    if n == 0:
        raise ValueError("U(0,0) has no root system")
    roots = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    compact = tuple((i <= p) == (j <= p) for i, j in roots)
    rho = _half_sum(n, roots)
    rho_k = _half_sum(n, [r for r, c in zip(roots, compact) if c])
    return RootSystem(n, (p, q), roots, compact, rho, rho_k)


@dataclass(frozen=True)
class StronglyOrthogonalSet:
    index: int
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class CartanShape:
    compact_circles: int
    hyperbolic_pairs: int


def strongly_orthogonal_sets(p: int, q: int) -> list[StronglyOrthogonalSet]:
    """S_0 = ∅ ⊂ S_1 ⊂ ... with S_i = {e_t - e_{p+t} : t ≤ i}, one per Cartan class."""
    m = min(p, q)
    return [StronglyOrthogonalSet(i, tuple((t, p + t) for t in range(1, i + 1)))
            for i in range(m + 1)]


def cartan_shape(s: StronglyOrthogonalSet, n: int) -> CartanShape:
    k = len(s)
    if 2 * k > n:
        raise ValueError(f"{k} hyperbolic pairs do not fit in rank {n}")
    return CartanShape(n - 2 * k, k)


def _theta_array(theta: TorusPoint | np.ndarray) -> np.ndarray:
    return theta.as_array() if isinstance(theta, TorusPoint) else np.asarray(theta, float)


def delta_psi(rs: RootSystem, theta: TorusPoint | np.ndarray) -> complex | np.ndarray:
    """∏_{α>0} (e^{iα(θ)/2} - e^{-iα(θ)/2}) = ∏ 2i·sin(α(θ)/2)."""
    arr = _theta_array(theta)
    val = np.prod(2j * np.sin(rs.root_differences(arr) / 2.0), axis=-1)
    return complex(val) if arr.ndim == 1 else val


def delta_phi(rs: RootSystem, theta: TorusPoint | np.ndarray) -> complex | np.ndarray:
    """Same product over Φ = -Ψ, i.e. (-1)^{|Ψ|} Δ_Ψ."""
    sign = -1 if len(rs.positive_roots) % 2 else 1
    return sign * delta_psi(rs, theta)


def abs_delta_squared(rs: RootSystem, theta: TorusPoint | np.ndarray) -> float | np.ndarray:
    """∏_{α>0} |1 - e^{iα(θ)}|²."""
    arr = _theta_array(theta)
    val = np.prod(np.abs(1.0 - np.exp(1j * rs.root_differences(arr))) ** 2, axis=-1)
    return float(val) if arr.ndim == 1 else val


def weyl_D_sqrt(rs: RootSystem, theta: TorusPoint | np.ndarray) -> float | np.ndarray:
    """|D(ȟ)|^{1/2} = ∏_{α>0} |1 - e^{iα(θ)}|."""
    arr = _theta_array(theta)
    val = np.prod(np.abs(1.0 - np.exp(1j * rs.root_differences(arr))), axis=-1)
    return float(val) if arr.ndim == 1 else val


def is_regular(rs: RootSystem, theta: TorusPoint | np.ndarray, tol: float = REGULARITY_TOL) -> bool:
    return bool(weyl_D_sqrt(rs, theta) > tol)


def eta_root_list(k: int, n: int) -> list[tuple[int, int]]:
    """Positive roots e_i - e_j of the nilradical attached to S_k placed at the end."""
    first = [(i, j) for i in range(1, k + 1) for j in range(k + 1, n - k + 1)]
    second = [(i, j) for i in range(k + 1, n - k + 1) for j in range(n - k + 1, n + 1)]
    return first + second


def eta_positivity(k: int, signature: tuple[int, int], theta: list[float], X: list[float],
                   t: list[float], tol: float = 1e-10) -> float:
    """det(Id - Ad(h))|_η'(S_k) on the Cartan with S_k = {e_i - e_{n-k+i}}.

    The point has diagonal (e^{iθ_1-X_1},..,e^{iθ_k-X_k}, e^{it_1},..,e^{it_{n-2k}},
    e^{iθ_1+X_1},..,e^{iθ_k+X_k}); the product Π(1 - h^{-α}) over the root list
    pairs off into squared moduli, so the value is real and positive.
    """
    r, s = signature
    n = r + s
    if not 1 <= k <= min(r, s):
        raise ValueError(f"k={k} outside 1..min(r,s)={min(r, s)}")
    if len(theta) != k or len(X) != k or len(t) != n - 2 * k:
        raise ValueError("coordinate lengths must be (k, k, n-2k)")
    h = ([cmath.exp(1j * th - x) for th, x in zip(theta, X)]
         + [cmath.exp(1j * a) for a in t]
         + [cmath.exp(1j * th + x) for th, x in zip(theta, X)])
    val = 1.0 + 0j
    for i, j in eta_root_list(k, n):
        val *= 1.0 - h[j - 1] / h[i - 1]
    if abs(val) <= tol:
        raise SingularPointError(f"singular point: |det| = {abs(val):.3e}")
    if abs(val.imag) > tol * max(1.0, abs(val)):
        raise PositivityViolation(f"imaginary part {val.imag:.3e} is not negligible")
    if val.real <= 0:
        raise PositivityViolation(f"value {val.real} is not positive")
    return val.real


def sample_regular_points(rs: RootSystem, count: int, rng: np.random.Generator,
                          min_D: float = 1e-6) -> np.ndarray:
    """Uniform angles on [0, 2π)^n, rejecting points with |D|^{1/2} ≤ ``min_D``."""
    out = []
    need = count
    while need > 0:
        pts = rng.uniform(0.0, 2.0 * math.pi, size=(max(2 * need, 16), rs.n))
        keep = pts[weyl_D_sqrt(rs, pts) > min_D]
        out.append(keep[:need])
        need -= len(out[-1])
    return np.concatenate(out)[:count]
