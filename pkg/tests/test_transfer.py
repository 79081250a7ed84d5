import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chctransfer.algebra import (Deformation, Permutation, SignedExpSum, TorusPoint, Weight,
                                 block_permutations, expsum_equal_up_to_constant, perm_sign,
                                 weight_permute)
from chctransfer.characters import ds_numerator
from chctransfer.roots import build_root_system, sample_regular_points
from chctransfer.theta import (enumerate_hc_parameters, signature_pairs, tau_permutation,
                               theta_lift, theta_signature, validate_hc_parameter)
from chctransfer.transfer import (OnContourError, cauchy_circle_integral, e_sigma_pattern,
                                  residue_branch, residue_support_predicate, residue_terms,
                                  sigma_slice, transfer_bruteforce, transfer_closed_form,
                                  transfer_matches_theta_lift, weil_kernel_det)

from strategies import hc_parameters


def lam(text, p, q):
    return validate_hc_parameter(Weight.of(text.split(",")), p, q)


def test_cauchy_examples():
    assert cauchy_circle_integral(0, 0.5) == 1
    assert cauchy_circle_integral(-1, 2) == -0.5
    assert cauchy_circle_integral(3, 2) == 0
    assert cauchy_circle_integral(-2, 0.5) == 0
    with pytest.raises(OnContourError):
        cauchy_circle_integral(1, cmath.exp(0.3j))
    with pytest.raises(ValueError):
        cauchy_circle_integral(-1, 0)


def test_residue_branch_table():
    assert [residue_branch(k, inside) for k in (0, -1) for inside in (True, False)] == [1, 0, 0, -1]


def test_e_sigma_pattern_examples():
    idn = Permutation.identity
    assert e_sigma_pattern(idn(1), 0, 1, 0, 1) == (1,)
    assert e_sigma_pattern(idn(1), 0, 1, 1, 0) == (-1,)
    assert e_sigma_pattern(idn(2), 1, 1, 1, 1) == (1, 1)
    assert e_sigma_pattern(Permutation((2, 1)), 1, 1, 1, 1) == (-1, -1)


def test_predicate_examples():
    x = lam("1/2", 0, 1)
    assert residue_support_predicate(Permutation.identity(1), x, (0, 1))
    assert not residue_support_predicate(Permutation.identity(1), x, (1, 0))


def test_bruteforce_examples():
    x = lam("1/2", 0, 1)
    assert transfer_bruteforce(x, (0, 1)).raw() in ({(1,): 1}, {(1,): -1})
    assert not transfer_bruteforce(x, (1, 0))
    y = lam("1/2,-1/2", 1, 1)
    assert expsum_equal_up_to_constant(transfer_bruteforce(y, (2, 0)),
                                       transfer_closed_form(y, (2, 0)))
    with pytest.raises(ValueError):
        transfer_bruteforce(y, (1, 2))


def test_closed_form_examples():
    assert transfer_closed_form(lam("1/2", 0, 1), (0, 1)).raw() == {(1,): 1}
    y = lam("1/2,-1/2", 1, 1)
    assert transfer_closed_form(y, (2, 0)).raw() == {(1, -1): 1, (-1, 1): -1}
    assert not transfer_closed_form(y, (1, 1))


def test_matches_theta_lift_examples():
    assert transfer_matches_theta_lift(lam("1/2", 0, 1))
    assert transfer_matches_theta_lift(lam("1/2,-1/2", 1, 1))


def test_weil_kernel_examples():
    d = Deformation([math.log(2)])
    val = weil_kernel_det(TorusPoint([0.0]), TorusPoint([0.0]), Permutation.identity(1), d)
    assert abs(val + 1) < 1e-15
    far = Deformation([-40.0, -40.0])
    val = weil_kernel_det(TorusPoint([0.3, 1.0]), TorusPoint([2.0, 0.1]), Permutation((2, 1)), far)
    assert abs(val - 1) < 1e-12


def small_sweep(max_n, max_twice):
    for n in range(1, max_n + 1):
        for p in range(n + 1):
            yield from enumerate_hc_parameters(p, n - p, max_twice)


def test_term_level_predicate_oracle():
    # every nonzero residue product sits exactly on the predicate's support
    for n in range(1, 5):
        for p in range(n + 1):
            # one λ per sign pattern is enough: the branch depends on signs only
            seen = set()
            for x in enumerate_hc_parameters(p, n - p, 2 * n + 1):
                if x.positives_mask() in seen:
                    continue
                seen.add(x.positives_mask())
                for target in signature_pairs(n):
                    check_terms(x, target)


def check_terms(x, target):
    r, s = target
    n = x.n
    ks = [(t - 1) // 2 for t in x.twice]
    for images in itertools.permutations(range(1, n + 1)):
        sigma = Permutation(images)
        pattern = e_sigma_pattern(sigma, x.p, x.q, r, s)
        for beta in block_permutations((x.p, x.q)):
            g = sigma * beta.inverse()
            # I(k_i, a) at a radius on the side prescribed for X_{g(i)}
            prod = 1.0
            for i in range(1, n + 1):
                j = g(i)
                m = sigma.inverse()(j)
                a = 0.5 if pattern[m - 1] > 0 else 2.0
                prod *= cauchy_circle_integral(ks[i - 1], a)
            assert (prod != 0) == residue_support_predicate(g, x, target)


def test_term_level_oracle_five():
    x = lam("3/2,-1/2,5/2,1/2,-3/2", 2, 3)
    for target in signature_pairs(5):
        check_terms(x, target)


@settings(max_examples=40, deadline=None)
@given(hc_parameters(max_n=4, max_twice=9))
def test_memo_and_reference_paths_agree(x):
    for target in signature_pairs(x.n):
        assert transfer_bruteforce(x, target) == transfer_bruteforce(x, target, memo=False)


@settings(max_examples=60, deadline=None)
@given(hc_parameters(max_n=5, max_twice=13))
def test_aggregate_constant(x):
    # the dropped constant is p!q!(-1)^{n-a-b} ε(τ) exactly
    sig = theta_signature(x)
    brute = transfer_bruteforce(x, sig)
    closed = transfer_closed_form(x, sig)
    tau = tau_permutation(x, sig)
    c = math.factorial(x.p) * math.factorial(x.q) * (-1) ** (x.n - x.a - x.b) * perm_sign(tau)
    assert brute == closed.scale(c)


@settings(max_examples=60, deadline=None)
@given(hc_parameters(max_n=5, max_twice=13))
def test_vanishing_off_signature(x):
    sig = theta_signature(x)
    for target in signature_pairs(x.n):
        assert bool(transfer_bruteforce(x, target)) == (target == sig)


@settings(max_examples=40, deadline=None)
@given(hc_parameters(max_n=4, max_twice=9))
def test_transfer_numerator_antisymmetry(x):
    sig = theta_signature(x)
    num = transfer_bruteforce(x, sig)
    for w in block_permutations(tuple(sig)):
        assert num.permute(w) == num.scale(perm_sign(w))


@settings(max_examples=30, deadline=None)
@given(hc_parameters(max_n=4, max_twice=9), st.integers(0, 2 ** 31))
def test_slices_sum_to_bruteforce(x, seed):
    # Σ_σ slice(θ') = (-1)^n e^{-iΣθ'/2}∏a · brute(θ'), and ∏a = e^{iΣθ'} on the torus
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0, 2 * math.pi, size=(2, x.n))
    for target in signature_pairs(x.n):
        brute = transfer_bruteforce(x, target)
        for pt in pts:
            tp = TorusPoint(pt)
            total = sum(sigma_slice(x, target, Permutation(s), tp)
                        for s in itertools.permutations(range(1, x.n + 1)))
            expect = (-1) ** x.n * brute.evaluate(tp) if brute else 0
            assert abs(total - expect) < 1e-9 * max(1, len(brute))


@given(hc_parameters(max_n=3, max_twice=7), st.integers(0, 2 ** 31))
def test_finite_deformation_slice_approaches_limit(x, seed):
    rng = np.random.default_rng(seed)
    tp = TorusPoint(rng.uniform(0, 2 * math.pi, size=x.n))
    target = theta_signature(x)
    for images in itertools.permutations(range(1, x.n + 1)):
        sigma = Permutation(images)
        pat = e_sigma_pattern(sigma, x.p, x.q, *target)
        sides = [0] * x.n
        for m in range(1, x.n + 1):
            sides[sigma(m) - 1] = pat[m - 1]
        lim = sigma_slice(x, target, sigma, tp)
        near = sigma_slice(x, target, sigma, tp, Deformation([1e-9 * sd for sd in sides]))
        assert abs(near - lim) < 1e-6


def test_residue_terms_weights():
    x = lam("3/2,-1/2,5/2,-5/2", 2, 2)
    sig = theta_signature(x)
    for term in itertools.islice(residue_terms(x, sig), 50):
        g = term.sigma * term.beta.inverse()
        assert term.weight == weight_permute(g, x.entries)


def test_small_sweep_matches_lift():
    for x in small_sweep(3, 5):
        assert transfer_matches_theta_lift(x)
        brute = transfer_bruteforce(x, theta_signature(x))
        assert expsum_equal_up_to_constant(brute, ds_numerator(theta_lift(x)).numerator)
