import math

import numpy as np
from hypothesis import given, settings, strategies as st

from chctransfer.algebra import TorusPoint, Weight, block_permutations, perm_sign
from chctransfer.characters import boundedness_scan, ds_evaluate, ds_numerator
from chctransfer.roots import SingularPointError, delta_psi, sample_regular_points
from chctransfer.theta import validate_hc_parameter

from strategies import hc_parameters

import pytest


def lam(text, p, q):
    return validate_hc_parameter(Weight.of(text.split(",")), p, q)


def test_numerator_examples():
    c = ds_numerator(lam("1/2,-1/2", 1, 1))
    assert c.numerator.raw() == {(1, -1): 1} and c.global_sign == -1
    c = ds_numerator(lam("3/2,1/2", 2, 0))
    assert c.numerator.raw() == {(3, 1): 1, (1, 3): -1} and c.global_sign == 1
    c = ds_numerator(lam("-1/2,1/2", 1, 1))
    assert len(c.numerator) == 1 and c.global_sign == -1


def test_evaluate_example():
    c = ds_numerator(lam("1/2,-1/2", 1, 1))
    assert abs(ds_evaluate(c, TorusPoint([math.pi, 0.0])) + 0.5) < 1e-15
    with pytest.raises(SingularPointError):
        ds_evaluate(c, TorusPoint([1.0, 1.0]))


@given(hc_parameters(max_n=5))
def test_numerator_size_and_orbit(x):
    num = ds_numerator(x).numerator
    assert len(num) == math.factorial(x.p) * math.factorial(x.q)
    orbit = {tuple(sorted(x.twice[:x.p])), tuple(sorted(x.twice[x.p:]))}
    for key in num.raw():
        assert {tuple(sorted(key[:x.p])), tuple(sorted(key[x.p:]))} == orbit


@given(hc_parameters(max_n=4))
def test_numerator_antisymmetry(x):
    num = ds_numerator(x).numerator
    for w in block_permutations((x.p, x.q)):
        assert num.permute(w) == num.scale(perm_sign(w))


@settings(max_examples=30)
@given(hc_parameters(max_n=4, min_n=2), st.integers(0, 2 ** 31))
def test_weyl_invariance_and_conjugation(x, seed):
    c = ds_numerator(x)
    pts = sample_regular_points(c.roots, 5, np.random.default_rng(seed))
    for pt in pts:
        v = ds_evaluate(c, pt)
        for w in block_permutations((x.p, x.q)):
            assert abs(ds_evaluate(c, TorusPoint(pt).permute(w)) - v) < 1e-8 * max(1, abs(v))
        assert abs(ds_evaluate(c, -pt) - np.conj(v)) < 1e-8 * max(1, abs(v))


@settings(max_examples=20)
@given(hc_parameters(max_n=4, min_n=2), st.integers(0, 2 ** 31))
def test_evaluate_matches_termwise_formula(x, seed):
    c = ds_numerator(x)
    pts = sample_regular_points(c.roots, 10, np.random.default_rng(seed))
    for pt in pts:
        terms = sum(perm_sign(w) * np.exp(1j * np.dot(
            [x.twice[w.inverse()(j) - 1] / 2 for j in range(1, x.n + 1)], pt))
            for w in block_permutations((x.p, x.q)))
        expect = c.global_sign * terms / delta_psi(c.roots, pt)
        got = ds_evaluate(c, pt)
        assert abs(got - expect) <= 1e-10 * max(1.0, abs(expect))


def test_boundedness_scan_examples():
    rng = np.random.default_rng(0)
    single = ds_numerator(lam("1/2,-1/2", 1, 1)).numerator
    assert abs(boundedness_scan(single, 200, rng) - 1.0) < 1e-12
    two = ds_numerator(lam("3/2,1/2", 2, 0)).numerator
    best = boundedness_scan(two, 2000, rng)
    assert 1.9 < best <= 2.0 + 1e-12
