from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbarnes._core import CapacityError, DomainError
from qbarnes.qnum import (
    RationalPoly,
    bernoulli_number,
    bernoulli_poly,
    complex_binomial,
    periodic_bernoulli,
    periodic_bernoulli_fourier,
    q_binomial_array,
    q_binomial_eval,
    q_binomial_exact,
    q_composition_sum,
    q_factorial,
    q_number,
    q_pochhammer,
    q_vandermonde_sum,
    rising_factorial,
    stirling_first,
)

Q = RationalPoly.monomial(1)


class TestQNumbers:
    def test_q_number_limit(self):
        assert abs(q_number(1 - 1e-9, 2.5) - 2.5) < 1e-7

    def test_q_number_integer(self):
        assert q_number(0.5, 3) == pytest.approx(1.75)

    def test_pochhammer_empty(self):
        assert q_pochhammer(0.3 + 1j, 0.5, 0) == 1

    def test_pochhammer_two_factors(self):
        assert q_pochhammer(0.5, 0.5, 2) == pytest.approx(0.375, abs=1e-15)

    def test_pochhammer_zero_factor(self):
        assert q_pochhammer(1.0, 0.7, 1) == 0

    def test_pochhammer_negative_m(self):
        with pytest.raises(DomainError):
            q_pochhammer(0.5, 0.5, -1)

    def test_q_factorial(self):
        assert q_factorial(0.5, 3) == pytest.approx(1.0 * 1.5 * 1.75)


class TestGaussianBinomials:
    def test_trivial(self):
        assert q_binomial_exact(5, 0) == RationalPoly([1])

    def test_three_choose_one(self):
        assert q_binomial_exact(3, 1) == RationalPoly([1, 1, 1])

    def test_four_choose_two(self):
        assert q_binomial_exact(4, 2) == RationalPoly([1, 1, 2, 1, 1])

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            q_binomial_exact(2, 3)

    @pytest.mark.parametrize("m", range(0, 31))
    def test_structure(self, m):
        for n in range(m + 1):
            p = q_binomial_exact(m, n)
            assert all(c.denominator == 1 and c >= 0 for c in p.coefficients)
            assert p.is_palindromic()
            assert p.degree == n * (m - n)
            if 0 < n < m:
                assert p == q_binomial_exact(m - 1, n - 1) + RationalPoly.monomial(n) * q_binomial_exact(m - 1, n)

    def test_eval_examples(self):
        assert q_binomial_eval(0.5, 2, 1) == 1.5
        assert q_binomial_eval(0.37, 9, 9) == 1.0
        assert q_binomial_eval(0.9, 10, 5) == pytest.approx(float(q_binomial_exact(10, 5)(Fraction(9, 10))), rel=1e-15)

    @pytest.mark.parametrize("q", [0.1, 0.5, 0.9, 0.99])
    def test_eval_within_four_ulps(self, q):
        qf = Fraction(q)
        for m in range(0, 61, 3):
            for n in range(0, m + 1, max(1, m // 5)):
                exact = q_binomial_exact(m, n)(qf)
                got = q_binomial_eval(q, m, n)
                assert abs(Fraction(got) - exact) <= 4 * Fraction(math.ulp(float(exact)))

    def test_array_matches_scalar(self):
        n = np.arange(20)
        arr = q_binomial_array(0.7, n, 3)
        ref = [q_binomial_eval(0.7, k + 3, 3) for k in n]
        assert np.allclose(arr, ref, rtol=1e-14)

    @pytest.mark.parametrize("qv", [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)])
    def test_inversion(self, qv):
        for r in range(1, 6):
            for n in range(0, 10):
                p = q_binomial_exact(n + r - 1, r - 1)
                assert p(1 / qv) == qv ** (-n * (r - 1)) * p(qv)


class TestSummationIdentities:
    def test_vandermonde_examples(self):
        assert q_vandermonde_sum(0, 1) == RationalPoly([1])
        assert q_vandermonde_sum(1, 1) == q_binomial_exact(2, 1)
        assert q_vandermonde_sum(3, 2) == q_binomial_exact(5, 2)

    def test_vandermonde_full_range(self):
        for l in range(16):
            for m in range(1, 16):
                assert q_vandermonde_sum(l, m) == q_binomial_exact(m + l, m)

    def test_composition_examples(self):
        assert q_composition_sum(0, 4) == RationalPoly([1])
        assert q_composition_sum(1, 2) == RationalPoly([0, 1, 1])
        assert q_composition_sum(2, 2) == Q**2 * q_binomial_exact(3, 1)

    def test_composition_full_range(self):
        for n in range(13):
            for r in range(1, 6):
                assert q_composition_sum(n, r) == Q**n * q_binomial_exact(n + r - 1, r - 1)

    def test_composition_cap(self):
        with pytest.raises(CapacityError):
            q_composition_sum(30, 11)


class TestFactorialNumbers:
    def test_rising_examples(self):
        assert rising_factorial(3, 0) == 1
        assert rising_factorial(1, 4) == 24
        assert rising_factorial(-2, 3) == 0

    def test_stirling_examples(self):
        assert (stirling_first(3, 3), stirling_first(3, 2), stirling_first(3, 1)) == (1, 3, 2)

    def test_stirling_out_of_range(self):
        with pytest.raises(DomainError):
            stirling_first(3, 4)

    def test_stirling_expands_rising_factorial(self):
        for l in range(11):
            for x in range(-5, 6):
                assert sum(stirling_first(l, j) * x**j for j in range(l + 1)) == rising_factorial(x, l)

    def test_complex_binomial(self):
        assert complex_binomial(3 + 1j, 0) == 1
        assert complex_binomial(2, 3) == 4
        assert complex_binomial(-1, 2) == 0
        assert complex_binomial(0.3 + 0.2j, 5) == pytest.approx(complex(mp.binomial(mp.mpc(4.3, 0.2), 5)), rel=1e-13)


class TestBernoulli:
    def test_examples(self):
        assert bernoulli_number(0) == 1
        assert bernoulli_number(1) == Fraction(-1, 2)
        assert bernoulli_number(2) == Fraction(1, 6)
        assert bernoulli_number(3) == 0

    def test_against_mpmath(self):
        for k in range(0, 41):
            assert float(bernoulli_number(k)) == pytest.approx(float(mp.bernoulli(k)), rel=1e-15, abs=0)

    def test_cap(self):
        with pytest.raises(CapacityError):
            bernoulli_number(65)

    def test_periodic_examples(self):
        assert periodic_bernoulli(1, 1.5) == 0
        assert periodic_bernoulli(0, 7.3) == 1
        assert periodic_bernoulli(2, 0.25) == pytest.approx(-1 / 48, abs=1e-16)

    def test_polynomial_against_mpmath(self):
        for m in range(8):
            for y in (0.0, 0.1, 0.5, 0.77):
                assert bernoulli_poly(m, y) == pytest.approx(float(mp.bernpoly(m, y)), abs=1e-14)

    @given(st.integers(0, 10), st.integers(-50 * 1024, 50 * 1024))
    def test_periodic_is_periodic(self, m, k):
        x = k / 1024  # dyadic, so x + 1 is exact
        assert periodic_bernoulli(m, x + 1.0) == periodic_bernoulli(m, x)

    def test_fourier_examples(self):
        assert periodic_bernoulli_fourier(2, 0.0, 10_000) == pytest.approx(1 / 6, abs=1e-4)
        assert abs(periodic_bernoulli_fourier(3, 0.5, 1000)) < 1e-6
        assert periodic_bernoulli_fourier(4, 0.3, 1000) == pytest.approx(periodic_bernoulli(4, 0.3), abs=1e-8)

    def test_fourier_rejects_small_m(self):
        with pytest.raises(DomainError):
            periodic_bernoulli_fourier(1, 0.2, 10)


@given(
    st.integers(0, 12),
    st.integers(0, 12),
    st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=40),
)
def test_qbinomial_symmetry_and_eval(m, n, qv):
    m, n = max(m, n), min(m, n)
    p = q_binomial_exact(m, n)
    assert p == q_binomial_exact(m, m - n)
    assert q_binomial_eval(float(qv), m, n) == pytest.approx(float(p(qv)), rel=1e-13)
