from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbarnes._core import ConfigError, DomainError, PoleError
from qbarnes.classical import (
    EMConfig,
    barnes_polys,
    barnes_r1_scaled,
    barnes_zeta,
    hurwitz_direct,
    hurwitz_em,
)
from qbarnes.qnum import RationalPoly, bernoulli_poly

ZETA3 = 1.2020569031595942


def mp_barnes(r, s, z):
    # sum_n binom(n+r-1, r-1) (n+z)^(-s), with binom expanded in u = n + z
    s, z = mp.mpc(s), mp.mpc(z)
    u = [mp.mpf(1)]
    for k in range(1, r):
        # multiply by (u - z + k) / k
        nxt = [mp.mpf(0)] * (len(u) + 1)
        for i, c in enumerate(u):
            nxt[i + 1] += c / k
            nxt[i] += c * (k - z) / k
        u = nxt
    return complex(sum(c * mp.zeta(s - i, z) for i, c in enumerate(u)))


class TestHurwitz:
    def test_direct_examples(self):
        assert hurwitz_direct(2, 1).value == pytest.approx(math.pi**2 / 6, abs=1e-12)
        assert hurwitz_direct(2, 2).value == pytest.approx(math.pi**2 / 6 - 1, abs=1e-12)
        assert hurwitz_direct(4, 1).value == pytest.approx(math.pi**4 / 90, abs=1e-12)

    def test_direct_rejects_continued_region(self):
        with pytest.raises(DomainError):
            hurwitz_direct(0.5, 1)

    def test_em_examples(self):
        assert abs(hurwitz_em(2, 1).value - math.pi**2 / 6) < 1e-10
        assert abs(hurwitz_em(-1, 1).value + 1 / 12) < 1e-8
        assert abs(hurwitz_em(0, 0.7).value + 0.2) < 1e-10

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("z", [0.3, 1.0, 2.5])
    def test_negative_integers(self, n, z):
        assert hurwitz_em(1 - n, z).value == pytest.approx(-bernoulli_poly(n, z) / n, abs=1e-9)

    def test_pole(self):
        with pytest.raises(PoleError) as info:
            hurwitz_em(1 + 1e-10, 1)
        assert info.value.info["residue"] == 1.0

    def test_outside_region(self):
        with pytest.raises(ConfigError):
            hurwitz_em(-9, 1, EMConfig(M=8))

    def test_rejects_left_half_plane_z(self):
        with pytest.raises(DomainError):
            hurwitz_em(2, -0.5)

    @given(
        st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False),
        st.floats(0.05, 6),
        st.floats(-3, 3),
    )
    def test_against_mpmath(self, s, x, y):
        if abs(s - 1) < 1e-2 or s.real <= -5:
            return
        z = complex(x, y)
        ref = complex(mp.zeta(mp.mpc(s), mp.mpc(z)))
        assert abs(hurwitz_em(s, z).value - ref) <= 1e-10 * max(1.0, abs(ref))

    @pytest.mark.parametrize("s", [-3.5 + 1j, -0.5, 0.5 + 2j, 3 - 1j])
    def test_depth_independence(self, s):
        a = hurwitz_em(s, 0.8 + 0.4j, EMConfig(M=6)).value
        b = hurwitz_em(s, 0.8 + 0.4j, EMConfig(M=8)).value
        assert abs(a - b) < 1e-9

    @pytest.mark.parametrize("s", [1.6, 2.5 + 3j, 4.9 - 1j])
    def test_direct_continued_overlap(self, s):
        d, e = hurwitz_direct(s, 1.3), hurwitz_em(s, 1.3)
        assert abs(d.value - e.value) <= d.error + e.error + 1e-15


class TestBarnesPolys:
    def test_small_cases(self):
        assert barnes_polys(1).polys == (RationalPoly([1]),)
        assert barnes_polys(2).polys == (RationalPoly([1, -1]), RationalPoly([1]))
        half = Fraction(1, 2)
        assert barnes_polys(3).polys == (
            RationalPoly([1, -3 * half, half]),
            RationalPoly([3 * half, -1]),
            RationalPoly([half]),
        )

    @pytest.mark.parametrize("r", range(1, 8))
    def test_identity_exact(self, r):
        bp = barnes_polys(r)
        assert bp.polys[-1] == RationalPoly([Fraction(1, math.factorial(r - 1))])
        for n in range(10):
            for z in (Fraction(0), Fraction(2, 7), Fraction(-3)):
                assert bp.identity_residual(n, z) == 0


class TestBarnes:
    def test_r1_is_hurwitz(self):
        assert barnes_zeta(1, 0.3 + 2j, 0.7).value == hurwitz_em(0.3 + 2j, 0.7).value

    def test_collapse_examples(self):
        assert barnes_zeta(2, 3, 1).value == pytest.approx(math.pi**2 / 6, abs=1e-10)
        assert barnes_zeta(2, 4, 1).value == pytest.approx(ZETA3, abs=1e-10)

    @pytest.mark.parametrize("r", [2, 3, 4])
    @pytest.mark.parametrize("s,z", [(3.5, 1), (-1.5 + 1j, 0.4), (0.2 - 2j, 2 + 1j)])
    def test_against_mpmath(self, r, s, z):
        ref = mp_barnes(r, s, z)
        assert abs(barnes_zeta(r, s, z).value - ref) < 1e-9 * max(1, abs(ref))

    @pytest.mark.parametrize("r", [1, 2, 3])
    @pytest.mark.parametrize("s", [-2.5 + 0.5j, 0.5, 2.2 - 1j, 5.5])
    @pytest.mark.parametrize("z", [0.3, 1.2 + 0.5j])
    def test_ladder(self, r, s, z):
        a = barnes_zeta(r, s, z).value
        b = barnes_zeta(r, s, z + 1).value
        c = barnes_zeta(r - 1, s, z).value
        assert abs(a - b - c) < 1e-10 * max(1, abs(a))

    def test_left_half_plane_through_ladder(self):
        z = -1.5 + 0.5j
        ref = mp_barnes(2, 2.5, z)
        assert abs(barnes_zeta(2, 2.5, z).value - ref) < 1e-9 * abs(ref)

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_poles_with_level(self, s):
        with pytest.raises(PoleError) as info:
            barnes_zeta(3, s, 1.3)
        assert info.value.info["level"] == s - 1

    def test_double_sum_limit(self):
        s, z = 4.0, 0.6
        target = barnes_zeta(2, s, z).value

        def square(N):
            n = np.arange(float(N))
            return np.sum((n[:, None] + n[None, :] + z) ** -s)

        parts = [square(N) for N in (100, 200, 400)]
        gaps = [abs(p - target) for p in parts]
        assert gaps[0] > gaps[1] > gaps[2]
        # the square misses a mass of order N^(2-s), so eliminate the N^-2 term
        extrap = (4 * parts[2] - parts[1]) / 3
        assert abs(extrap - target) < 1e-6


class TestScaled:
    def test_unit_weight(self):
        assert barnes_r1_scaled(2.5, 0.8, 1.0).value == pytest.approx(hurwitz_em(2.5, 0.8).value, rel=1e-15)

    def test_examples(self):
        assert barnes_r1_scaled(2, 2, 2).value == pytest.approx(math.pi**2 / 24, abs=1e-10)
        assert barnes_r1_scaled(3, 1, 0.5).value == pytest.approx(8 * (ZETA3 - 1), abs=1e-10)

    def test_rejects_bad_weight(self):
        with pytest.raises(DomainError):
            barnes_r1_scaled(2, 1, -1.0)
