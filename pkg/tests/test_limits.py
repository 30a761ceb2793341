from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest

from qbarnes._core import DomainError
from qbarnes.classical import barnes_zeta, hurwitz_em
from qbarnes.limits import (
    DEFAULT_Q_GRID,
    SweepSpec,
    classify,
    conjecture_probe,
    dterm_limit_check,
    lattice_sum,
    limit_sweep,
)


class TestSpec:
    def test_default_grid(self):
        spec = SweepSpec(1, 2.0)
        assert spec.q_grid == DEFAULT_Q_GRID
        assert spec.q_grid[0] == 0.875 and spec.q_grid[-1] == 1 - 2**-13

    def test_grid_must_increase(self):
        with pytest.raises(DomainError):
            SweepSpec(1, 2.0, q_grid=(0.9, 0.8))

    def test_grid_inside_unit_interval(self):
        with pytest.raises(DomainError):
            SweepSpec(1, 2.0, q_grid=(0.5, 1.0))

    def test_rules(self):
        assert SweepSpec(1, 0.5, nu=2).t == -1.5
        assert SweepSpec(1, 0.5, rule=(2, -1)).t == 0


class TestClassify:
    def test_too_few_points(self):
        assert classify([0.9, 0.99], [1.0, 0.5], 1e-3) == ("inconclusive", None)

    def test_converging(self):
        qs = [1 - 2.0**-k for k in range(3, 10)]
        gaps = [(1 - q) for q in qs]
        cls, slope = classify(qs, gaps, 1e-3)
        assert cls == "converging" and slope == pytest.approx(-1.0)

    def test_diverging(self):
        qs = [1 - 2.0**-k for k in range(3, 10)]
        gaps = [(1 - q) ** -0.5 for q in qs]
        cls, slope = classify(qs, gaps, 1e-3)
        assert cls == "diverging" and slope == pytest.approx(0.5)

    def test_slow_decrease_not_converging(self):
        qs = [1 - 2.0**-k for k in range(3, 10)]
        gaps = [1.0 + (1 - q) for q in qs]
        assert classify(qs, gaps, 1e-3)[0] == "inconclusive"


class TestSweeps:
    def test_regular_point_r2(self):
        rep = limit_sweep(SweepSpec(2, 3.5, 1.0, 1))
        assert rep.classification == "converging"
        assert rep.target == pytest.approx(barnes_zeta(2, 3.5, 1).value)
        assert rep.final_gap < 1e-2

    def test_continued_region_r1(self):
        rep = limit_sweep(SweepSpec(1, -0.5, 1.0, 1))
        assert rep.classification == "converging"
        assert rep.target == pytest.approx(hurwitz_em(-0.5, 1).value)

    @pytest.mark.parametrize("r,nu,s", [(1, 2, 0.5 + 1j), (2, 2, 2 + 2j), (3, 1, 3.5)])
    def test_gap_first_order(self, r, nu, s):
        # gaps halve with 1 - q
        rep = limit_sweep(SweepSpec(r, s, 1.0, nu))
        assert rep.slope == pytest.approx(-1.0, abs=0.01)

    @pytest.mark.parametrize("rule", [(1, -0.5), (2, -1)])
    def test_divergence_off_the_admissible_rules(self, rule):
        rep = limit_sweep(SweepSpec(1, 0.25, 1.0, rule=rule))
        assert rep.classification == "diverging"
        # leading blow-up (1-q)^(s-1) / log q has log-slope 1 - s
        assert rep.slope == pytest.approx(0.75, abs=0.02)

    @pytest.mark.parametrize("rule", [(1, -0.5), (2, -1)])
    def test_pole_points_are_excluded(self, rule):
        # both rules send s = 0.5 to t = 0, a pole of the q-side at every q
        rep = limit_sweep(SweepSpec(1, 0.5, 1.0, rule=rule))
        assert all(row.gap is None and row.note.startswith("pole") for row in rep.rows)
        assert rep.classification == "inconclusive"
        assert any("excluded" in n for n in rep.notes)

    def test_scaled_weight_target(self):
        rep = limit_sweep(SweepSpec(1, 2.5, 1.0, 1, omega=(2.0,)))
        assert rep.classification == "converging"

    def test_no_target_for_general_weights(self):
        with pytest.raises(DomainError):
            limit_sweep(SweepSpec(2, 3.5, 1.0, 1, omega=(1.0, 2.0)))


class TestDTerms:
    def test_gaps_shrink(self):
        rows, _ = dterm_limit_check(2, None, 1, 2, 4)
        for attr in ("gap1", "gap2", "gap3"):
            gaps = [getattr(r, attr) for r in rows]
            assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert rows[-1].gap1 < 1e-3

    def test_second_block_example(self):
        rows, (l1, l2, l3) = dterm_limit_check(2, None, 1, 1, 3)
        gaps = [r.gap2 for r in rows]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_limit_targets(self):
        _, (l1, l2, _) = dterm_limit_check(2, None, 1, 2, 4, q_grid=(0.5,))
        # B2/2! (2)_1 + B3/3! (2)_2 ; B4/4! (2)_3 + B5/5! (2)_4
        assert l1 == pytest.approx(1 / 6)
        assert l2 == pytest.approx(-1 / 30 / 24 * 24)

    def test_targets_add_up(self):
        # leading + half + the three limits reproduce the Hurwitz value
        s, z = 2.0, 1.0
        _, (l1, l2, l3) = dterm_limit_check(s, None, z, 2, 4, q_grid=(0.5,))
        total = z ** (1 - s) / (s - 1) + 0.5 * z**-s + l1 + l2 + l3
        assert total == pytest.approx(math.pi**2 / 6, abs=1e-10)


class TestProbe:
    def test_lattice_sum_rational(self):
        # sum (n1 + 2 n2 + 1)^(-4) = sum_m (floor(m/2) + 1) (m + 1)^(-4)
        ref = mp.nsum(lambda m: (mp.floor(m / 2) + 1) * mp.power(m + 1, -4), [0, mp.inf])
        assert lattice_sum(4, 1, (1.0, 2.0)) == pytest.approx(complex(ref), abs=1e-8)

    def test_lattice_sum_unit(self):
        assert lattice_sum(4, 1, (1.0, 1.0)) == pytest.approx(barnes_zeta(2, 4, 1).value, abs=1e-8)

    def test_lattice_sum_needs_convergence(self):
        with pytest.raises(DomainError):
            lattice_sum(1.5, 1, (1.0, 2.0))

    @pytest.mark.parametrize("omega", [(1.0, math.sqrt(2)), (1.0, 2.0)])
    def test_comparison_mode(self, omega):
        (rep,) = conjecture_probe(2, omega, 1, [4.0])
        assert rep.mode == "comparison"
        assert rep.trend == "shrinking"
        assert rep.gaps[-1] < 1e-3

    def test_cauchy_mode(self):
        (rep,) = conjecture_probe(2, (1.0, math.sqrt(2)), 1, [-0.5])
        assert rep.mode == "cauchy" and rep.target is None
        assert len(rep.gaps) == len(rep.qs) - 1
        assert not hasattr(rep, "verdict")
