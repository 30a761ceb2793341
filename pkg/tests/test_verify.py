from __future__ import annotations

import math

import pytest

from qbarnes.verify import SUITES, Check, route_grid, run_suite, tgqn_log


@pytest.mark.parametrize("name", [n for n in SUITES if n != "qbinom"])
def test_suite_passes(name):
    checks = run_suite(name)
    assert checks
    bad = [c for c in checks if not c.passed]
    assert not bad, bad[0]


def test_qbinom_small():
    checks = run_suite("qbinom", l_max=4, m_max=4, n_max=4, r_max=3)
    assert [c.name for c in checks] == ["q-binom1", "q-binom2"]
    assert all(c.passed and c.residual == 0 for c in checks)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_route_grid_deterministic():
    assert route_grid(7) == route_grid(7)
    assert route_grid(7) != route_grid(8)
    for r, q, s, t, z in route_grid(7):
        assert t.real > r - 1 and z.real > 0 and q in (0.3, 0.5, 0.9)


def test_overrides_are_used():
    checks = run_suite("gauss-legendre", N=2, q=0.5)
    assert all(c.inputs["N"] == 2 and c.inputs["q"] == 0.5 for c in checks)
    assert max(c.residual for c in checks) < 1e-10


def test_failure_records_inputs():
    checks = run_suite("gauss-legendre", N=2, q=0.5, tol=-1.0)
    assert not checks[0].passed and "z" in checks[0].inputs


def test_tgqn_small():
    # only the k = 1 factor: q^-1 (log [1]_q - log q) with [1]_q = 1
    q = 0.5
    assert tgqn_log(q, 1) == pytest.approx(-math.log(q) / q)
    assert isinstance(run_suite("hurwitz")[0], Check)
