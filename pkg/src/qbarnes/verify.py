"""Named identity suites; each check returns pass/fail with the inputs of any counterexample."""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ._core import PoleError, QBarnesError, cpow
from .classical import barnes_polys, hurwitz_em
from .qgamma import (
    QGammaContext,
    c_q,
    gamma_q_euler,
    gauss_legendre_check,
    log_qgamma,
    qgamma,
    qgamma_log_deriv,
)
from .qnum import (
    RationalPoly,
    q_binomial_exact,
    q_composition_sum,
    q_number,
    q_vandermonde_sum,
)
from .qzeta import (
    qbarnes_polys,
    qzeta_binomial_ac,
    qzeta_direct,
    qzeta_qbinom,
    qzeta_reduce,
)

__all__ = ["Check", "SUITES", "run_suite", "route_grid", "tgqn_log"]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    residual: float
    tol: float
    inputs: dict = field(default_factory=dict)


def _check(suite, name, residual, tol, **inputs) -> Check:
    residual = float(residual)
    return Check(suite, name, bool(residual <= tol), residual, tol, inputs)


def suite_qbinom(l_max: int = 15, m_max: int = 15, n_max: int = 12, r_max: int = 5, **_) -> list[Check]:
    out = []
    worst1 = None
    for l in range(l_max + 1):
        for m in range(1, m_max + 1):
            if q_vandermonde_sum(l, m) != q_binomial_exact(m + l, m):
                worst1 = worst1 or {"l": l, "m": m}
    out.append(Check("qbinom", "q-binom1", worst1 is None, 0.0 if worst1 is None else 1.0, 0.0, worst1 or {}))
    worst2 = None
    for n in range(n_max + 1):
        for r in range(1, r_max + 1):
            rhs = RationalPoly.monomial(n) * q_binomial_exact(n + r - 1, r - 1)
            if q_composition_sum(n, r) != rhs:
                worst2 = worst2 or {"n": n, "r": r}
    out.append(Check("qbinom", "q-binom2", worst2 is None, 0.0 if worst2 is None else 1.0, 0.0, worst2 or {}))
    return out


def route_grid(seed: int = 7, n: int = 100) -> list[tuple[int, float, complex, complex, complex]]:
    """Deterministic sample points ``(r, q, s, t, z)`` inside the region where every route converges."""
    rng = random.Random(seed)
    pts = []
    for _ in range(n):
        r = rng.randint(1, 3)
        q = rng.choice((0.3, 0.5, 0.9))
        s = complex(rng.uniform(-2.0, 3.0), rng.uniform(-2.0, 2.0))
        t = complex(r - 1 + rng.uniform(0.5, 3.0), rng.uniform(-1.0, 1.0))
        z = complex(rng.uniform(0.2, 2.5), rng.uniform(-1.0, 1.0))
        pts.append((r, q, s, t, z))
    return pts


ROUTES: dict[str, Callable] = {
    "direct": lambda r, q, s, t, z: qzeta_direct(r, q, s, t, z).value,
    "qbinom": lambda r, q, s, t, z: qzeta_qbinom(r, q, s, t, z).value,
    "reduce": lambda r, q, s, t, z: qzeta_reduce(r, q, s, t, z).value,
    "binomial-ac": lambda r, q, s, t, z: qzeta_binomial_ac(r, q, s, t, z).value,
}


def route_discrepancy(r, q, s, t, z) -> float:
    """Largest pairwise gap between the four routes, relative to ``max(1, |value|)``."""
    vals = [f(r, q, s, t, z) for f in ROUTES.values()]
    scale = max(1.0, max(abs(v) for v in vals))
    return max(abs(a - b) for a, b in itertools.combinations(vals, 2)) / scale


def suite_route_equiv(seed: int = 7, points: int = 100, tol: float = 1e-9, **_) -> list[Check]:
    out = []
    for r, q, s, t, z in route_grid(seed, points):
        d = route_discrepancy(r, q, s, t, z)
        out.append(_check("route-equiv", f"r={r},q={q}", d, tol, r=r, q=q, s=s, t=t, z=z))
    return out


def suite_ladder_zqr(tol: float = 1e-10, **_) -> list[Check]:
    out = []
    for r, q, s, t, z in route_grid(11, 20):
        lq = math.log(q)
        a = qzeta_binomial_ac(r, q, s, t, z).value
        b = qzeta_binomial_ac(r, q, s, t, z + 1.0).value
        c = cpow(q_number(q, z), -s) if r == 1 else qzeta_binomial_ac(r - 1, q, s, t, z).value
        res = abs(a - cmath.exp((t - r + 1) * lq) * b - c) / max(1.0, abs(a))
        out.append(_check("ladder-zqr", f"r={r},q={q}", res, tol, r=r, q=q, s=s, t=t, z=z))
    return out


_EXACT_Z = (Fraction(0), Fraction(1, 3), Fraction(-5, 2), Fraction(7))


def suite_barnes_polys(**_) -> list[Check]:
    out = []
    for r in range(1, 7):
        polys = barnes_polys(r)
        bad = [(n, z) for n in range(12) for z in _EXACT_Z if polys.identity_residual(n, z) != 0]
        out.append(Check("barnes-polys", f"P_r identity r={r}", not bad, float(len(bad)), 0.0, {"r": r}))
    for r, q in itertools.product(range(1, 5), (0.3, 0.7)):
        res = max(abs(qbarnes_polys(r, q).identity_residual(n, 0.37 + 0.2j)) for n in range(10))
        out.append(_check("barnes-polys", f"P_q,r identity r={r},q={q}", res, 1e-9, r=r, q=q))
    return out


def suite_hurwitz(**_) -> list[Check]:
    out = [
        _check("hurwitz", "zeta(2,1)", abs(hurwitz_em(2, 1).value - math.pi**2 / 6), 1e-10, s=2, z=1),
        _check("hurwitz", "zeta(-1,1)", abs(hurwitz_em(-1, 1).value + 1.0 / 12.0), 1e-8, s=-1, z=1),
    ]
    for z in (0.1, 0.5, 1.0, 1.7, 3.0, 0.3 + 0.4j, 2 - 1j, 5.5, 0.05, 1 + 3j):
        out.append(_check("hurwitz", "zeta(0,z)", abs(hurwitz_em(0, z).value - (0.5 - z)), 1e-10, s=0, z=z))
    return out


def tgqn_log(q: float, n: int) -> float:
    """``log Gamma~_q(n+1)`` from the finite product formula."""
    lq = math.log(q)
    return sum(q**-k * (math.log(q_number(q, k).real) - k * lq) for k in range(1, n + 1))


def suite_tgqn(tol: float = 1e-10, **_) -> list[Check]:
    out = []
    for q in (0.3, 0.5, 0.9):
        ctx = QGammaContext(q)
        out.append(_check("tGqn", f"Gamma(1) q={q}", abs(qgamma(ctx, 1.0) - 1.0), 0.0, q=q))
        for n in range(1, 9):
            # relative error of Gamma is the absolute error of its log
            res = abs(log_qgamma(ctx, n + 1) - tgqn_log(q, n))
            out.append(_check("tGqn", f"n={n},q={q}", res, tol, q=q, n=n))
    return out


def suite_ladder_tgq(tol: float = 1e-10, **_) -> list[Check]:
    out = []
    for q in (0.3, 0.5, 0.9):
        ctx = QGammaContext(q)
        lq = math.log(q)
        for z in (0.1, 0.5, 1.3, 2.7, 4.9, 0.5 + 1j, 3.2 - 0.7j):
            z = complex(z)
            qmz = cmath.exp(-z * lq)
            step = qmz * cmath.log(qmz * q_number(q, z))
            res = abs(log_qgamma(ctx, z + 1.0) - log_qgamma(ctx, z) - step)
            out.append(_check("ladder-tGq", f"q={q},z={z}", res, tol, q=q, z=z))
    return out


def suite_gauss_legendre(N: int | None = None, q: float | None = None, tol: float = 1e-10, **_) -> list[Check]:
    Ns = (N,) if N is not None else (1, 2, 3)
    qs = (q,) if q is not None else (0.3, 0.5, 0.8)
    out = []
    for n, qq in itertools.product(Ns, qs):
        for z in (0.4, 1.0, 1.3 + 0.2j, 2.1):
            res = gauss_legendre_check(qq, n, z)
            out.append(_check("gauss-legendre", f"N={n},q={qq},z={z}", res, tol, N=n, q=qq, z=z))
    return out


def suite_q_lerch(seed: int = 3, points: int = 20, tol: float = 1e-10, **_) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for _ in range(points):
        q = rng.uniform(0.1, 0.95)
        z = complex(rng.uniform(0.2, 4.0), rng.uniform(-1.0, 1.0))
        lhs = gamma_q_euler(q, z) + (q - 1.0) / math.log(q) * qgamma_log_deriv(q, z)
        res = abs(lhs - c_q(q, z))
        out.append(_check("q-lerch", f"q={q:.4f}", res, tol, q=q, z=z))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "qbinom": suite_qbinom,
    "route-equiv": suite_route_equiv,
    "ladder-zqr": suite_ladder_zqr,
    "barnes-polys": suite_barnes_polys,
    "hurwitz": suite_hurwitz,
    "tGqn": suite_tgqn,
    "ladder-tGq": suite_ladder_tgq,
    "gauss-legendre": suite_gauss_legendre,
    "q-lerch": suite_q_lerch,
}


def run_suite(name: str, **kwargs) -> list[Check]:
    """Run one suite (or ``all``); evaluation failures are recorded as failed checks."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
        try:
            out.extend(SUITES[n](**{k: v for k, v in kwargs.items() if v is not None}))
        except (QBarnesError, PoleError) as exc:
            out.append(Check(n, "evaluation", False, math.inf, 0.0, {"error": str(exc)}))
    return out
