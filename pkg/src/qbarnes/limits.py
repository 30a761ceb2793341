"""q -> 1 experiments: convergence sweeps, D-term limits and probes for general weights.

A sweep evaluates the q-side on an increasing grid of q and compares with
the classical value.  Classification is heuristic by nature (a finite grid
cannot tell slow convergence from divergence) and is labelled as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate

from ._core import (
    DomainError,
    PoleError,
    QBarnesError,
    check_q,
    check_weights,
    unit_weights,
)
from .classical import EMConfig, barnes_r1_scaled, barnes_zeta, em_remainder
from .qnum import bernoulli_number, rising_factorial
from .qzeta import ContinuationParams, em_parts, qzeta_binomial_ac

__all__ = [
    "DEFAULT_Q_GRID",
    "SweepSpec",
    "SweepRow",
    "SweepReport",
    "limit_sweep",
    "classify",
    "DTermRow",
    "dterm_limit_check",
    "ProbeReport",
    "conjecture_probe",
    "lattice_sum",
]

DEFAULT_Q_GRID = tuple(1.0 - 2.0**-k for k in range(3, 14))
MIN_POINTS = 3


@dataclass(frozen=True)
class SweepSpec:
    """Where to sweep and which t-rule to use.

    The rule is ``t = a*s + b``; the default ``a = 1, b = -nu`` is the
    admissible family ``t = s - nu``.
    """

    r: int
    s: complex
    z: complex = 1.0
    nu: int = 1
    rule: tuple[complex, complex] | None = None
    omega: tuple[float, ...] | None = None
    q_grid: tuple[float, ...] = DEFAULT_Q_GRID
    tol: float = 1e-3

    def __post_init__(self):
        grid = tuple(float(q) for q in self.q_grid)
        for q in grid:
            check_q(q)
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise DomainError("q_grid must be strictly increasing")
        object.__setattr__(self, "q_grid", grid)
        if self.omega is not None:
            object.__setattr__(self, "omega", check_weights(self.omega, self.r))
        if self.nu < 1:
            raise DomainError("nu must be >= 1")

    @property
    def t_rule(self) -> tuple[complex, complex]:
        return self.rule if self.rule is not None else (1.0, -float(self.nu))

    @property
    def t(self) -> complex:
        a, b = self.t_rule
        return complex(a) * complex(self.s) + complex(b)


@dataclass(frozen=True)
class SweepRow:
    q: float
    value: complex | None
    target: complex | None
    gap: float | None
    note: str = ""


@dataclass(frozen=True)
class SweepReport:
    spec: SweepSpec
    rows: tuple[SweepRow, ...]
    target: complex | None
    classification: str
    slope: float | None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def gaps(self) -> list[float]:
        return [row.gap for row in self.rows if row.gap is not None]

    @property
    def final_gap(self) -> float | None:
        gaps = self.gaps
        return gaps[-1] if gaps else None


def _fit_slope(qs: Sequence[float], gaps: Sequence[float]) -> float | None:
    # slope of log(gap) against -log(1-q): positive means the gap grows as q -> 1
    pts = [(-math.log1p(-q), math.log(g)) for q, g in zip(qs, gaps) if g > 0]
    if len(pts) < 2:
        return None
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def classify(qs: Sequence[float], gaps: Sequence[float], tol: float) -> tuple[str, float | None]:
    """``converging`` / ``diverging`` / ``inconclusive`` from per-q gaps.

    Converging needs the last three gaps strictly decreasing and the final gap
    below ``10 * tol``; diverging needs a positive fitted log-gap slope over
    the upper half of the grid.
    """
    if len(gaps) < MIN_POINTS:
        return "inconclusive", None
    half = max(MIN_POINTS, len(gaps) // 2)
    slope = _fit_slope(qs[-half:], gaps[-half:])
    last = gaps[-3:]
    if last[0] > last[1] > last[2] and last[2] < 10.0 * tol:
        return "converging", slope
    if slope is not None and slope > 0:
        return "diverging", slope
    return "inconclusive", slope


def _classical_target(spec: SweepSpec, cfg: EMConfig | None) -> complex:
    cfg = cfg or EMConfig()
    if spec.omega is None or unit_weights(spec.omega):
        return barnes_zeta(spec.r, spec.s, spec.z, cfg).value
    if spec.r == 1:
        return barnes_r1_scaled(spec.s, spec.z, spec.omega[0], cfg).value
    raise DomainError("no classical target for r >= 2 with non-unit weights; use conjecture_probe")


def limit_sweep(spec: SweepSpec, cfg: EMConfig | None = None) -> SweepReport:
    """Compare ``zeta_{q,r}(s, t(s), z; omega)`` with the classical value across the q grid."""
    notes = []
    try:
        target = _classical_target(spec, cfg)
    except PoleError as exc:
        target = None
        notes.append(f"classical target is singular: {exc}")
    t = spec.t
    rows = []
    for q in spec.q_grid:
        try:
            v = qzeta_binomial_ac(spec.r, q, spec.s, t, spec.z, spec.omega).value
        except PoleError as exc:
            rows.append(SweepRow(q, None, target, None, f"pole: {exc}"))
            continue
        except QBarnesError as exc:
            rows.append(SweepRow(q, None, target, None, f"failed: {exc}"))
            continue
        gap = abs(v - target) if target is not None else None
        rows.append(SweepRow(q, v, target, gap))
    used = [row for row in rows if row.gap is not None]
    if len(used) < len(rows):
        notes.append(f"{len(rows) - len(used)} of {len(rows)} grid points excluded (pole or failure)")
    cls, slope = classify([r.q for r in used], [r.gap for r in used], spec.tol)
    if cls == "inconclusive" and len(used) < MIN_POINTS:
        notes.append(f"fewer than {MIN_POINTS} usable points: no classification possible")
    return SweepReport(spec, tuple(rows), target, cls, slope, tuple(notes))


@dataclass(frozen=True)
class DTermRow:
    q: float
    d1: complex
    d2: complex
    d3_residual: complex
    gap1: float
    gap2: float
    gap3: float


def _bernoulli_block(s: complex, z: complex, k_lo: int, k_hi: int) -> complex:
    total = 0j
    for k in range(k_lo, k_hi + 1):
        b = float(bernoulli_number(k + 1))
        if b:
            total += b / math.factorial(k + 1) * rising_factorial(s, k) * z ** (-s - k)
    return total


def dterm_limit_check(
    s: complex,
    t: complex | None,
    z: complex,
    N: int,
    M: int,
    q_grid: Sequence[float] = tuple(1.0 - 2.0**-k for k in range(3, 11)),
) -> tuple[list[DTermRow], tuple[complex, complex, complex]]:
    """Tabulate ``D^1``, ``D^2`` and the remainder ``D^3`` against their q -> 1 limits.

    ``D^3`` is taken as ``zeta_q - (leading + half + D^1 + D^2)``; its limit is
    the classical Euler-Maclaurin remainder.  ``t`` defaults to ``s - 1``.
    Returns the rows and the three classical targets.
    """
    s, z = complex(s), complex(z)
    t = s - 1.0 if t is None else complex(t)
    if z.real <= 0:
        raise DomainError("D-term limits need Re(z) > 0")
    cp = ContinuationParams(N=N, M=M)
    lim1 = _bernoulli_block(s, z, 1, N)
    lim2 = _bernoulli_block(s, z, N + 1, M)
    lim3 = em_remainder(s, z, M).value
    rows = []
    for q in q_grid:
        parts = em_parts(q, s, t, z, cp, include_d3=False)
        zq = qzeta_binomial_ac(1, q, s, t, z).value
        d3 = zq - (parts.leading + parts.half + parts.d1 + parts.d2)
        rows.append(
            DTermRow(q, parts.d1, parts.d2, d3, abs(parts.d1 - lim1), abs(parts.d2 - lim2), abs(d3 - lim3))
        )
    return rows, (lim1, lim2, lim3)


def _lattice_density(u: float, omega: Sequence[float]) -> float:
    # two leading terms of the density of {n . omega} at level u
    r = len(omega)
    lead = u ** (r - 1) / math.factorial(r - 1)
    sub = 0.5 * sum(omega) * u ** (r - 2) / math.factorial(r - 2) if r >= 2 else 0.0
    return (lead + sub) / math.prod(omega)


def lattice_sum(s: complex, z: complex, omega: Sequence[float], points: int = 2_000_000) -> complex:
    """Brute-force ``sum_n (n . omega + z)^(-s)`` for ``Re(s) > r`` plus an integral tail."""
    omega = tuple(float(w) for w in omega)
    r = len(omega)
    s, z = complex(s), complex(z)
    if s.real <= r:
        raise DomainError(f"lattice sum needs Re(s) > r = {r}")
    # pick the level cut R so the simplex holds about `points` lattice points
    R = (points * math.factorial(r) * math.prod(omega)) ** (1.0 / r)
    axes = [np.arange(int(R / w) + 1, dtype=float) * w for w in omega]
    grids = np.meshgrid(*axes, indexing="ij", sparse=True)
    level = sum(grids)
    mask = level < R
    vals = np.exp(-s * np.log(level[mask] + z))
    # smallest terms first
    partial = complex(np.sum(vals[np.argsort(np.abs(vals))]))

    def tail(part):
        def f(u):
            v = _lattice_density(u, omega) * np.exp(-s * np.log(u + z))
            return v.real if part == 0 else v.imag

        return integrate.quad(f, R, np.inf, epsabs=1e-15, epsrel=1e-12, limit=200)[0]

    return partial + complex(tail(0), tail(1))


@dataclass(frozen=True)
class ProbeReport:
    """Evidence table for one s value; ``mode`` is ``comparison`` or ``cauchy``."""

    s: complex
    mode: str
    qs: tuple[float, ...]
    values: tuple[complex | None, ...]
    target: complex | None
    gaps: tuple[float | None, ...]
    trend: str


def conjecture_probe(
    r: int,
    omega: Sequence[float],
    nu: int,
    s_list: Sequence[complex],
    z: complex = 1.0,
    q_grid: Sequence[float] = DEFAULT_Q_GRID,
) -> list[ProbeReport]:
    """q -> 1 evidence for general weights; never a verdict.

    For ``Re(s) > r`` the q-side is compared with a brute-force lattice sum.
    Elsewhere no classical value is available and only successive differences
    of the q-side (a Cauchy diagnostic) are reported.
    """
    omega = check_weights(omega, r)
    out = []
    for s in s_list:
        s = complex(s)
        vals = []
        for q in q_grid:
            try:
                vals.append(qzeta_binomial_ac(r, q, s, s - nu, z, omega).value)
            except PoleError:
                vals.append(None)
        if s.real > r:
            target = lattice_sum(s, z, omega)
            gaps = tuple(abs(v - target) if v is not None else None for v in vals)
            mode = "comparison"
        else:
            target = None
            gaps = tuple(
                abs(b - a) if a is not None and b is not None else None
                for a, b in zip(vals, vals[1:])
            )
            mode = "cauchy"
        good = [g for g in gaps if g is not None]
        if len(good) >= 3 and good[-3] > good[-2] > good[-1]:
            trend = "shrinking"
        elif len(good) >= 3 and good[-3] < good[-2] < good[-1]:
            trend = "growing"
        else:
            trend = "mixed"
        out.append(ProbeReport(s, mode, tuple(q_grid), tuple(vals), target, gaps, trend))
    return out
