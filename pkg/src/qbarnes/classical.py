"""Hurwitz zeta via Euler-Maclaurin and Barnes zeta via the Stirling-polynomial reduction."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import integrate

from ._core import (
    DEFAULT_POLICY,
    POLE_TOL,
    ConfigError,
    DomainError,
    EvalResult,
    PoleError,
    TruncationPolicy,
    cpow,
    is_nonpositive_integer,
)
from .qnum import (
    BERNOULLI_CAP,
    RationalPoly,
    bernoulli_number,
    bernoulli_poly,
    rising_factorial,
    stirling_first,
)

__all__ = [
    "EMConfig",
    "BarnesPolys",
    "hurwitz_direct",
    "hurwitz_em",
    "em_remainder",
    "barnes_polys",
    "barnes_zeta",
    "barnes_r1_scaled",
]


@dataclass(frozen=True)
class EMConfig:
    """Euler-Maclaurin depth and tail handling.

    ``quad_cutoff`` is the integer X up to which the remainder integral is done
    by per-unit-interval quadrature; past X the remainder is expanded by
    repeated integration by parts. ``None`` picks X from ``s`` and ``M``.
    """

    M: int = 8
    quad_cutoff: int | None = None
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self):
        if self.M < 0:
            raise ConfigError("Euler-Maclaurin depth M must be >= 0")
        if self.M + 2 > BERNOULLI_CAP:
            raise ConfigError(f"M={self.M} needs Bernoulli numbers beyond the cap {BERNOULLI_CAP}")


DEFAULT_EM = EMConfig()

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_GL_NODES = 0.5 * (_GL_NODES + 1.0)
_GL_WEIGHTS = 0.5 * _GL_WEIGHTS


def _cpow_array(base: np.ndarray, expo: complex) -> np.ndarray:
    return np.exp(expo * np.log(base.astype(complex)))


def hurwitz_direct(s: complex, z: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """``sum_{n>=0} (n+z)^(-s)`` for ``Re(s) > 1``: partial sum plus integral tail.

    The tail past N is ``int_N^inf (x+z)^(-s) dx + f(N)/2 + s f(N)/(12 (N+z))``;
    N is picked so the first neglected correction is below ``policy.tol``.
    """
    s, z = complex(s), complex(z)
    if s.real <= 1.0:
        raise DomainError(f"the defining series needs Re(s) > 1 (got {s}); use hurwitz_em")
    if is_nonpositive_integer(z):
        raise PoleError(f"z = {z} is a nonpositive integer", z)
    sigma = s.real
    coef = abs(rising_factorial(s, 3)) / 720.0
    n_cut = (coef / policy.tol) ** (1.0 / (sigma + 2.0))
    N = int(min(max(32.0, n_cut, 2.0 * abs(s), 8.0 - z.real), policy.max_terms))
    n = np.arange(N, dtype=float)
    terms = _cpow_array(n + z, -s)
    partial = complex(np.sum(terms[::-1]))
    Nz = N + z
    fN = cpow(Nz, -s)
    tail = cpow(Nz, 1.0 - s) / (s - 1.0) + 0.5 * fN + s * fN / (12.0 * Nz)
    err = coef * abs(cpow(Nz, -s - 3.0)) + 1e-16 * N * abs(partial)
    return EvalResult(partial + tail, err, f"direct-series(N={N})")


def _interval_quad(p: int, a: complex, z: complex, k: int) -> tuple[complex, float]:
    # int_k^{k+1} B_p(x-k) (x+z)^(-a) dx
    if z.real + k >= 2.0:
        y = _GL_NODES
        vals = bernoulli_poly(p, y) * _cpow_array(k + y + z, -a)
        return complex(np.dot(_GL_WEIGHTS, vals)), 0.0

    def f(y):
        return bernoulli_poly(p, y) * cmath.exp(-a * cmath.log(k + y + z))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, 0.0, 1.0, complex_func=True, epsabs=1e-15, epsrel=1e-14, limit=400)
    return complex(val), float(abs(err))


def _remainder_integral(M: int, s: complex, z: complex, cfg: EMConfig) -> tuple[complex, float]:
    """``int_0^inf B~_{M+1}(x) (x+z)^(-s-M-1) dx`` and an error estimate."""
    p = M + 1
    a = s + M + 1
    K = cfg.quad_cutoff
    if K is None:
        K = 32 + int(math.ceil(abs(a)))
    total = 0j
    err = 0.0
    for k in range(K):
        v, e = _interval_quad(p, a, z, k)
        total += v
        err += e
    # past K: int_K^inf B~_p g = -sum_j B_{p+j} p!/(p+j)! (a)_{j-1} (K+z)^(-a-j+1)
    Kz = K + z
    base = cpow(Kz, -a)
    ratio_fact = 1.0
    poch = 1.0 + 0j
    prev = math.inf
    last = 0.0
    for j in range(1, BERNOULLI_CAP - p + 1):
        ratio_fact /= p + j
        if j > 1:
            poch *= a + j - 2
        b = bernoulli_number(p + j)
        if b == 0:
            continue
        term = -float(b) * ratio_fact * poch * base * Kz ** (-(j - 1))
        mag = abs(term)
        if mag > prev:
            break
        total += term
        prev = last = mag
        if mag < cfg.policy.tol * max(abs(total), 1e-300):
            break
    return total, err + last


def em_remainder(s: complex, z: complex, M: int, cfg: EMConfig = DEFAULT_EM) -> EvalResult:
    """``-(s)_{M+1}/(M+1)! int_0^inf B~_{M+1}(x) (x+z)^(-s-M-1) dx``."""
    s, z = complex(s), complex(z)
    integral, err = _remainder_integral(M, s, z, cfg)
    c = rising_factorial(s, M + 1) / math.factorial(M + 1)
    return EvalResult(-c * integral, abs(c) * err, f"em-remainder(M={M})")


def hurwitz_em(s: complex, z: complex, cfg: EMConfig = DEFAULT_EM) -> EvalResult:
    """Hurwitz zeta continued to ``Re(s) > -M`` by Euler-Maclaurin summation.

    Points with ``Re(z) < 1`` are first moved to ``z + m`` with the ladder
    ``zeta(s, z) = z^(-s) + zeta(s, z + 1)``: the correction terms scale like
    ``z^(-s-k)`` and cancel catastrophically for small z.
    """
    s, z = complex(s), complex(z)
    M = cfg.M
    if z.real <= 0:
        raise DomainError(f"Euler-Maclaurin continuation needs Re(z) > 0, got z = {z}")
    if abs(s - 1.0) < POLE_TOL:
        raise PoleError("Hurwitz zeta has a simple pole at s = 1 (residue 1)", s, residue=1.0)
    if s.real <= -M:
        raise ConfigError(f"Re(s) = {s.real} outside the region Re(s) > -M = {-M}; raise M")
    head = 0j
    while z.real < 1.0:
        head += cpow(z, -s)
        z += 1.0
    zs = cpow(z, -s)
    total = head + cpow(z, 1.0 - s) / (s - 1.0) + 0.5 * zs
    for k in range(1, M + 1):
        b = bernoulli_number(k + 1)
        if b:
            total += float(b) / math.factorial(k + 1) * rising_factorial(s, k) * zs * z ** (-k)
    rem = em_remainder(s, z, M, cfg)
    total += rem.value
    return EvalResult(total, rem.error + 1e-16 * abs(total), f"euler-maclaurin(M={M})")


@dataclass(frozen=True)
class BarnesPolys:
    """``P^l_r(z)`` for ``0 <= l <= r-1`` as exact polynomials in z."""

    r: int
    polys: tuple[RationalPoly, ...]

    def __call__(self, z) -> list:
        return [p(z) for p in self.polys]

    def identity_residual(self, n, z):
        """``sum_l P^l_r(z) (n+z)^l - binom(n+r-1, r-1)``; exact for rational n, z."""
        lhs = sum(p(z) * (n + z) ** l for l, p in enumerate(self.polys))
        rhs = rising_factorial(Fraction(n) + 1, self.r - 1) / math.factorial(self.r - 1)
        return lhs - rhs


@lru_cache(maxsize=None)
def barnes_polys(r: int) -> BarnesPolys:
    """``P^l_r(z) = 1/(r-1)! sum_{j=l}^{r-1} binom(j, l) s(r, j+1) (-z)^(j-l)``."""
    if r < 1:
        raise DomainError("r must be >= 1")
    norm = Fraction(1, math.factorial(r - 1))
    polys = []
    for l in range(r):
        coeffs = [Fraction(0)] * r
        for j in range(l, r):
            coeffs[j - l] += norm * math.comb(j, l) * stirling_first(r, j + 1) * (-1) ** (j - l)
        polys.append(RationalPoly(coeffs))
    return BarnesPolys(r, tuple(polys))


def _level_configs(r: int, cfg) -> list[EMConfig]:
    if cfg is None:
        return [DEFAULT_EM] * r
    if isinstance(cfg, EMConfig):
        return [cfg] * r
    cfg = list(cfg)
    if len(cfg) != r:
        raise ConfigError(f"need one EMConfig per level (r = {r}), got {len(cfg)}")
    return cfg


def _barnes_reduced(r: int, s: complex, z: complex, cfgs: list[EMConfig]) -> EvalResult:
    coeffs = barnes_polys(r)
    total = 0j
    err = 0.0
    for l, poly in enumerate(coeffs.polys):
        c = sum(float(a) * z**k for k, a in enumerate(poly.coefficients)) if len(poly) else 0.0
        if c == 0:
            continue
        try:
            h = hurwitz_em(s - l, z, cfgs[l])
        except PoleError as exc:
            raise PoleError(
                f"Barnes zeta pole at s = {l + 1} (from level l = {l})", s, level=l
            ) from exc
        total += c * h.value
        err += abs(c) * h.error
    return EvalResult(total, err, f"stirling-reduction(r={r})")


def barnes_zeta(
    r: int, s: complex, z: complex, cfg: EMConfig | Sequence[EMConfig] | None = None
) -> EvalResult:
    """Barnes ``zeta_r(s, z)`` with unit weights.

    For ``Re(z) > 0`` this is ``sum_l P^l_r(z) zeta(s-l, z)``; otherwise the
    ladder ``zeta_r(s,z) = zeta_r(s,z+1) + zeta_{r-1}(s,z)`` shifts z right,
    with ``zeta_0(s,z) = z^(-s)``.
    """
    if r < 0:
        raise DomainError("r must be >= 0")
    s, z = complex(s), complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"z = {z} is a nonpositive integer", z)
    if r == 0:
        return EvalResult(cpow(z, -s), 0.0, "zeta_0")
    cfgs = _level_configs(r, cfg)
    if z.real > 0:
        return _barnes_reduced(r, s, z, cfgs)
    a = barnes_zeta(r, s, z + 1.0, cfgs)
    b = barnes_zeta(r - 1, s, z, cfgs[: r - 1])
    return EvalResult(a.value + b.value, a.error + b.error, "ladder+" + a.method)


def barnes_r1_scaled(s: complex, z: complex, omega: float, cfg: EMConfig = DEFAULT_EM) -> EvalResult:
    """``zeta_1(s, z; omega) = omega^(-s) zeta(s, z/omega)``."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    h = hurwitz_em(s, complex(z) / omega, cfg)
    f = cpow(omega, -complex(s))
    return EvalResult(f * h.value, abs(f) * h.error, "scaled-" + h.method)
