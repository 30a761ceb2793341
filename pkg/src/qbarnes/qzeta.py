"""q-analogues of the Barnes multiple zeta function.

Every evaluator returns an :class:`EvalResult`.  The binomial-theorem
continuation :func:`qzeta_binomial_ac` is the workhorse: it is valid for all
complex ``s`` and ``t`` off the pole lattice.  The defining series, the
q-binomial single sum and the reduction to depth one are kept as independent
routes so they can be checked against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import signal

from ._core import (
    DEFAULT_POLICY,
    POLE_TOL,
    BranchError,
    CapacityError,
    ConfigError,
    DomainError,
    EvalResult,
    PoleError,
    TruncationPolicy,
    check_q,
    check_weights,
    cpow,
    is_nonpositive_integer,
    one_minus_qpow,
    unit_weights,
)
from .qnum import (
    bernoulli_number,
    q_binomial_array,
    q_factorial,
    q_number,
    rising_factorial,
)
from .special import IncompleteBetaArgs, incomplete_beta_continued, incomplete_beta_direct

__all__ = [
    "Weights",
    "QBarnesPolys",
    "LeibnizCoeffs",
    "ContinuationParams",
    "qzeta_direct",
    "qzeta_qbinom",
    "qbarnes_polys",
    "qzeta_reduce",
    "leibniz_coeffs",
    "qzeta1_em",
    "em_parts",
    "qzeta_binomial_ac",
    "qzeta_ladder",
    "qzeta_nu",
    "qzeta_special_value",
    "qzeta_nu_real_poles",
]

EM_POLE_TOL = 1e-6
_ROUND = 2.2e-16


@dataclass(frozen=True)
class Weights:
    """Positive Barnes weights ``(omega_1, ..., omega_r)``."""

    omega: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "omega", check_weights(self.omega, len(self.omega)))

    @classmethod
    def unit(cls, r: int) -> "Weights":
        return cls((1.0,) * r)

    @property
    def r(self) -> int:
        return len(self.omega)

    @property
    def is_unit(self) -> bool:
        return unit_weights(self.omega)

    def __iter__(self):
        return iter(self.omega)

    def __len__(self) -> int:
        return len(self.omega)


def _weights(omega, r: int) -> tuple[float, ...]:
    if isinstance(omega, Weights):
        omega = omega.omega
    return check_weights(omega, r)


def _qnum_pow(log_q: float, x, s: complex):
    """``[x]_q ** (-s)`` on arrays, principal branch."""
    base = one_minus_qpow(log_q, x) / -math.expm1(log_q)
    base = np.asarray(base, dtype=complex)
    if np.any(base == 0):
        raise PoleError("[x]_q vanishes at a lattice point", complex(np.ravel(x)[np.argmin(np.abs(base))]))
    s = complex(s)
    if not (s.imag == 0 and s.real.is_integer()):
        on_cut = (base.imag == 0) & (base.real < 0)
        if np.any(on_cut):
            raise BranchError("[x]_q lies on the negative real axis for a non-integer exponent")
    return np.exp(-s * np.log(base))


def _level_bound(rate: float, r: int, policy: TruncationPolicy, scale: float) -> int:
    """Smallest L with ``(L + r)^(r-1) rate^L / (1 - rate) * scale < tol``."""
    if not 0.0 <= rate < 1.0:
        raise DomainError("series does not converge geometrically")
    log_target = math.log(policy.tol * 0.1) - math.log(max(scale, 1e-300)) + math.log1p(-rate)
    L = 8
    while (r - 1) * math.log(L + r) + L * math.log(rate) > log_target:
        L = int(L * 1.25) + 8
        if L > policy.max_terms:
            raise CapacityError(
                f"defining series needs more than max_terms = {policy.max_terms} levels"
            )
    return L


def _power_scale(q: float, s: complex, z: complex) -> float:
    # worst ratio |[x]_q^(-s)| / |[z]_q^(-s)| over x = z + n, n >= 0
    zq = q_number(q, z)
    far = abs((1.0 - q) * zq)
    ratio = max(1.0, far ** complex(s).real, far ** -complex(s).real)
    return ratio * math.exp(math.pi * abs(complex(s).imag))


def qzeta_direct(
    r: int,
    q: float,
    s: complex,
    t: complex,
    z: complex,
    omega: Sequence[float] | Weights | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """The defining r-fold series of ``zeta_{q,r}(s, t, z; omega)``.

    Terms are grouped by the lattice value ``n . omega``.  For integer weights
    the level coefficients come from expanding ``prod_i 1/(1 - a_i x^omega_i)``
    (a recursive filter); otherwise the box of multi-indices is enumerated.
    """
    q = check_q(q)
    om = _weights(omega, r)
    s, t, z = complex(s), complex(t), complex(z)
    if t.real <= r - 1:
        raise DomainError(
            f"defining series needs Re(t) > r - 1 = {r - 1} (got {t}); use qzeta_binomial_ac"
        )
    if z.real <= 0:
        raise DomainError(f"defining series needs Re(z) > 0 (got {z})")
    lq = math.log(q)
    expo = [om[i] * (t - i) for i in range(r)]
    rates = [math.exp(e.real * lq) for e in expo]
    scale = _power_scale(q, s, z)

    if all(float(w).is_integer() for w in om):
        per_level = max(rate ** (1.0 / w) for rate, w in zip(rates, om))
        L = _level_bound(per_level, r, policy, scale)
        coeff = np.zeros(L + 1, dtype=complex)
        coeff[0] = 1.0
        for e, w in zip(expo, om):
            den = np.zeros(int(w) + 1, dtype=complex)
            den[0] = 1.0
            den[-1] = -cmath.exp(e * lq)
            coeff = signal.lfilter([1.0], den, coeff)
        levels = np.arange(L + 1, dtype=float)
        terms = coeff * _qnum_pow(lq, levels + z, s)
        method = f"direct-levels(L={L})"
    else:
        axes = []
        for e, w, rate in zip(expo, om, rates):
            n_i = _level_bound(rate, 1, policy, scale * r)
            if n_i > 4096:
                raise CapacityError(f"mesh axis would need {n_i} points; weights too slow to decay")
            axes.append((np.arange(n_i + 1, dtype=float), e, w))
        size = math.prod(len(a[0]) for a in axes)
        if size > policy.max_terms * 8:
            raise CapacityError(f"mesh of {size} multi-indices exceeds the cap")
        grids = np.meshgrid(*[a[0] for a in axes], indexing="ij", sparse=True)
        phase = sum(g * (e * lq) for g, (_, e, _) in zip(grids, axes))
        lattice = sum(g * w for g, (_, _, w) in zip(grids, axes))
        terms = (np.exp(phase) * _qnum_pow(lq, lattice + z, s)).ravel()
        method = f"direct-mesh({size})"
    total = complex(np.sum(terms))
    err = policy.tol * abs(total) + _ROUND * float(np.sum(np.abs(terms)))
    return EvalResult(total, err, method)


def qzeta_qbinom(
    r: int, q: float, s: complex, t: complex, z: complex, policy: TruncationPolicy = DEFAULT_POLICY
) -> EvalResult:
    """Single sum ``sum_n [n+r-1 choose r-1]_q q^(n(t-r+1)) / [n+z]_q^s`` (unit weights)."""
    q = check_q(q)
    check_weights(None, r)
    s, t, z = complex(s), complex(t), complex(z)
    if t.real <= r - 1:
        raise DomainError(f"single-sum form needs Re(t) > r - 1 = {r - 1} (got {t})")
    if z.real <= 0:
        raise DomainError(f"single-sum form needs Re(z) > 0 (got {z})")
    lq = math.log(q)
    a = t - r + 1
    rate = math.exp(a.real * lq)
    # Gaussian binomials are bounded by 1/(q;q)_(r-1), no polynomial growth
    bound = 1.0 / q_factorial(q, r - 1) / (1.0 - q) ** (r - 1)
    L = _level_bound(rate, 1, policy, _power_scale(q, s, z) * bound)
    n = np.arange(L + 1, dtype=float)
    terms = q_binomial_array(q, n, r - 1) * np.exp(n * a * lq) * _qnum_pow(lq, n + z, s)
    total = complex(np.sum(terms))
    err = policy.tol * abs(total) + _ROUND * float(np.sum(np.abs(terms)))
    return EvalResult(total, err, f"qbinom-sum(L={L})")


@dataclass(frozen=True)
class QBarnesPolys:
    """``P^l_{q,r}(z)``, ``0 <= l <= r-1``: signed elementary symmetric functions of
    ``{q^m [z-m]_q : 1 <= m <= r-1}`` divided by ``[r-1]_q!``."""

    r: int
    q: float

    def __call__(self, z: complex) -> list[complex]:
        z = complex(z)
        xs = [q_number(self.q, z - m) * self.q**m for m in range(1, self.r)]
        e = [1.0 + 0j] + [0j] * (self.r - 1)
        for x in xs:
            for k in range(len(e) - 1, 0, -1):
                e[k] += e[k - 1] * x
        norm = q_factorial(self.q, self.r - 1)
        return [(-1) ** (self.r - 1 - l) * e[self.r - 1 - l] / norm for l in range(self.r)]

    def identity_residual(self, n: int, z: complex) -> float:
        """``|sum_l q^(n(r-1-l)) P^l [n+z]_q^l - [n+r-1 choose r-1]_q|``."""
        p = self(z)
        nz = q_number(self.q, complex(z) + n)
        lhs = sum(self.q ** (n * (self.r - 1 - l)) * p[l] * nz**l for l in range(self.r))
        rhs = float(q_binomial_array(self.q, np.array([n]), self.r - 1)[0])
        return abs(lhs - rhs)


def qbarnes_polys(r: int, q: float) -> QBarnesPolys:
    if r < 1:
        raise DomainError("r must be >= 1")
    return QBarnesPolys(r, check_q(q))


Depth1 = Callable[[float, complex, complex, complex, TruncationPolicy], EvalResult]


def _depth1_binomial(q, s, t, z, policy):
    return qzeta_binomial_ac(1, q, s, t, z, None, policy)


def qzeta_reduce(
    r: int,
    q: float,
    s: complex,
    t: complex,
    z: complex,
    depth1: Depth1 | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """``sum_l P^l_{q,r}(z) zeta_q(s-l, t-l, z)`` with a pluggable depth-one evaluator.

    ``depth1(q, s, t, z, policy)`` defaults to the binomial continuation.
    """
    q = check_q(q)
    s, t, z = complex(s), complex(t), complex(z)
    if z.real <= 0:
        raise DomainError(f"reduction needs Re(z) > 0 (got {z}); use qzeta_ladder")
    depth1 = depth1 or _depth1_binomial
    coeffs = qbarnes_polys(r, q)(z)
    total, err = 0j, 0.0
    methods = set()
    for l, c in enumerate(coeffs):
        if c == 0:
            continue
        h = depth1(q, s - l, t - l, z, policy)
        total += c * h.value
        err += abs(c) * h.error
        methods.add(h.method.split("(")[0])
    return EvalResult(total, err, f"reduce(r={r}; {'+'.join(sorted(methods))})")


@dataclass(frozen=True)
class LeibnizCoeffs:
    """``b[j][e] = b^e_j(s)`` and ``c[k][e] = c^e_k(s, t)`` for ``0 <= e <= j, k <= K``."""

    s: complex
    t: complex
    K: int
    b: np.ndarray
    c: np.ndarray


def leibniz_coeffs(s: complex, t: complex, K: int) -> LeibnizCoeffs:
    """Coefficients of ``d^j/dx^j (1-q^(x+z))^(-s)`` and of the derivatives of ``f_q``.

    ``b^e_(j+1) = (s+e-1) b^(e-1)_j - (s+e) b^e_j``, from
    ``d/dx (1-u)^(-a) = a log q ((1-u)^(-a-1) - (1-u)^(-a))`` with ``u = q^(x+z)``.
    """
    if K < 0:
        raise DomainError("K must be >= 0")
    s, t = complex(s), complex(t)
    b = np.zeros((K + 1, K + 1), dtype=complex)
    b[0, 0] = 1.0
    for j in range(K):
        for e in range(j + 2):
            val = 0j
            if e >= 1:
                val += (s + e - 1) * b[j, e - 1]
            if e <= j:
                val -= (s + e) * b[j, e]
            b[j + 1, e] = val
    c = np.zeros_like(b)
    for k in range(K + 1):
        for e in range(k + 1):
            c[k, e] = sum(math.comb(k, j) * t ** (k - j) * b[j, e] for j in range(e, k + 1))
    return LeibnizCoeffs(s, t, K, b, c)


@dataclass(frozen=True)
class ContinuationParams:
    """Depths of the Euler-Maclaurin continuation of ``zeta_q``.

    ``N`` correction terms are kept explicitly, ``M - N`` integration-by-parts
    steps continue the Fourier integrals, and ``n_max`` truncates the Fourier
    sum of the remainder term.  Valid for ``Re(t) > N - M``.
    """

    N: int = 1
    M: int = 4
    n_max: int = 50
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self):
        if self.N < 1:
            raise ConfigError("N must be >= 1")
        if self.M < self.N + 1:
            raise ConfigError("M must be >= N + 1")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")


def _poch_array(x: np.ndarray, l: int) -> np.ndarray:
    out = np.ones_like(x)
    for k in range(l):
        out = out * (x + k)
    return out


def _check_em_poles(delta: complex, t: complex, l: int, n: np.ndarray):
    for k in range(l):
        d = np.abs(delta * n + t + k)
        i = int(np.argmin(d))
        if d[i] < EM_POLE_TOL:
            raise PoleError(
                f"t = {t} is a pole of the continuation: delta*n + t + {k} = 0 at n = {int(n[i])}",
                t,
                n=int(n[i]),
                shift=k,
            )


_D2_TERMS = 1 << 17
_GL16 = np.polynomial.legendre.leggauss(16)


def _leading(q, s, t, z, lq, policy) -> EvalResult:
    w = cmath.exp(z * lq)
    if t.real >= 1.0:
        b = incomplete_beta_direct(IncompleteBetaArgs(w, t, 1.0 - s, z * lq), policy)
    else:
        n_prime = max(2, math.ceil(2.0 - t.real))
        b = incomplete_beta_continued(IncompleteBetaArgs(w, t, 1.0 - s, z * lq), n_prime, policy)
    pref = -cmath.exp(-z * t * lq) * cpow(1.0 - q, s) / lq
    return EvalResult(pref * b.value, abs(pref) * b.error, b.method)


def _d1(q, s, t, z, N, lq, lc: LeibnizCoeffs) -> complex:
    eps = 1.0 - q
    A = q_number(q, z)
    total = 0j
    for k in range(1, N + 1):
        bk = float(bernoulli_number(k + 1))
        if bk == 0:
            continue
        for e in range(k + 1):
            total -= bk / math.factorial(k + 1) * lc.c[k, e] * cpow(A, -s - e) * lq**k / eps**e
    return total


def _d2(q, s, t, z, N, M, lq, lc: LeibnizCoeffs) -> tuple[complex, float]:
    eps = 1.0 - q
    A = q_number(q, z)
    delta = 2j * math.pi / lq
    n = np.arange(1, _D2_TERMS + 1, dtype=float)
    total, err = 0j, 0.0
    for l in range(1, M - N + 1):
        _check_em_poles(delta, t, l, n)
        _check_em_poles(delta, t, l, -n)
        pair = 1.0 / ((2j * math.pi * n) ** (N + 1) * _poch_array(delta * n + t, l)) + 1.0 / (
            (-2j * math.pi * n) ** (N + 1) * _poch_array(-delta * n + t, l)
        )
        S_l = complex(np.sum(pair[::-1]))
        tail = abs(pair[-1]) * _D2_TERMS / (N + l)
        for e in range(N + 2):
            coef = (
                (-1) ** (N + l - 1)
                * lc.c[N + 1, e]
                * rising_factorial(s + e, l - 1)
                * cmath.exp(z * (l - 1) * lq)
                * eps ** (1 - l - e)
                * cpow(A, -s - e + 1 - l)
                * lq**N
            )
            total += coef * S_l
            err += abs(coef) * tail
    return total, err


def _d3(q, s, t, z, N, M, n_max, lq, lc: LeibnizCoeffs) -> tuple[complex, float]:
    eps = 1.0 - q
    delta = 2j * math.pi / lq
    L = M - N
    T = t + L
    if T.real <= 0:
        raise ConfigError(f"Re(t) + M - N = {T.real} <= 0: outside the continuation region")
    X = math.ceil(35.0 / (T.real * abs(lq)))
    # composite Gauss-Legendre on [0, 1], 16 nodes per panel, one panel per period of n_max
    panels = max(8, n_max)
    x16, w16 = _GL16
    edges = np.linspace(0.0, 1.0, panels + 1)
    h = np.diff(edges)
    y = (edges[:-1, None] + 0.5 * h[:, None] * (x16[None, :] + 1.0)).ravel()
    wy = (0.5 * h[:, None] * w16[None, :]).ravel()
    n = np.concatenate([np.arange(1, n_max + 1), -np.arange(1, n_max + 1)]).astype(float)
    _check_em_poles(delta, t, L, n)
    g = (-1) ** (M + 1) / ((2j * math.pi * n) ** (N + 1) * _poch_array(delta * n + t, L))
    phase = np.exp(2j * math.pi * np.outer(n, y)) * wy[None, :]
    total, err = 0j, 0.0
    chunk = max(1, 4_000_000 // len(y))
    for e in range(N + 2):
        sigma = s + e + L
        H = np.zeros(len(y), dtype=complex)
        for k0 in range(0, X, chunk):
            k = np.arange(k0, min(X, k0 + chunk), dtype=float)
            xx = k[:, None] + y[None, :]
            H += np.sum(np.exp(xx * T * lq) * _qnum_pow(lq, xx + z, sigma), axis=0)
        J = phase @ H
        coef = (
            lc.c[N + 1, e]
            * rising_factorial(s + e, L)
            * cmath.exp(z * L * lq)
            / eps**L
            * lq ** (N + 1)
            / eps**e
        )
        terms = g * J
        total += coef * complex(np.sum(terms))
        # Fourier tail: terms fall like n^-(M+2)
        last = max(abs(terms[n_max - 1]), abs(terms[-1]))
        err += abs(coef) * last * n_max / (M + 1)
    return total, err


@dataclass(frozen=True)
class EMParts:
    leading: complex
    half: complex
    d1: complex
    d2: complex
    d3: complex
    error: float

    @property
    def total(self) -> complex:
        return self.leading + self.half + self.d1 + self.d2 + self.d3


def em_parts(
    q: float,
    s: complex,
    t: complex,
    z: complex,
    cp: ContinuationParams = ContinuationParams(),
    include_d3: bool = True,
) -> EMParts:
    """The five pieces of the Euler-Maclaurin continuation of ``zeta_q(s, t, z)``.

    ``include_d3=False`` skips the remainder (reported as NaN), which is the
    expensive piece as q approaches 1.
    """
    q = check_q(q)
    s, t, z = complex(s), complex(t), complex(z)
    if z.real <= 0:
        raise DomainError(f"Euler-Maclaurin route needs Re(z) > 0 (got {z})")
    N, M = cp.N, cp.M
    if t.real + M - N <= 0:
        raise ConfigError(f"Re(t) = {t.real} outside the region Re(t) > N - M = {N - M}")
    for k in range(max(0, math.ceil(2.0 - t.real))):
        if abs(t + k) < EM_POLE_TOL:
            raise PoleError(f"t + {k} = 0: pole of the leading incomplete beta term", t, shift=k)
    lq = math.log(q)
    lc = leibniz_coeffs(s, t, N + 1)
    lead = _leading(q, s, t, z, lq, cp.policy)
    half = 0.5 * cpow(q_number(q, z), -s)
    d1 = _d1(q, s, t, z, N, lq, lc)
    d2, e2 = _d2(q, s, t, z, N, M, lq, lc)
    if include_d3:
        d3, e3 = _d3(q, s, t, z, N, M, cp.n_max, lq, lc)
    else:
        d3, e3 = complex("nan"), 0.0
    err = lead.error + e2 + e3
    return EMParts(lead.value, half, d1, d2, d3, err)


def qzeta1_em(
    q: float, s: complex, t: complex, z: complex, cp: ContinuationParams = ContinuationParams()
) -> EvalResult:
    """Euler-Maclaurin continuation of ``zeta_q(s, t, z)`` to ``Re(t) > N - M``."""
    p = em_parts(q, s, t, z, cp)
    total = p.total
    err = p.error + _ROUND * (abs(p.leading) + abs(p.half) + abs(p.d1) + abs(p.d2) + abs(p.d3))
    return EvalResult(total, err, f"euler-maclaurin(N={cp.N},M={cp.M},n_max={cp.n_max})")


def qzeta_binomial_ac(
    r: int,
    q: float,
    s: complex,
    t: complex,
    z: complex,
    omega: Sequence[float] | Weights | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """``(1-q)^s sum_l binom(s+l-1, l) q^(lz) prod_j (1 - q^(omega_j (t-j+1+l)))^(-1)``.

    Valid for all complex s, t off the pole lattice.  ``Re(z) <= 0`` is sent
    through the ladder for unit weights and rejected otherwise.
    """
    q = check_q(q)
    om = _weights(omega, r)
    s, t, z = complex(s), complex(t), complex(z)
    if z.real <= 0:
        if unit_weights(om):
            return qzeta_ladder(r, q, s, t, z, policy)
        raise DomainError(f"Re(z) = {z.real} <= 0 with non-unit weights: no ladder available")
    lq = math.log(q)
    qz = cmath.exp(z * lq)
    rq = abs(qz)
    total = 0j
    abs_sum = 0.0
    carry = 1.0 + 0j
    l0 = 0
    chunk = 256
    tail = math.inf
    while True:
        if l0 >= policy.max_terms:
            raise CapacityError(
                f"binomial continuation did not converge within max_terms = {policy.max_terms}"
            )
        size = min(chunk, policy.max_terms - l0)
        l = np.arange(l0, l0 + size, dtype=float)
        ratio = (s + l) / (l + 1.0) * qz
        cum = np.cumprod(ratio)
        coef = carry * np.concatenate(([1.0 + 0j], cum[:-1]))
        den = np.ones(size, dtype=complex)
        live = coef != 0
        for j, w in enumerate(om, start=1):
            f = one_minus_qpow(lq, w * (t - j + 1 + l))
            bad = live & (np.abs(f) < POLE_TOL)
            if np.any(bad):
                i = int(np.flatnonzero(bad)[0])
                raise PoleError(
                    f"1 - q^(omega_{j} (t - {j} + 1 + {l0 + i})) vanishes: pole at t = {t}",
                    t,
                    j=j,
                    l=l0 + i,
                )
            den = den * f
        terms = np.where(live, coef / np.where(den == 0, 1.0, den), 0.0)
        total += complex(np.sum(terms))
        abs_sum += float(np.sum(np.abs(terms)))
        carry = carry * cum[-1]
        l0 += size
        rho = abs((s + l0) / (l0 + 1.0)) * rq
        if carry == 0:
            tail = 0.0
            break
        if rho < 1.0:
            tail = abs(terms[-1]) * rho / (1.0 - rho) * 2.0
            if tail <= policy.tol * abs(total):
                break
        chunk = min(chunk * 2, 1 << 16)
    pref = cpow(1.0 - q, s)
    err = abs(pref) * (tail + _ROUND * abs_sum)
    return EvalResult(pref * total, err, f"binomial-ac(L={l0})")


def qzeta_ladder(
    r: int, q: float, s: complex, t: complex, z: complex, policy: TruncationPolicy = DEFAULT_POLICY
) -> EvalResult:
    """Unit-weight ladder ``zeta_{q,r}(z) = q^(t-r+1) zeta_{q,r}(z+1) + zeta_{q,r-1}(z)``.

    Shifts z to ``Re(z) > 0`` and hands over to :func:`qzeta_binomial_ac`;
    ``zeta_{q,0}(s, t, z) = [z]_q^(-s)``.
    """
    q = check_q(q)
    s, t, z = complex(s), complex(t), complex(z)
    if r < 0:
        raise DomainError("r must be >= 0")
    if is_nonpositive_integer(z, 1e-12):
        raise PoleError(f"z = {z} is a nonpositive integer: [z + n]_q vanishes", z)
    if r == 0:
        return EvalResult(cpow(q_number(q, z), -s), 0.0, "zeta_q0")
    if z.real > 0:
        return qzeta_binomial_ac(r, q, s, t, z, None, policy)
    lq = math.log(q)
    m = math.floor(-z.real) + 1
    step = cmath.exp((t - r + 1) * lq)
    total, err = 0j, 0.0
    f = 1.0 + 0j
    for k in range(m):
        low = qzeta_ladder(r - 1, q, s, t, z + k, policy)
        total += f * low.value
        err += abs(f) * low.error
        f *= step
    top = qzeta_binomial_ac(r, q, s, t, z + m, None, policy)
    total += f * top.value
    err += abs(f) * top.error
    return EvalResult(total, err, f"ladder({m})+{top.method}")


def _pole_family(nu: int, r: int, j: int, l: int) -> tuple[int, int]:
    a = nu + j - 1 - l
    if a <= 0:
        return 1, a
    if a <= nu:
        return 2, a
    return 3, a


def qzeta_nu(
    r: int,
    q: float,
    s: complex,
    z: complex,
    nu: int,
    omega: Sequence[float] | Weights | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """``zeta^(nu)_{q,r}(s, z; omega) = zeta_{q,r}(s, s - nu, z; omega)``.

    At nonpositive integers s the closed-form special value is returned (the
    lattice factor there is cancelled by a zero of the binomial coefficient).
    Poles are reported with the family they belong to:
    1: ``j + delta_i Z`` minus the real point, ``j <= 0``;
    2: ``j + delta_i Z``, ``1 <= j <= nu``;
    3: ``nu + j + delta_i Z``, ``1 <= j <= r-1``, ``i >= j+1``.
    """
    if nu < 1:
        raise DomainError("nu must be >= 1")
    q = check_q(q)
    om = _weights(omega, r)
    s, z = complex(s), complex(z)
    m = round(s.real)
    if m <= 0 and abs(s - m) <= POLE_TOL and z.real > 0:
        val = qzeta_special_value(r, q, -m, z, nu, om)
        return EvalResult(val, 1e-15 * abs(val) + abs(s - m), "special-value")
    try:
        return qzeta_binomial_ac(r, q, s, s - nu, z, om, policy)
    except PoleError as exc:
        if "j" not in exc.info:
            raise
        j, l = exc.info["j"], exc.info["l"]
        family, a = _pole_family(nu, r, j, l)
        lq = math.log(q)
        k = round(s.imag * om[j - 1] * lq / (2.0 * math.pi))
        raise PoleError(
            f"pole of zeta^({nu})_(q,{r}) at s = {a}"
            + (f" + {k}*delta_{j}" if k else "")
            + f" (family {family}, i = {j})",
            s,
            family=family,
            real_part=a,
            i=j,
            k=k,
        ) from exc


def qzeta_special_value(
    r: int,
    q: float,
    m: int,
    z: complex,
    nu: int,
    omega: Sequence[float] | Weights | None = None,
) -> complex:
    """Closed form of ``zeta^(nu)_{q,r}(-m, z; omega)`` for integer ``m >= 0``."""
    if m < 0 or nu < 1:
        raise DomainError("need m >= 0 and nu >= 1")
    q = check_q(q)
    om = _weights(omega, r)
    z = complex(z)
    lq = math.log(q)

    def inv(j: int, x: float) -> complex:
        f = -math.expm1(om[j - 1] * x * lq)
        if abs(f) < POLE_TOL:
            raise PoleError(
                f"degenerate configuration: 1 - q^(omega_{j} * {x}) vanishes", None, j=j, exponent=x
            )
        return 1.0 / f

    first = 0j
    for l in range(m + 1):
        p = 1.0 + 0j
        for j in range(1, r + 1):
            p *= inv(j, -m - nu + l - j + 1)
        first += (-1) ** l * math.comb(m, l) * cmath.exp(l * z * lq) * p
    second = 0j
    for l in range(1, r + 1):
        p = 1.0 + 0j
        for j in range(1, r + 1):
            if j != l:
                p *= inv(j, l - j)
        c = (-1) ** (m + 1) * math.factorial(m) * math.factorial(l + nu - 2)
        c /= math.factorial(l + m + nu - 1) * om[l - 1]
        second += c * cmath.exp(l * z * lq) * p
    second *= cmath.exp((m + nu - 1) * z * lq) / lq
    return (1.0 - q) ** (-m) * (first + second)


def qzeta_nu_real_poles(
    r: int,
    q: float,
    nu: int,
    omega: Sequence[float] | Weights | None = None,
    s_range: tuple[int, int] = (-6, 8),
    z: complex = 0.7,
    h: float = 1e-3,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> list[int]:
    """Integers in ``s_range`` where ``zeta^(nu)_{q,r}(s, z)`` has a pole on the real axis.

    A simple pole shows as a symmetric-difference residue estimate
    ``h (f(s0+h) - f(s0-h)) / 2`` that stays put when h is halved; at a
    regular point the estimate shrinks like ``h^2``.  Residues can cancel at
    special z (r = 2, nu = 2 loses the pole at s = 1 when z = 1), so the
    default z is a generic point.
    """

    def res(s0: int, step: float) -> complex:
        a = qzeta_binomial_ac(r, q, s0 + step, s0 + step - nu, z, omega, policy).value
        b = qzeta_binomial_ac(r, q, s0 - step, s0 - step - nu, z, omega, policy).value
        return 0.5 * step * (a - b)

    poles = []
    for s0 in range(s_range[0], s_range[1] + 1):
        r1, r2 = res(s0, h), res(s0, 0.5 * h)
        if abs(r2) > 1e-9 and abs(r2) > 0.5 * abs(r1):
            poles.append(s0)
    return poles

