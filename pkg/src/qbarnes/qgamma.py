"""The q-gamma function obtained by zeta regularisation of the q-Hurwitz zeta function."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._core import (
    DEFAULT_POLICY,
    BranchError,
    EvalResult,
    PoleError,
    TruncationPolicy,
    cexpm1,
    check_q,
    is_nonpositive_integer,
)
from .qnum import q_number
from .qzeta import qzeta_direct, qzeta_nu

__all__ = [
    "QGammaContext",
    "qzeta_tilde",
    "qzeta_tilde_direct",
    "a1",
    "log_qgamma",
    "log_qgamma_closed",
    "qgamma",
    "qgamma_log_deriv",
    "log_qgamma_second_deriv",
    "gamma_q_euler",
    "c_q",
    "eta_q",
    "gauss_legendre_check",
]

_SERIES_TOL = 1e-17


def _qpow(q: float, x: complex) -> complex:
    # real part through pow(q, .) so large exponents do not amplify the rounding of log q
    x = complex(x)
    mag = q**x.real
    return complex(mag) if x.imag == 0 else mag * cmath.exp(1j * x.imag * math.log(q))


def _series_n(q: float, rez: float, start: int) -> np.ndarray:
    # indices n >= start until q^((n - start + 1) Re z) drops below the tolerance
    if rez <= 0:
        raise ValueError("series needs Re(z) > 0")
    count = int(math.ceil(math.log(_SERIES_TOL) / (rez * math.log(q)))) + 2
    return np.arange(start, start + count, dtype=float)


def qzeta_tilde(q: float, s: complex, z: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """``q^(z(s-1)) zeta^(1)_q(s, z)``, continued in s."""
    q = check_q(q)
    s, z = complex(s), complex(z)
    h = qzeta_nu(1, q, s, z, 1, None, policy)
    f = cmath.exp(z * (s - 1.0) * math.log(q))
    return EvalResult(f * h.value, abs(f) * h.error, h.method)


def qzeta_tilde_direct(q: float, s: complex, z: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """``sum_n q^((n+z)(s-1)) / [n+z]_q^s`` for ``Re(s) > 1``."""
    q = check_q(q)
    s, z = complex(s), complex(z)
    h = qzeta_direct(1, q, s, s - 1.0, z, None, policy)
    f = cmath.exp(z * (s - 1.0) * math.log(q))
    return EvalResult(f * h.value, abs(f) * h.error, h.method)


def a1(q: float, z: complex) -> complex:
    """Taylor coefficient of s in ``zeta~_q(s, z)`` at s = 0, for ``Re(z) > 0``."""
    q = check_q(q)
    z = complex(z)
    L = math.log(q)
    eps = 1.0 - q
    le = math.log(eps)
    n = _series_n(q, z.real, 2)
    series = complex(np.sum((np.exp((n - 1) * z * L) / -np.expm1((n - 1) * L) / n)[::-1]))
    q1z = _qpow(q, 1.0 - z)
    return (
        series
        - z
        + 0.5
        + (1.0 - z * eps) / eps**2 * q1z * L
        - (q1z / eps + 1.0 / L) * le
    )


@dataclass(frozen=True)
class QGammaContext:
    """A fixed q together with the normalising constant ``a1(1; q)``."""

    q: float
    a1_one: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.q))
        object.__setattr__(self, "a1_one", a1(self.q, 1.0))


def _ctx(ctx_or_q) -> QGammaContext:
    return ctx_or_q if isinstance(ctx_or_q, QGammaContext) else QGammaContext(float(ctx_or_q))


def log_qgamma(ctx: QGammaContext | float, z: complex) -> complex:
    """``log Gamma~_q(z)``; ``Re(z) <= 0`` is shifted right with the ladder.

    Each step adds ``-q^(-z) Log(q^(-z) [z]_q)``; a base on the negative real
    axis has no principal logarithm consistent with the ladder and raises
    :class:`BranchError`.
    """
    ctx = _ctx(ctx)
    q = ctx.q
    z = complex(z)
    if is_nonpositive_integer(z, 1e-12):
        raise PoleError(f"Gamma~_q has a pole at z = {z.real:g}", z)
    L = math.log(q)
    acc = 0j
    while z.real <= 0:
        qmz = _qpow(q, -z)
        base = qmz * q_number(q, z)
        if base.imag == 0 and base.real < 0:
            raise BranchError(
                f"q^(-z)[z]_q = {base.real:.6g} is negative at z = {z}; no principal branch"
            )
        acc -= qmz * cmath.log(base)
        z += 1.0
    return acc + a1(q, z) - ctx.a1_one


def log_qgamma_closed(q: float, z: complex) -> complex:
    """Closed form of ``log Gamma~_q(z)`` for ``Re(z) > 0`` (independent of :func:`a1`)."""
    q = check_q(q)
    z = complex(z)
    L = math.log(q)
    eps = 1.0 - q
    n = _series_n(q, min(z.real, 1.0), 2)
    nm1 = n - 1
    series = complex(
        np.sum(((np.exp(z * nm1 * L) - np.exp(nm1 * L)) / -np.expm1(nm1 * L) / n)[::-1])
    )
    qmz = _qpow(q, -z)
    return (
        series
        - z
        + 1.0
        + (qmz * (1.0 - eps * z) - 1.0) / eps**2 * q * L
        + (1.0 - q * qmz) / eps * math.log(eps)
    )


def qgamma(ctx: QGammaContext | float, z: complex) -> complex:
    """``Gamma~_q(z)``, normalised so that ``Gamma~_q(1) = 1`` exactly."""
    return cmath.exp(log_qgamma(ctx, z))


def _inv_qnum_series(q: float, z: complex, weight_shift: int | None) -> complex:
    # sum_{n>=1} q^(nz)/[n]_q, optionally divided by (n + 1)
    L = math.log(q)
    n = _series_n(q, complex(z).real, 1)
    terms = np.exp(n * complex(z) * L) * (1.0 - q) / -np.expm1(n * L)
    if weight_shift is not None:
        terms = terms / (n + weight_shift)
    return complex(np.sum(terms[::-1]))


def qgamma_log_deriv(ctx: QGammaContext | float, z: complex) -> complex:
    """``Gamma~_q'(z) / Gamma~_q(z)`` in closed form, ``Re(z) > 0``."""
    q = _ctx(ctx).q
    z = complex(z)
    L = math.log(q)
    eps = 1.0 - q
    s1 = _inv_qnum_series(q, z, None)
    s2 = _inv_qnum_series(q, z, 1)
    q1z = _qpow(q, 1.0 - z)
    return (
        L / eps * (s1 - s2)
        - 1.0
        - q1z * L * (eps + (1.0 - eps * z) * L) / eps**2
        + L / eps * q1z * math.log(eps)
    )


def log_qgamma_second_deriv(q: float, z: complex) -> complex:
    """``d^2/dz^2 log Gamma~_q(z + 1)``: a positive series plus ``L^2 q^-z eta_q(z) / (1-q)^2``."""
    q = check_q(q)
    z = complex(z)
    L = math.log(q)
    n = _series_n(q, z.real + 1.0, 2)
    nm1 = n - 1
    series = complex(np.sum((nm1**2 / n * np.exp((z + 1.0) * nm1 * L) / -np.expm1(nm1 * L))[::-1]))
    return L**2 * series + L**2 * _qpow(q, -z) / (1.0 - q) ** 2 * eta_q(q, z)


def eta_q(q: float, z: complex) -> complex:
    q = check_q(q)
    L = math.log(q)
    eps = 1.0 - q
    return L * (1.0 - eps * (complex(z) + 1.0)) - eps * math.log(eps) + 2.0 * eps


def gamma_q_euler(q: float, z: complex = 1.0) -> complex:
    """``gamma_q(z)``, the constant term of ``zeta~_q(s, z)`` at s = 1."""
    q = check_q(q)
    z = complex(z)
    eps = 1.0 - q
    return _inv_qnum_series(q, z, None) + eps * (-z + 0.5 - math.log(eps) / math.log(q))


def c_q(q: float, z: complex) -> complex:
    """``C_q(z) = gamma_q(z) + (q-1)/log(q) * Gamma~_q'/Gamma~_q(z)``; tends to 0 as q -> 1."""
    q = check_q(q)
    z = complex(z)
    L = math.log(q)
    eps = 1.0 - q
    le = math.log(eps)
    q1z = _qpow(q, 1.0 - z)
    return (
        _inv_qnum_series(q, z, 1)
        + q1z
        + L / eps * (1.0 - eps * z) * q1z
        + eps / L
        - q1z * le
        - eps / L * le
        + (0.5 - z) * eps
    )


def gauss_legendre_check(q: float, N: int, z: complex) -> float:
    """Relative residual of the q-analogue of the Gauss multiplication formula."""
    q = check_q(q)
    if N < 1:
        raise ValueError("N must be >= 1")
    z = complex(z)
    if N == 1:
        return 0.0
    qN = q**N
    ctx_q, ctx_qN = QGammaContext(q), QGammaContext(qN)
    log_lhs = q_number(q, 1.0 - N * z) * math.log(q_number(q, N).real)
    log_lhs += sum(log_qgamma(ctx_qN, k / N) for k in range(1, N))
    log_lhs += log_qgamma(ctx_q, N * z)
    log_rhs = sum(log_qgamma(ctx_qN, z + k / N) for k in range(N))
    # |LHS - RHS| / |RHS| without forming either side (both overflow for large z)
    d = log_lhs - log_rhs
    d = complex(d.real, math.remainder(d.imag, 2.0 * math.pi))
    return abs(cexpm1(d))
