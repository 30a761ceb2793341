"""Complex gamma/beta and the incomplete beta function with its continuation in alpha."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from ._core import (
    DEFAULT_POLICY,
    POLE_TOL,
    DomainError,
    EvalResult,
    PoleError,
    TruncationPolicy,
    cpow,
    is_nonpositive_integer,
)
from .qnum import rising_factorial

__all__ = [
    "IncompleteBetaArgs",
    "gamma",
    "beta",
    "incomplete_beta_direct",
    "incomplete_beta_continued",
]

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma(z: complex) -> complex:
    """Complex gamma function (Lanczos, g=7, with reflection for Re z < 1/2)."""
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at z = {z.real:g}", z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma(1.0 - z))
    z -= 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def beta(a: complex, b: complex) -> complex:
    return gamma(a) * gamma(b) / gamma(a + b)


@dataclass(frozen=True)
class IncompleteBetaArgs:
    """Arguments of ``b_w(alpha, beta)``.

    ``log_w`` fixes the branch of ``w**alpha``; when ``w = q**z`` callers pass
    ``z log q`` so the powers agree with ``q**(z alpha)`` exactly.
    """

    w: complex
    alpha: complex
    beta: complex
    log_w: complex | None = None

    def __post_init__(self):
        w = complex(self.w)
        if w == 0 or abs(w) >= 1.0:
            raise DomainError(f"incomplete beta needs 0 < |w| < 1, got w = {w}")

    @property
    def logw(self) -> complex:
        return cmath.log(self.w) if self.log_w is None else complex(self.log_w)


def _segment_quad(func, policy: TruncationPolicy) -> tuple[complex, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(
            func, 0.0, 1.0, complex_func=True, epsabs=policy.quad_tol * 1e-2, epsrel=1e-14, limit=400
        )
    return complex(val), float(abs(err))


def incomplete_beta_direct(
    args: IncompleteBetaArgs, policy: TruncationPolicy = DEFAULT_POLICY
) -> EvalResult:
    """``int_0^w u^(alpha-1) (1-u)^(beta-1) du`` along the segment from 0 to w.

    With ``u = w v`` the integral becomes ``w^alpha int_0^1 v^(alpha-1)(1-wv)^(beta-1) dv``.
    For ``Re(alpha) < 1`` the endpoint singularity is removed by ``v = x^(1/Re alpha)``.
    """
    w, a, b = complex(args.w), complex(args.alpha), complex(args.beta)
    rho = a.real
    if rho <= 0:
        raise DomainError(
            f"direct incomplete beta needs Re(alpha) > 0 (got {a}); use the continued route"
        )
    bm1 = b - 1.0
    prefactor = cmath.exp(a * args.logw)

    if rho >= 1.0:
        am1 = a - 1.0

        def f(v):
            # GK nodes are interior, so v > 0 here
            return cmath.exp(am1 * math.log(v)) * cmath.exp(bm1 * cmath.log(1.0 - w * v))

        scale = 1.0
    else:
        inv = 1.0 / rho
        phase = 1j * a.imag / rho

        def f(x):
            return cmath.exp(phase * math.log(x)) * cmath.exp(bm1 * cmath.log(1.0 - w * x**inv))

        scale = inv
    val, err = _segment_quad(f, policy)
    mag = abs(prefactor) * scale
    return EvalResult(prefactor * scale * val, mag * err + 1e-16 * mag * abs(val), "quad-segment")


def incomplete_beta_continued(
    args: IncompleteBetaArgs, n_prime: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> EvalResult:
    """Integration-by-parts continuation of ``b_w(alpha, beta)`` to ``Re(alpha) > 1 - n_prime``."""
    if n_prime < 2:
        raise DomainError("continuation depth N' must be >= 2")
    a, b = complex(args.alpha), complex(args.beta)
    for l in range(n_prime - 1):
        if abs(a + l) < POLE_TOL:
            raise PoleError(f"alpha + {l} = 0: pole of the continued incomplete beta", a, shift=l)
    if a.real + n_prime - 1 <= 0:
        raise DomainError(f"Re(alpha) = {a.real} not > 1 - N' = {1 - n_prime}")

    logw = args.logw
    one_minus_w = 1.0 - complex(args.w)
    total = 0j
    for l in range(1, n_prime):
        coeff = (-1) ** (l - 1) * rising_factorial(1.0 - b, l - 1) / rising_factorial(a, l)
        total += coeff * cmath.exp((a + l - 1) * logw) * cpow(one_minus_w, b - l)
    tail_coeff = (-1) ** (n_prime - 1) * rising_factorial(1.0 - b, n_prime - 1) / rising_factorial(
        a, n_prime - 1
    )
    shifted = IncompleteBetaArgs(args.w, a + n_prime - 1, b - n_prime + 1, logw)
    inner = incomplete_beta_direct(shifted, policy)
    total += tail_coeff * inner.value
    err = abs(tail_coeff) * inner.error + 1e-16 * abs(total)
    return EvalResult(total, err, f"ibp-continued(N'={n_prime})")
