"""Shared value types, errors and complex-power helpers."""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

POLE_TOL = 1e-8


class QBarnesError(Exception):
    """Base class for every error raised by the package."""


class DomainError(QBarnesError, ValueError):
    pass


class ConfigError(QBarnesError, ValueError):
    pass


class CapacityError(QBarnesError):
    pass


class BranchError(QBarnesError, ArithmeticError):
    """A complex power was requested of a base lying on the negative real axis."""


class PoleError(QBarnesError, ArithmeticError):
    """Evaluation point sits on (or within tolerance of) a pole.

    ``location`` is the offending parameter value; ``info`` carries whatever
    structural data identifies the pole (level, lattice family, (j, l), ...).
    """

    def __init__(self, message: str, location: complex | None = None, **info):
        super().__init__(message)
        self.location = location
        self.info = info


@dataclass(frozen=True)
class EvalResult:
    value: complex
    error: float
    method: str

    def __complex__(self) -> complex:
        return complex(self.value)


@dataclass(frozen=True)
class TruncationPolicy:
    """Tolerances and caps for every infinite sum or integral.

    ``tol`` is the relative truncation target for series, ``quad_tol`` the
    absolute target handed to quadrature, ``max_terms`` the hard cap on the
    number of series terms (raises :class:`CapacityError` when exceeded).
    """

    tol: float = 1e-16
    quad_tol: float = 1e-12
    max_terms: int = 1_000_000

    @classmethod
    def from_env(cls, **overrides) -> "TruncationPolicy":
        env = os.environ.get("QBARNES_MAX_TERMS")
        if env is not None and "max_terms" not in overrides:
            overrides["max_terms"] = int(env)
        return cls(**overrides)


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class QParam:
    q: float

    def __post_init__(self):
        check_q(self.q)

    def __float__(self) -> float:
        return float(self.q)


def check_q(q) -> float:
    q = float(q)
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie strictly inside (0, 1), got {q!r}")
    return q


def check_weights(omega: Sequence[float] | None, r: int) -> tuple[float, ...]:
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if omega is None:
        return (1.0,) * r
    omega = tuple(float(w) for w in omega)
    if len(omega) != r:
        raise DomainError(f"expected {r} weights, got {len(omega)}")
    if any(not (w > 0.0) or not math.isfinite(w) for w in omega):
        raise DomainError(f"weights must be positive reals, got {omega}")
    return omega


def unit_weights(omega: Sequence[float]) -> bool:
    return all(w == 1.0 for w in omega)


def cpow(base: complex, expo: complex) -> complex:
    """Principal-branch ``base**expo``; refuses bases on the branch cut."""
    base, expo = complex(base), complex(expo)
    if expo.imag == 0.0 and expo.real.is_integer() and base != 0:
        # integer powers carry no branch ambiguity
        return base ** int(expo.real)
    if base.imag == 0.0 and base.real < 0.0:
        raise BranchError(f"base {base!r} lies on the branch cut of the logarithm")
    if base == 0:
        if complex(expo).real > 0:
            return 0j
        raise PoleError("zero base raised to a power with non-positive real part", 0j)
    return cmath.exp(complex(expo) * cmath.log(base))


def cexpm1(x):
    """``exp(x) - 1`` for complex arguments without cancellation near 0."""
    x = np.asarray(x, dtype=complex)
    a, b = x.real, x.imag
    em = np.expm1(a)
    re = em * np.cos(b) - 2.0 * np.sin(0.5 * b) ** 2
    im = np.exp(a) * np.sin(b)
    out = re + 1j * im
    return out if out.ndim else complex(out)


def one_minus_qpow(log_q: float, x):
    """``1 - q**x`` computed as ``-expm1(x log q)``."""
    return -cexpm1(np.asarray(x, dtype=complex) * log_q)


def is_nonpositive_integer(z: complex, tol: float = 0.0) -> bool:
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    k = round(z.real)
    return k <= 0 and abs(z.real - k) <= tol


def near_integer(x: complex, tol: float) -> int | None:
    x = complex(x)
    k = round(x.real)
    if abs(x - k) <= tol:
        return int(k)
    return None
