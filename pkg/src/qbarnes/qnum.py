"""q-arithmetic primitives.

Exact objects (Gaussian binomials, Stirling and Bernoulli numbers) are built
with :class:`fractions.Fraction` so identities can be checked by equality.
Floating counterparts take ``q`` as a float in (0, 1).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from ._core import CapacityError, DomainError, check_q, one_minus_qpow

__all__ = [
    "RationalPoly",
    "q_number",
    "q_factorial",
    "q_pochhammer",
    "q_binomial_exact",
    "q_binomial_eval",
    "q_binomial_array",
    "q_vandermonde_sum",
    "q_composition_sum",
    "rising_factorial",
    "stirling_first",
    "bernoulli_number",
    "bernoulli_poly",
    "periodic_bernoulli",
    "periodic_bernoulli_fourier",
    "complex_binomial",
    "BERNOULLI_CAP",
    "COMPOSITION_CAP",
]

BERNOULLI_CAP = 64
COMPOSITION_CAP = 40


class RationalPoly:
    """Polynomial in one indeterminate with exact rational coefficients.

    Coefficients are stored in ascending degree; trailing zeros are stripped
    so equality is structural.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable = ()):
        c = [Fraction(x) for x in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "RationalPoly":
        return cls([0] * k + [coeff])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self._c), len(other._c))
        return RationalPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return RationalPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RationalPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self._c):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def compose(self, other: "RationalPoly") -> "RationalPoly":
        acc = RationalPoly()
        for c in reversed(self._c):
            acc = acc * other + c
        return acc

    def is_palindromic(self) -> bool:
        return self._c == self._c[::-1]

    def __repr__(self):
        if not self._c:
            return "RationalPoly(0)"
        terms = []
        for k, c in enumerate(self._c):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*q^{k}")
        return "RationalPoly(" + " + ".join(terms) + ")"


# -- floating q-numbers -------------------------------------------------------


def q_number(q: float, z: complex) -> complex:
    """``[z]_q = (1 - q**z)/(1 - q)`` with ``q**z = exp(z log q)``."""
    q = check_q(q)
    if isinstance(z, (int, float)):
        return -math.expm1(z * math.log(q)) / (1.0 - q)
    return complex(one_minus_qpow(math.log(q), z)) / (1.0 - q)


def q_factorial(q: float, n: int) -> float:
    """``[n]_q! = [n]_q [n-1]_q ... [1]_q``; ``[0]_q! = 1``."""
    q = check_q(q)
    if n < 0:
        raise DomainError("q-factorial needs n >= 0")
    out = 1.0
    lq = math.log(q)
    for k in range(1, n + 1):
        out *= -math.expm1(k * lq) / (1.0 - q)
    return out


def q_pochhammer(a: complex, q: float, m: int) -> complex:
    """``(a; q)_m``, the product of ``1 - a q**l`` for ``0 <= l < m``."""
    q = check_q(q)
    if m < 0:
        raise DomainError(f"(a; q)_m needs m >= 0, got {m}")
    out = 1.0
    ql = 1.0
    for _ in range(m):
        out *= 1.0 - a * ql
        ql *= q
    return out


# -- exact Gaussian binomials -------------------------------------------------


@lru_cache(maxsize=None)
def q_binomial_exact(m: int, n: int) -> RationalPoly:
    """Gaussian polynomial ``[m choose n]_q`` as an exact polynomial in q."""
    if m < 0 or n < 0 or n > m:
        raise DomainError(f"q-binomial needs 0 <= n <= m, got m={m}, n={n}")
    if n == 0 or n == m:
        return RationalPoly([1])
    # Pascal: [m, n] = [m-1, n-1] + q^n [m-1, n]
    return q_binomial_exact(m - 1, n - 1) + RationalPoly.monomial(n) * q_binomial_exact(m - 1, n)


def q_binomial_eval(q: float, m: int, n: int) -> float:
    """Numeric ``[m choose n]_q`` as a telescoped product of ratios.

    Each ratio ``(1 - q^(m-k+1)) / (1 - q^k)`` stays O(1) even where
    ``(q; q)_m`` itself would underflow. The product is carried in extended
    precision and rounded once.
    """
    q = check_q(q)
    if m < 0 or n < 0 or n > m:
        raise DomainError(f"q-binomial needs 0 <= n <= m, got m={m}, n={n}")
    n = min(n, m - n)
    lq = np.log(np.longdouble(q))
    out = np.longdouble(1)
    for k in range(1, n + 1):
        out *= np.expm1((m - n + k) * lq) / np.expm1(k * lq)
    return float(out)


def q_binomial_array(q: float, n: np.ndarray, k: int) -> np.ndarray:
    """``[n + k choose k]_q`` for an array of ``n`` (vectorised product of ratios)."""
    lq = math.log(q)
    n = np.asarray(n, dtype=float)
    out = np.ones_like(n)
    for i in range(1, k + 1):
        out *= np.expm1((n + i) * lq) / math.expm1(i * lq)
    return out


def q_vandermonde_sum(l: int, m: int) -> RationalPoly:
    """``sum_{d=0}^{l} [m-1+d choose m-1]_q q^d`` as an exact polynomial."""
    if l < 0 or m < 1:
        raise DomainError(f"need l >= 0 and m >= 1, got l={l}, m={m}")
    acc = RationalPoly()
    for d in range(l + 1):
        acc = acc + q_binomial_exact(m - 1 + d, m - 1) * RationalPoly.monomial(d)
    return acc


def _compositions(n: int, r: int):
    # weak compositions of n into r ordered parts
    for bars in itertools.combinations(range(n + r - 1), r - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + r - 2 - prev)
        yield parts


def q_composition_sum(n: int, r: int) -> RationalPoly:
    """Brute-force ``sum q^(n1 + 2 n2 + ... + r nr)`` over weak compositions of n."""
    if n < 0 or r < 1:
        raise DomainError(f"need n >= 0 and r >= 1, got n={n}, r={r}")
    if n + r > COMPOSITION_CAP:
        raise CapacityError(f"enumeration capped at n + r <= {COMPOSITION_CAP}")
    if math.comb(n + r - 1, r - 1) > 10**6:
        raise CapacityError("more than 10**6 compositions requested")
    coeffs = [0] * (r * n + 1)
    for parts in _compositions(n, r):
        coeffs[sum((i + 1) * p for i, p in enumerate(parts))] += 1
    return RationalPoly(coeffs)


# -- factorial-type numbers ---------------------------------------------------


def rising_factorial(x, l: int):
    """Pochhammer symbol ``(x)_l = x (x+1) ... (x+l-1)``."""
    if l < 0:
        raise DomainError(f"rising factorial needs l >= 0, got {l}")
    out = Fraction(1) if isinstance(x, (int, Fraction)) else 1.0
    for i in range(l):
        out = out * (x + i)
    return out


def complex_binomial(s: complex, l: int) -> complex:
    """Generalised binomial ``binom(s + l - 1, l) = (s)_l / l!``."""
    out = 1.0 + 0j
    for i in range(l):
        out *= (s + i) / (i + 1)
    return out


@lru_cache(maxsize=None)
def _stirling_row(l: int) -> tuple[int, ...]:
    if l == 0:
        return (1,)
    prev = _stirling_row(l - 1)
    row = [0] * (l + 1)
    for j in range(1, l + 1):
        # s(l, j) = s(l-1, j-1) + (l-1) s(l-1, j)
        row[j] = prev[j - 1] + (l - 1) * (prev[j] if j < l else 0)
    return tuple(row)


def stirling_first(l: int, j: int) -> int:
    """Unsigned Stirling number of the first kind: ``(x)_l = sum_j s(l, j) x^j``."""
    if not (0 <= j <= l):
        raise DomainError(f"stirling_first needs 0 <= j <= l, got l={l}, j={j}")
    return _stirling_row(l)[j]


_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli_number(k: int, cap: int = BERNOULLI_CAP) -> Fraction:
    """Exact Bernoulli number with ``B_1 = -1/2``."""
    if k < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if k > cap:
        raise CapacityError(f"Bernoulli index {k} exceeds cap {cap}")
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        acc = sum(math.comb(m + 1, j) * _BERNOULLI[j] for j in range(m))
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[k]


def bernoulli_poly(m: int, y):
    """``B_m(y)``; exact when ``y`` is an int or Fraction."""
    exact = isinstance(y, (int, Fraction))
    acc = Fraction(0) if exact else 0.0
    for k in range(m + 1):
        c = math.comb(m, k) * bernoulli_number(k)
        acc += (c if exact else float(c)) * y ** (m - k)
    return acc


def periodic_bernoulli(m: int, x):
    """``B~_m(x) = B_m(x - floor(x))``."""
    if m < 0:
        raise DomainError("periodic Bernoulli order must be >= 0")
    if isinstance(x, (int, Fraction)):
        return bernoulli_poly(m, Fraction(x) - math.floor(x))
    x = float(x)
    return bernoulli_poly(m, x - math.floor(x))


def periodic_bernoulli_fourier(m: int, x: float, n_max: int) -> float:
    """Truncated Fourier series ``-m! sum_{0<|n|<=n_max} e(nx)/(2 pi i n)^m``."""
    if m < 2:
        raise DomainError("the Fourier expansion needs m >= 2")
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    n = np.arange(1, n_max + 1, dtype=float)
    terms = np.exp(2j * np.pi * n * x) / (2j * np.pi * n) ** m
    terms_neg = np.exp(-2j * np.pi * n * x) / (-2j * np.pi * n) ** m
    total = -math.factorial(m) * (np.sum(terms[::-1]) + np.sum(terms_neg[::-1]))
    return float(total.real)
