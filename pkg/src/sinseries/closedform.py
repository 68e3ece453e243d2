"""
Closed-form antiderivatives and definite integrals over [0, 1].

Antiderivatives are finite Si/Ci/Ei combinations driven by the rows in
``triangles``; definite integrals take the limits analytically. For the
Ci and Ei families every term diverges like gamma + ln(.) at the lower
limit, but the signed row sums vanish for n >= 1, so the divergent parts
cancel and only sum(c * ln m) survives.

Row terms are accumulated with ``math.fsum`` (exactly rounded), so the
summation order does not affect the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import specfun
from .specfun import DomainError
from .triangles import even_row, invsq_row, invsq_row_weights, log_row, odd_row, odd_row_weights

METHODS = ("closed_form", "closed_form_cancelled")


@dataclass(frozen=True)
class IntegralValue:
    value: float
    method: str
    row_index: int

    def __float__(self) -> float:
        return self.value


def _index(n, name: str, lowest: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < lowest:
        raise DomainError(f"{name} must be an integer >= {lowest}, got {n!r}")
    return int(n)


def _unit_interval(x: float, name: str, *, open_left: bool, open_right: bool) -> float:
    x = float(x)
    lo_ok = x > 0.0 if open_left else x >= 0.0
    hi_ok = x < 1.0 if open_right else x <= 1.0
    if not (lo_ok and hi_ok):
        raise DomainError(f"{name}: x={x!r} outside its interval")
    return x


# -- tables of Si at the endpoint arguments ---------------------------------


@lru_cache(maxsize=8)
def _si_table(count: int, step: float) -> np.ndarray:
    """Si(step * m) for m = 0..count-1."""
    return np.array([specfun.si(step * m).value for m in range(count)])


def _table_size(needed: int) -> int:
    return 1 << max(6, (needed - 1).bit_length())


def si_pi_multiples(upto: int) -> np.ndarray:
    """Si(pi * m) for m = 0..upto (possibly longer)."""
    return _si_table(_table_size(upto + 1), math.pi)


def si_half_pi_multiples(upto: int) -> np.ndarray:
    """Si(m * pi/2) for m = 0..upto (possibly longer)."""
    return _si_table(_table_size(upto + 1), math.pi / 2)


# -- odd powers over arcsin x -------------------------------------------------


def antideriv_odd(n: int, x: float) -> float:
    """Antiderivative of x^(2n+1)/arcsin x vanishing at 0."""
    n = _index(n, "n", 0)
    x = _unit_interval(x, "antideriv_odd", open_left=False, open_right=False)
    u = math.asin(x)
    row = odd_row(n)
    return math.fsum(float(c) * specfun.si(m * u).value for m, c in reversed(row.entries))


def integral_odd(n: int, exact: bool | None = None) -> IntegralValue:
    """int_0^1 x^(2n+1)/arcsin x dx as a signed Si(pi m) combination."""
    n = _index(n, "n", 0)
    return IntegralValue(_integral_odd_value(n, exact), "closed_form", n)


@lru_cache(maxsize=None)
def _integral_odd_value(n: int, exact: bool | None = None) -> float:
    w, mult = odd_row_weights(n, exact)
    table = si_pi_multiples(n + 1)
    return math.fsum((w * table[mult // 2]).tolist())


# -- even powers over arcsin x ------------------------------------------------


def antideriv_even(n: int, x: float) -> float:
    """Antiderivative of x^(2n)/arcsin x as the literal Ci combination."""
    n = _index(n, "n", 0)
    x = _unit_interval(x, "antideriv_even", open_left=True, open_right=False)
    u = math.asin(x)
    row = even_row(n)
    return math.fsum(float(c) * specfun.ci(m * u).value for m, c in reversed(row.entries))


def lower_limit_even(n: int) -> float:
    """lim_{x->0+} antideriv_even(n, x) = 2^-2n sum c ln m, n >= 1."""
    n = _index(n, "n", 1)
    row = even_row(n)
    return math.fsum(float(c) * math.log(m) for m, c in row.entries)


def integral_even(n: int) -> IntegralValue:
    """int_0^1 x^(2n)/arcsin x dx for n >= 1.

    Equals 2^-2n sum c [Ci(m pi/2) - ln m]; with the zero row sum this is
    -2^-2n sum c Cin(m pi/2), which has no ln-sized intermediate terms.
    n = 0 diverges (the integrand behaves like 1/x at the origin).
    """
    n = _index(n, "n", 1)
    row = even_row(n)
    half_pi = math.pi / 2
    value = -math.fsum(float(c) * specfun.cin(m * half_pi) for m, c in reversed(row.entries))
    return IntegralValue(value, "closed_form_cancelled", n)


# -- powers over (arcsin x)^2 ---------------------------------------------------


def antideriv_invsq(k: int, x: float) -> float:
    """Antiderivative of x^(2k)/(arcsin x)^2 on (0, 1), k >= 1."""
    k = _index(k, "k", 1)
    x = _unit_interval(x, "antideriv_invsq", open_left=True, open_right=True)
    u = math.asin(x)
    row = invsq_row(k)
    terms = [float(c) * specfun.si(m * u).value for m, c in row.entries]
    terms.append(-math.sqrt((1.0 - x) * (1.0 + x)) * x ** (2 * k) / u)
    return math.fsum(terms)


def integral_invsq(k: int, exact: bool | None = None) -> IntegralValue:
    """int_0^1 x^(2k)/(arcsin x)^2 dx; the algebraic term vanishes at both ends."""
    k = _index(k, "k", 1)
    return IntegralValue(_integral_invsq_value(k, exact), "closed_form", k)


@lru_cache(maxsize=None)
def _integral_invsq_value(k: int, exact: bool | None = None) -> float:
    w, mult = invsq_row_weights(k, exact)
    table = si_half_pi_multiples(2 * k + 1)
    return math.fsum((w * table[mult]).tolist())


# -- powers over ln(1+x) --------------------------------------------------------


def antideriv_log(n: int, x: float) -> float:
    """Antiderivative of x^n/ln(1+x) for x > 0."""
    n = _index(n, "n", 0)
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"antideriv_log: x must be positive, got {x!r}")
    lg = math.log1p(x)
    row = log_row(n)
    return math.fsum(float(c) * specfun.ei(m * lg).value for m, c in row.entries)


def integral_log_direct(n: int) -> float:
    """sum C(n,k)(-1)^(k+n) [Ei((k+1) ln 2) - ln(k+1)], summed as written.

    Alternating terms grow like 2^n e^(n ln 2); kept as a cross-check for
    the reordered form used by ``integral_log``.
    """
    n = _index(n, "n", 1)
    ln2 = math.log(2.0)
    row = log_row(n)
    return math.fsum(float(c) * (specfun.ei(m * ln2).value - math.log(m)) for m, c in row.entries)


def integral_log(n: int) -> IntegralValue:
    """int_0^1 x^n/ln(1+x) dx for n >= 1.

    After gamma + ln(ln 2) cancels against the zero row sum, what remains is
    sum_k c_k sum_p ((k+1) ln 2)^p/(p p!). Swapping the sums gives
    sum_p (ln 2)^p/(p p!) D_p with D_p = sum_k c_k (k+1)^p an exact integer,
    zero for p < n and positive after, so every term is positive.
    """
    n = _index(n, "n", 1)
    ln2 = math.log(2.0)
    row = log_row(n)
    coeffs = [(m, c.numerator) for m, c in row.entries]
    powers = [1] * len(coeffs)
    scaled = 1.0  # ln2^p / p!
    terms = []
    acc = 0.0
    for p in range(1, 10000):
        powers = [pw * m for pw, (m, _) in zip(powers, coeffs)]
        scaled *= ln2 / p
        if p < n:
            continue
        d = sum(pw * c for pw, (_, c) in zip(powers, coeffs))
        term = float(d) * scaled / p
        terms.append(term)
        acc += term
        if term < 1e-17 * acc:
            break
    return IntegralValue(math.fsum(terms), "closed_form_cancelled", n)


def finite_difference_polynomial_check(n: int, x) -> bool:
    """sum_k C(n,k)(-1)^(k+n)(1+x)^k == x^n, exactly, for rational x."""
    lhs = sum(comb(n, k) * (-1) ** (k + n) * (1 + x) ** k for k in range(n + 1))
    return lhs == x**n
