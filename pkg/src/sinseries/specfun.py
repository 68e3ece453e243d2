"""
Sine, cosine and exponential integrals in double precision.

Small arguments use the defining power series. Above ``SWITCH`` the sine
and cosine integrals come from the auxiliary functions f and g, obtained
together as the continued fraction of E1(ix); this converges in a handful
of iterations for large x, so Si(pi*m) with m ~ 1e5 costs O(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EULER_GAMMA = 0.57721566490153286060651209008240243
"""Euler-Mascheroni constant, 35 digits (recomputed from H_n - ln n in the tests)."""

SWITCH = 4.0
_EPS = 2.220446049250313e-16
_MAXITER = 10000


class DomainError(ValueError):
    """Argument outside the domain an evaluator supports."""


@dataclass(frozen=True)
class SpecialValue:
    value: float
    abs_error_estimate: float

    def __float__(self) -> float:
        return self.value


def _check_finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name}: argument must be finite, got {x!r}")
    return x


def _sici_series(x: float) -> tuple[float, float, float]:
    """Power series for Si(x) and Cin(x) = int_0^x (1 - cos t)/t dt, x >= 0.

    Returns (si, cin, largest |term|).
    """
    x2 = x * x
    si_terms = []
    cin_terms = []
    # t = x^(2k+1)/(2k+1)! for Si, u = x^(2k)/(2k)! for Cin
    t = x
    u = 1.0
    k = 0
    big = abs(x)
    while k < 200:
        si_terms.append((-1) ** k * t / (2 * k + 1))
        u *= x2 / ((2 * k + 1) * (2 * k + 2))
        cin_terms.append((-1) ** k * u / (2 * k + 2))
        big = max(big, t, u)
        t *= x2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
        # both partial sums stay positive for 0 < x <= SWITCH
        if t < 1e-18 * abs(si_terms[0]) and u < 1e-18 * abs(cin_terms[0]):
            break
    return math.fsum(si_terms), math.fsum(cin_terms), big


def _e1_imag(x: float) -> complex:
    """E1(ix) * exp(ix) by modified Lentz on the continued fraction, x > 2.

    With the returned h: Ci(x) = -Re(h'), Si(x) = pi/2 + Im(h') where
    h' = h * exp(-ix).
    """
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(2, _MAXITER):
        a = -float((i - 1) * (i - 1))
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) + abs(delta.imag) < _EPS:
            return h
    raise ArithmeticError(f"continued fraction for E1(i*{x}) did not converge")


def _sici_large(x: float) -> tuple[float, float]:
    h = _e1_imag(x) * complex(math.cos(x), -math.sin(x))
    return math.pi / 2 + h.imag, -h.real


def si(x: float) -> SpecialValue:
    """Sine integral Si(x) = int_0^x sin(t)/t dt."""
    x = _check_finite(x, "si")
    ax = abs(x)
    if ax == 0.0:
        return SpecialValue(0.0, 0.0)
    if ax <= SWITCH:
        val, _, big = _sici_series(ax)
        err = 4 * _EPS * big
    else:
        val, _ = _sici_large(ax)
        err = 8 * _EPS * max(1.0, abs(val))
    return SpecialValue(math.copysign(val, x), err)


def cin(x: float) -> float:
    """Entire cosine integral int_0^x (1 - cos t)/t dt, x >= 0."""
    x = _check_finite(x, "cin")
    if x < 0:
        raise DomainError("cin: argument must be nonnegative")
    if x <= SWITCH:
        return _sici_series(x)[1]
    _, c = _sici_large(x)
    return EULER_GAMMA + math.log(x) - c


def ci(x: float) -> SpecialValue:
    """Cosine integral Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt, x > 0."""
    x = _check_finite(x, "ci")
    if x <= 0.0:
        raise DomainError(f"ci: argument must be positive (Ci(0) = -inf), got {x!r}")
    if x <= SWITCH:
        _, c, big = _sici_series(x)
        lx = math.log(x)
        val = EULER_GAMMA + lx - c
        err = 4 * _EPS * (big + abs(lx) + EULER_GAMMA)
    else:
        _, val = _sici_large(x)
        err = 8 * _EPS * max(1.0, abs(val))
    return SpecialValue(val, err)


def ein_positive(z: float) -> float:
    """Ei(z) - gamma - ln z = sum_{k>=1} z^k/(k k!) for z >= 0."""
    z = _check_finite(z, "ein_positive")
    if z < 0:
        raise DomainError("ein_positive: argument must be nonnegative")
    if z == 0.0:
        return 0.0
    terms = []
    power = 1.0  # z^k/k!
    k = 1
    acc = 0.0
    while k < _MAXITER:
        power *= z / k
        term = power / k
        terms.append(term)
        acc += term
        if term < 1e-17 * acc:
            break
        k += 1
    return math.fsum(terms)


def ei(z: float) -> SpecialValue:
    """Exponential integral Ei(z) for z > 0.

    The half-difference (ln z - ln(1/z))/2 of the series definition is
    just ln z on the positive axis.
    """
    z = _check_finite(z, "ei")
    if z <= 0.0:
        raise DomainError(f"ei: argument must be positive, got {z!r}")
    series = ein_positive(z)
    lz = math.log(z)
    val = EULER_GAMMA + lz + series
    # series terms are all positive; rounding is relative to the sum
    err = 4 * _EPS * (abs(series) + abs(lz) + EULER_GAMMA)
    return SpecialValue(val, err)
