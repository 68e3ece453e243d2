"""
Independent numerical checks: adaptive quadrature, Richardson differences,
and raw integrand builders.

Nothing here calls the special-function or closed-form code. Reference
values of Si, Ci and Ei are plain quadratures of their integrands, and
the Euler-Mascheroni constant is itself obtained by quadrature.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from scipy import integrate as _integrate

MAX_SUBDIVISIONS = 10**6
MIN_TOL = 1e-13


class OracleError(ArithmeticError):
    """Quadrature or differencing could not meet its contract."""


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    abs_error_bound: float
    subdivisions: int


def integrate(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12) -> QuadratureEstimate:
    """Adaptive Gauss-Kronrod (QUADPACK qags) with an absolute tolerance.

    The subdivision limit is raised tenfold on each failed attempt up to
    ``MAX_SUBDIVISIONS``; if the error bound still exceeds ``tol`` an
    ``OracleError`` is raised.
    """
    if tol < MIN_TOL:
        raise ValueError(f"tol must be >= {MIN_TOL}, got {tol}")
    if a == b:
        return QuadratureEstimate(0.0, 0.0, 0)
    limit = 100
    while True:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            value, err, info, *_ = _integrate.quad(
                f, a, b, epsabs=tol, epsrel=0.0, limit=limit, full_output=1
            )
        if not math.isfinite(value):
            raise OracleError(f"non-finite quadrature value on [{a}, {b}]")
        if err <= tol:
            return QuadratureEstimate(value, err, int(info["last"]))
        if limit >= MAX_SUBDIVISIONS:
            raise OracleError(
                f"quadrature on [{a}, {b}] stalled at error {err:.3g} > tol {tol:.3g}"
            )
        limit = min(limit * 10, MAX_SUBDIVISIONS)


def central_difference(f: Callable[[float], float], x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def differentiate(f: Callable[[float], float], x: float, base_step: float = 1e-3) -> float:
    """Central difference with one Richardson step, samples on [x - 2h, x + 2h]."""
    h = base_step
    d1 = central_difference(f, x, h)
    d2 = central_difference(f, x, 2.0 * h)
    out = (4.0 * d1 - d2) / 3.0
    if not math.isfinite(out):
        raise OracleError(f"non-finite difference quotient at x={x}")
    return out


# -- integrands ---------------------------------------------------------------

INTEGRAND_KINDS = (
    "odd_power_over_asin",
    "even_power_over_asin",
    "power_over_asin_sq",
    "power_over_log",
)


def integrand(kind: str, index: int) -> Callable[[float], float]:
    """Integrand on [0, 1] with its limit at x = 0 filled in.

    odd_power_over_asin(n)   x^(2n+1)/arcsin x,  n >= 0
    even_power_over_asin(n)  x^(2n)/arcsin x,    n >= 0 (n = 0 blows up at 0)
    power_over_asin_sq(k)    x^(2k)/arcsin(x)^2, k >= 1
    power_over_log(n)        x^n/ln(1+x),        n >= 0 (n = 0 blows up at 0)
    """
    if isinstance(index, bool) or not isinstance(index, int):
        raise ValueError(f"index must be an integer, got {index!r}")
    if kind == "odd_power_over_asin":
        if index < 0:
            raise ValueError("odd_power_over_asin needs index >= 0")
        p = 2 * index + 1
        at_zero = 1.0 if p == 1 else 0.0
        return _guard(lambda x: x**p / math.asin(x), at_zero)
    if kind == "even_power_over_asin":
        if index < 0:
            raise ValueError("even_power_over_asin needs index >= 0")
        p = 2 * index
        at_zero = math.inf if p == 0 else 0.0
        return _guard(lambda x: x**p / math.asin(x), at_zero)
    if kind == "power_over_asin_sq":
        if index < 1:
            raise ValueError("power_over_asin_sq needs index >= 1")
        p = 2 * index
        at_zero = 1.0 if p == 2 else 0.0
        return _guard(lambda x: x**p / math.asin(x) ** 2, at_zero)
    if kind == "power_over_log":
        if index < 0:
            raise ValueError("power_over_log needs index >= 0")
        p = index
        at_zero = math.inf if p == 0 else (1.0 if p == 1 else 0.0)
        return _guard(lambda x: x**p / math.log1p(x), at_zero)
    raise ValueError(f"unknown integrand kind {kind!r}")


def _guard(g: Callable[[float], float], at_zero: float) -> Callable[[float], float]:
    def f(x: float) -> float:
        return at_zero if x == 0.0 else g(x)

    return f


def _sinc(t: float) -> float:
    return 1.0 if t == 0.0 else math.sin(t) / t


def _cos_m1_over_t(t: float) -> float:
    if abs(t) < 1e-4:
        t2 = t * t
        return -t / 2.0 + t * t2 / 24.0
    return -2.0 * math.sin(t / 2.0) ** 2 / t


def _expm1_over_t(t: float) -> float:
    return 1.0 if t == 0.0 else math.expm1(t) / t


def _gamma_integrand(x: float) -> float:
    # 1/ln x + 1/(1 - x); series in u = 1 - x near 1 avoids cancellation
    u = 1.0 - x
    if x == 0.0:
        return 1.0
    if u < 1e-3:
        return 0.5 + u * (1 / 12 + u * (1 / 24 + u * (19 / 720 + u * 3 / 160)))
    return 1.0 / math.log(x) + 1.0 / u


@lru_cache(maxsize=1)
def euler_gamma() -> float:
    """gamma = int_0^1 (1/ln x + 1/(1-x)) dx."""
    return integrate(_gamma_integrand, 0.0, 1.0, tol=MIN_TOL).value


def _split_integrate(f, x: float, tol: float) -> float:
    # one panel per ~2*pi keeps oscillatory integrands well resolved
    pieces = max(1, int(abs(x) / 6.0))
    edges = [x * i / pieces for i in range(pieces + 1)]
    return math.fsum(integrate(f, lo, hi, tol / pieces).value for lo, hi in zip(edges, edges[1:]))


def si_reference(x: float, tol: float = 1e-13) -> float:
    return _split_integrate(_sinc, x, max(tol, MIN_TOL * max(1, int(abs(x) / 6.0))))


def ci_reference(x: float, tol: float = 1e-13) -> float:
    if x <= 0:
        raise ValueError("ci_reference needs x > 0")
    tail = _split_integrate(_cos_m1_over_t, x, max(tol, MIN_TOL * max(1, int(x / 6.0))))
    return euler_gamma() + math.log(x) + tail


def ei_reference(z: float, rtol: float = 1e-13) -> float:
    if z <= 0:
        raise ValueError("ei_reference needs z > 0")
    scale = max(1.0, math.exp(z) / z)
    tail = integrate(_expm1_over_t, 0.0, z, tol=max(MIN_TOL, rtol * scale)).value
    return euler_gamma() + math.log(z) + tail
