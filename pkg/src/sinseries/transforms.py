"""
Double series built from power series of arcsin x and (arcsin x)^2.

Dividing such a series by arcsin x and integrating over [0, 1] termwise
turns x^(2n+1) into ``integral_odd(n)``, so every outer term is
(series coefficient) x (finite Si combination):

    theorem 1:  1    = sum_j a_j I(j)            a_j: arcsin coefficients
    theorem 2:  pi/2 = sum_k 4 s_k I(k+1)        s_k: (arcsin)^2 coefficients
    theorem 3:  pi/4 = sum_n 2 s_(n-1) I(n)

with I(n) = int_0^1 x^(2n+1)/arcsin x dx. The same terms are also built
literally from the stated double sums as a cross-check.

Terms decay like i^(-5/2); ``evaluate_theorem`` can add an algebraic tail
A i^(-p) fitted on the last decade of computed terms.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy.special import zeta

from . import closedform, oracle, specfun
from .specfun import DomainError
from .triangles import FLOAT_THRESHOLD, log_central_ratio

THEOREMS = (1, 2, 3)
KNOWN_LIMITS = {1: 1.0, 2: math.pi / 2, 3: math.pi / 4}
FIRST_INDEX = {1: 0, 2: 0, 3: 1}
J_MAX = 2 * 10**4
MIN_FIT_TERMS = 20


@dataclass(frozen=True)
class SeriesTerm:
    outer_index: int
    term_value: float
    inner_terms_evaluated: int


@dataclass(frozen=True)
class ConvergenceReport:
    theorem_id: str
    terms_used: int
    partial_sum: float
    tail_exponent: float | None
    extrapolated_value: float | None
    known_limit: float
    raw_error: float
    extrapolated_error: float | None
    extrapolation_skipped: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ConvergenceReport":
        return cls(**data)


# -- power-series coefficients -------------------------------------------------


def arcsine_coeff_exact(j: int) -> Fraction:
    """(2j)!/(4^j (j!)^2 (2j+1)), the coefficient of x^(2j+1) in arcsin x."""
    return Fraction(comb(2 * j, j), (1 << (2 * j)) * (2 * j + 1))


def arcsine_coeff(j: int, exact: bool | None = None) -> float:
    if j < 0:
        raise DomainError("arcsine_coeff needs j >= 0")
    if exact is None:
        exact = j <= FLOAT_THRESHOLD
    if exact:
        return float(arcsine_coeff_exact(j))
    return math.exp(log_central_ratio(j)) / (2 * j + 1)


def arcsine_sq_coeff_exact(k: int) -> Fraction:
    """4^k (k!)^2/((2k+1)! (k+1)), the coefficient of x^(2k+2) in (arcsin x)^2."""
    return Fraction((1 << (2 * k)) * factorial(k) ** 2, factorial(2 * k + 1) * (k + 1))


def arcsine_sq_coeff_central(n: int) -> Fraction:
    """The same coefficient written as 2^(2n)/(2 n^2 C(2n,n)), n = k+1 >= 1."""
    return Fraction(1 << (2 * n), 2 * n * n * comb(2 * n, n))


def arcsine_sq_coeff(k: int, exact: bool | None = None) -> float:
    if k < 0:
        raise DomainError("arcsine_sq_coeff needs k >= 0")
    if exact is None:
        exact = k <= FLOAT_THRESHOLD
    if exact:
        return float(arcsine_sq_coeff_exact(k))
    return math.exp(-log_central_ratio(k)) / ((2 * k + 1) * (k + 1))


# -- theorem terms ---------------------------------------------------------------


def _check_theorem(theorem_id: int, i: int) -> None:
    if theorem_id not in THEOREMS:
        raise DomainError(f"unknown theorem id {theorem_id!r}")
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or i < FIRST_INDEX[theorem_id]:
        raise DomainError(f"theorem {theorem_id} index must be an integer >= {FIRST_INDEX[theorem_id]}, got {i!r}")


def _split(theorem_id: int, i: int) -> tuple[float, int]:
    """(multiplier of I(n), n) for outer index i."""
    if theorem_id == 1:
        return arcsine_coeff(i), i
    if theorem_id == 2:
        return 4.0 * arcsine_sq_coeff(i), i + 1
    return 2.0 * arcsine_sq_coeff(i - 1), i


def theorem_term(theorem_id: int, i: int) -> SeriesTerm:
    """Outer term i as coefficient x integral_odd."""
    _check_theorem(theorem_id, i)
    coeff, n = _split(theorem_id, int(i))
    value = coeff * closedform.integral_odd(n).value
    return SeriesTerm(int(i), value, n + 1)


def literal_theorem_term(theorem_id: int, i: int) -> SeriesTerm:
    """Outer term i summed exactly as the double sum is written.

    Every rational prefactor is formed exactly and rounded once before
    multiplying its Si value.
    """
    _check_theorem(theorem_id, i)
    i = int(i)
    terms = []
    if theorem_id == 1:
        j = i
        outer = Fraction(factorial(2 * j), 16**j * factorial(j) ** 2 * (2 * j + 1))
        for k in range(j + 1):
            pre = outer * comb(2 * j + 1, k) * (j - k + 1) / (2 * j - k + 2)
            terms.append((-1) ** (k + j) * float(pre) * specfun.si(math.pi * (j + 1 - k)).value)
    elif theorem_id == 2:
        k = i
        outer = Fraction(factorial(k) ** 2, factorial(2 * k + 1) * (k + 1))
        for j in range(k + 2):
            pre = outer * comb(2 * k + 3, j) * (k + 2 - j) / (2 * k + 4 - j)
            terms.append((-1) ** (j + k + 1) * float(pre) * specfun.si(math.pi * (k + 2 - j)).value)
    else:
        n = i
        outer = Fraction(1, n * n * comb(2 * n, n))
        for k in range(n + 1):
            pre = outer * comb(2 * n + 1, k) * (n - k + 1) / (2 * n - k + 2)
            terms.append((-1) ** (k + n) * float(pre) * specfun.si(math.pi * (n + 1 - k)).value)
    return SeriesTerm(i, math.fsum(terms), len(terms))


def theorem_terms(theorem_id: int, count: int, *, parallel_chunk: int = 64, workers: int = 1) -> np.ndarray:
    """First ``count`` outer terms, in index order.

    Terms are independent; chunks may be evaluated on a thread pool but the
    result is assembled in index order, so it never depends on chunking.
    """
    if theorem_id not in THEOREMS:
        raise DomainError(f"unknown theorem id {theorem_id!r}")
    start = FIRST_INDEX[theorem_id]
    return _map_chunks(lambda i: theorem_term(theorem_id, i).term_value, start, count, parallel_chunk, workers)


def _map_chunks(fn, start: int, count: int, chunk: int, workers: int) -> np.ndarray:
    if chunk < 1:
        raise ValueError("parallel_chunk must be >= 1")
    blocks = [range(lo, min(lo + chunk, start + count)) for lo in range(start, start + count, chunk)]

    def run(block):
        return [fn(i) for i in block]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    return np.array([v for part in parts for v in part], dtype=np.float64)


# -- summation and tail ----------------------------------------------------------


def _sum(values, compensated: bool) -> float:
    if compensated:
        return math.fsum(values)
    acc = 0.0
    for v in values:
        acc += v
    return acc


def fit_tail(terms: np.ndarray, start: int) -> tuple[float, float] | None:
    """Least-squares fit of ln(term) = ln A - p ln(i) over the last decade.

    ``terms[0]`` belongs to index ``start``. Returns (A, p) or None when the
    decade holds fewer than ``MIN_FIT_TERMS`` usable terms.
    """
    count = len(terms)
    last = start + count - 1
    lo = max(1, start, (last + 1) // 10)
    idx = np.arange(lo, last + 1)
    vals = terms[idx - start]
    ok = vals > 0
    if ok.sum() < MIN_FIT_TERMS:
        return None
    x = np.log(idx[ok].astype(np.float64))
    y = np.log(vals[ok])
    slope, intercept = np.polyfit(x, y, 1)
    return math.exp(float(intercept)), -float(slope)


def tail_estimate(amplitude: float, exponent: float, first_missing: int) -> float:
    """sum_{i >= first_missing} A i^-p, via the Hurwitz zeta function."""
    if exponent <= 1.0:
        return math.inf
    return amplitude * float(zeta(exponent, first_missing))


def summarize(theorem_id, terms: np.ndarray, start: int, known_limit: float, *, compensated: bool = True,
              extrapolate: bool = True) -> ConvergenceReport:
    partial = _sum(terms.tolist(), compensated)
    fit = fit_tail(terms, start) if extrapolate else None
    if fit is None:
        return ConvergenceReport(str(theorem_id), len(terms), partial, None, None, known_limit,
                                 abs(known_limit - partial), None, extrapolation_skipped=extrapolate)
    amp, p = fit
    ext = partial + tail_estimate(amp, p, start + len(terms))
    return ConvergenceReport(str(theorem_id), len(terms), partial, p, ext, known_limit,
                             abs(known_limit - partial), abs(known_limit - ext))


def _check_budget(J: int, allow_large: bool) -> None:
    if J < 8:
        raise DomainError(f"term budget must be >= 8, got {J}")
    if J > J_MAX and not allow_large:
        raise DomainError(f"term budget {J} exceeds {J_MAX}; pass allow_large=True")


def evaluate_theorem(theorem_id: int, J: int, *, compensated: bool = True, extrapolate: bool = True,
                     parallel_chunk: int = 64, workers: int = 1, allow_large: bool = False) -> ConvergenceReport:
    """Partial sum of the first J outer terms, optionally with a fitted tail."""
    _check_budget(J, allow_large)
    terms = theorem_terms(theorem_id, J, parallel_chunk=parallel_chunk, workers=workers)
    return summarize(theorem_id, terms, FIRST_INDEX[theorem_id], KNOWN_LIMITS[theorem_id],
                     compensated=compensated, extrapolate=extrapolate)


def convergence_table(theorem_id, budgets, **options) -> list[ConvergenceReport]:
    """Reports at several budgets, sharing one term computation."""
    budgets = sorted(set(int(b) for b in budgets))
    allow_large = options.pop("allow_large", False)
    for b in budgets:
        _check_budget(b, allow_large)
    compensated = options.pop("compensated", True)
    extrapolate = options.pop("extrapolate", True)
    if theorem_id == "sec2":
        terms = sec2_terms(budgets[-1], **options)
        start, limit = 0, sec2_known_limit()
    else:
        terms = theorem_terms(theorem_id, budgets[-1], **options)
        start, limit = FIRST_INDEX[theorem_id], KNOWN_LIMITS[theorem_id]
    return [summarize(theorem_id, terms[:b], start, limit, compensated=compensated, extrapolate=extrapolate)
            for b in budgets]


# -- series from x/(arcsin x)^2 ----------------------------------------------------


def sec2_term(j: int) -> float:
    """a_j int_0^1 x^(2j+2)/(arcsin x)^2 dx."""
    if j < 0:
        raise DomainError("sec2_term needs j >= 0")
    return arcsine_coeff(j) * closedform.integral_invsq(j + 1).value


def sec2_terms(count: int, *, parallel_chunk: int = 64, workers: int = 1) -> np.ndarray:
    return _map_chunks(sec2_term, 0, count, parallel_chunk, workers)


def sec2_known_limit() -> float:
    """Quadrature value of int_0^1 x/arcsin x dx."""
    return oracle.integrate(oracle.integrand("odd_power_over_asin", 0), 0.0, 1.0, tol=1e-13).value


def derived_series_sec2(J: int, *, compensated: bool = True, extrapolate: bool = True, parallel_chunk: int = 64,
                        workers: int = 1, allow_large: bool = False) -> ConvergenceReport:
    """sum_j a_j int_0^1 x^(2j+2)/(arcsin x)^2 dx against int_0^1 x/arcsin x dx."""
    _check_budget(J, allow_large)
    terms = sec2_terms(J, parallel_chunk=parallel_chunk, workers=workers)
    return summarize("sec2", terms, 0, sec2_known_limit(), compensated=compensated, extrapolate=extrapolate)
