"""
Exact coefficient triangles behind the antiderivative expansions.

Two integer triangles drive everything: the ballot (Catalan) triangle
C(n,k)(n-2k+1)/(n-k+1) for powers over arcsin x, and the squared-offset
triangle (1-2n)^2/(k+1-n) C(2k,k+n) for powers over (arcsin x)^2. Rows are
built with Python integers at any size and only turned into floats when a
consumer asks for weights.

Above ``FLOAT_THRESHOLD`` the weights coefficient/2^scale come from a
floating-point path instead: the central ratio C(2n,n)/4^n from an
asymptotic log-gamma-ratio series, then a multiplicative recurrence out
from the peak of the row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .specfun import DomainError

FLOAT_THRESHOLD = 512

KINDS = ("odd_si", "even_ci", "invsq_si", "log_ei")

# weights below this fraction of the row peak are dropped in the float path
_FLOAT_CUTOFF = 2.0**-90


@dataclass(frozen=True)
class ExactCoefficient:
    numerator: int
    scale_log2: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.scale_log2)

    def __float__(self) -> float:
        # int / int is correctly rounded for arbitrarily large operands
        return self.numerator / (1 << self.scale_log2)


@dataclass(frozen=True)
class CoefficientRow:
    """One antiderivative expansion: sum of coefficient * F(m * u)."""

    kind: str
    row_index: int
    scale_log2: int
    entries: tuple[tuple[int, ExactCoefficient], ...]

    @property
    def multipliers(self) -> list[int]:
        return [m for m, _ in self.entries]

    @property
    def numerators(self) -> list[int]:
        return [c.numerator for _, c in self.entries]

    def signed_sum(self) -> int:
        return sum(self.numerators)

    def weights(self) -> list[float]:
        return [float(c) for _, c in self.entries]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.row_index,
            "scale_log2": self.scale_log2,
            "entries": [[m, c.numerator] for m, c in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoefficientRow":
        scale = int(data["scale_log2"])
        entries = tuple((int(m), ExactCoefficient(int(num), scale)) for m, num in data["entries"])
        return cls(data["kind"], int(data["n"]), scale, entries)


def _require_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    return int(value)


def ballot_coefficient(n: int, k: int) -> int:
    """Catalan-triangle entry C(n,k)(n-2k+1)/(n-k+1), 0 <= k <= n//2."""
    n = _require_int(n, "n")
    k = _require_int(k, "k")
    if n < 0 or not 0 <= k <= n // 2:
        raise DomainError(f"ballot_coefficient needs 0 <= k <= n//2, got n={n}, k={k}")
    q, r = divmod(comb(n, k) * (n - 2 * k + 1), n - k + 1)
    assert r == 0
    return q


def invsq_coefficient(k: int, n: int) -> int:
    """(1-2n)^2/(k+1-n) C(2k,k+n) for 1 <= n <= k."""
    k = _require_int(k, "k")
    n = _require_int(n, "n")
    if not 1 <= n <= k:
        raise DomainError(f"invsq_coefficient needs 1 <= n <= k, got k={k}, n={n}")
    q, r = divmod((1 - 2 * n) ** 2 * comb(2 * k, k + n), k + 1 - n)
    assert r == 0
    return q


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def _ballot_run(n: int, count: int) -> list[int]:
    """ballot_coefficient(n, k) for k = 0..count-1, binomials by recurrence."""
    out = []
    binom = 1
    for k in range(count):
        q, r = divmod(binom * (n - 2 * k + 1), n - k + 1)
        assert r == 0
        out.append(q)
        binom = binom * (n - k) // (k + 1)
    return out


def _row(kind: str, n: int, scale: int, pairs) -> CoefficientRow:
    return CoefficientRow(kind, n, scale, tuple((m, ExactCoefficient(c, scale)) for m, c in pairs))


@lru_cache(maxsize=256)
def odd_row(n: int) -> CoefficientRow:
    """Expansion of int x^(2n+1)/arcsin x dx in Si((2n+2-2k) arcsin x), k = 0..n."""
    n = _require_int(n, "n")
    if n < 0:
        raise DomainError("odd_row needs n >= 0")
    run = _ballot_run(2 * n + 1, n + 1)
    pairs = [(2 * n + 2 - 2 * k, _sign(k + n) * run[k]) for k in range(n + 1)]
    return _row("odd_si", n, 2 * n + 1, pairs)


@lru_cache(maxsize=256)
def even_row(n: int) -> CoefficientRow:
    """Expansion of int x^(2n)/arcsin x dx in Ci((2n+1-2k) arcsin x), k = 0..n."""
    n = _require_int(n, "n")
    if n < 0:
        raise DomainError("even_row needs n >= 0")
    run = _ballot_run(2 * n, n + 1)
    pairs = [(2 * n + 1 - 2 * k, _sign(k + n) * run[k]) for k in range(n + 1)]
    return _row("even_ci", n, 2 * n, pairs)


@lru_cache(maxsize=256)
def invsq_row(k: int) -> CoefficientRow:
    """Si part of int x^(2k)/(arcsin x)^2 dx: multipliers 1, 3, ..., 2k+1."""
    k = _require_int(k, "k")
    if k < 1:
        raise DomainError("invsq_row needs k >= 1")
    pairs = []
    binom = comb(2 * k, k + 1)  # C(2k, k+n), stepped in n
    for n in range(1, k + 1):
        q, r = divmod((1 - 2 * n) ** 2 * binom, k + 1 - n)
        assert r == 0
        pairs.append((2 * n - 1, _sign(n) * q))
        binom = binom * (k - n) // (k + n + 1)
    pairs.append((2 * k + 1, _sign(k + 1) * (2 * k + 1)))
    return _row("invsq_si", k, 2 * k, pairs)


@lru_cache(maxsize=256)
def log_row(n: int) -> CoefficientRow:
    """Expansion of int x^n/ln(1+x) dx in Ei((k+1) ln(1+x)), k = 0..n."""
    n = _require_int(n, "n")
    if n < 0:
        raise DomainError("log_row needs n >= 0")
    return _row("log_ei", n, 0, [(k + 1, _sign(k + n) * comb(n, k)) for k in range(n + 1)])


ROW_BUILDERS = {
    "odd": odd_row,
    "even": even_row,
    "invsq": invsq_row,
    "log": log_row,
}


def _ratio_series_coefficients(terms: int = 8) -> list[tuple[int, float]]:
    """Coefficients c_j of ln(Gamma(n+1/2)/Gamma(n+1)) + ln(n)/2 ~ sum c_j n^-j.

    From the generalized Stirling series: c_j = (-1)^(j+1)
    (B_{j+1}(1/2) - B_{j+1}(1)) / (j (j+1)), with B_m(1/2) = (2^(1-m) - 1) B_m.
    Only odd j survive.
    """
    bern = _bernoulli_numbers(2 * terms + 2)
    out = []
    for j in range(1, 2 * terms + 1):
        m = j + 1
        b1 = bern[m] if m != 1 else Fraction(1, 2)
        bhalf = (Fraction(2) ** (1 - m) - 1) * bern[m]
        c = (-1) ** (j + 1) * (bhalf - b1) / (j * (j + 1))
        if c:
            out.append((j, float(c)))
    return out


def _bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0..B_n with B_1 = -1/2."""
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        b[m] = -sum(comb(m + 1, j) * b[j] for j in range(m)) / (m + 1)
    return b


_RATIO_COEFFS = _ratio_series_coefficients()
_HALF_LOG_PI = 0.5 * math.log(math.pi)


def log_central_ratio(n: int) -> float:
    """ln(C(2n,n)/4^n), exact rounding for small n and Stirling series above 64."""
    if n < 0:
        raise DomainError("log_central_ratio needs n >= 0")
    if n <= 64:
        return math.log(comb(2 * n, n) / (1 << (2 * n)))
    inv = 1.0 / n
    corr = [c * inv**j for j, c in reversed(_RATIO_COEFFS)]
    return math.fsum([-0.5 * math.log(n), -_HALF_LOG_PI, *corr])


def central_ratio(n: int) -> float:
    """C(2n,n)/4^n as a float."""
    if n <= FLOAT_THRESHOLD:
        return comb(2 * n, n) / (1 << (2 * n))
    return math.exp(log_central_ratio(n))


def _window(n: int) -> int:
    # b(peak - d)/b(peak) ~ exp(-d^2/n); 2^-90 is reached near d = 7.9 sqrt(n)
    return min(n + 1, int(10 * math.sqrt(n)) + 64)


def _peak_down(peak: float, ratios: np.ndarray) -> np.ndarray:
    """values[0] = peak, values[i] = values[i-1] * ratios[i-1]."""
    out = np.empty(len(ratios) + 1)
    out[0] = peak
    np.cumprod(ratios, out=out[1:])
    out[1:] *= peak
    return out


def odd_row_weights(n: int, exact: bool | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Signed float weights coefficient/2^(2n+1) and multipliers of odd_row(n).

    Ordered k ascending. In the float path trailing entries below
    2^-90 of the peak are dropped (the returned arrays are then shorter).
    """
    if exact is None:
        exact = n <= FLOAT_THRESHOLD
    if exact:
        row = odd_row(n) if n <= 256 else odd_row.__wrapped__(n)
        return np.array(row.weights()), np.array(row.multipliers, dtype=np.int64)
    # b_k = C(2n+1,k)/2^(2n+1); b_n = r_n (2n+1)/(2(n+1)), b_{k-1} = b_k k/(2n+2-k)
    width = _window(n)
    peak = central_ratio(n) * (2 * n + 1) / (2 * (n + 1))
    k = np.arange(n, n - width + 1, -1, dtype=np.float64)
    b = _peak_down(peak, k / (2 * n + 2 - k))[::-1]  # k = n-width+1 .. n
    kk = np.arange(n - width + 1, n + 1, dtype=np.float64)
    w = b * (2 * n - 2 * kk + 2) / (2 * n - kk + 2)
    sign = np.where((kk + n) % 2 == 0, 1.0, -1.0)
    keep = b >= peak * _FLOAT_CUTOFF
    mult = (2 * n + 2 - 2 * kk).astype(np.int64)
    return (sign * w)[keep], mult[keep]


def invsq_row_weights(k: int, exact: bool | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Signed float weights coefficient/4^k and multipliers of invsq_row(k)."""
    if exact is None:
        exact = k <= FLOAT_THRESHOLD
    if exact:
        row = invsq_row(k) if k <= 256 else invsq_row.__wrapped__(k)
        return np.array(row.weights()), np.array(row.multipliers, dtype=np.int64)
    # c_n = C(2k,k+n)/4^k: c_0 = r_k, c_n = c_{n-1} (k-n+1)/(k+n)
    n = np.arange(1, _window(k) + 1, dtype=np.float64)
    c = _peak_down(central_ratio(k), (k - n + 1) / (k + n))[1:]
    w = (1 - 2 * n) ** 2 / (k + 1 - n) * c
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    keep = c >= c[0] * _FLOAT_CUTOFF
    weights = (sign * w)[keep]
    mults = (2 * n - 1).astype(np.int64)[keep]
    # the lone top entry (-1)^(k+1)(2k+1)/4^k underflows long before it matters
    top = (2 * k + 1) * math.ldexp(1.0, -2 * k) * _sign(k + 1)
    return np.append(weights, top), np.append(mults, 2 * k + 1)
