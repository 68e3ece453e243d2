"""Verification sweeps shared by the ``verify`` subcommand and the test suite."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import closedform, oracle, triangles

REFERENCE_ROWS = {
    # (builder, index): (multipliers, signed numerators, scale)
    ("odd", 6): ((14, 12, 10, 8, 6, 4, 2), (1, -12, 65, -208, 429, -572, 429), 8192),
    ("even", 6): ((13, 11, 9, 7, 5, 3, 1), (1, -11, 54, -154, 275, -297, 132), 4096),
    ("invsq", 3): ((1, 3, 5, 7), (-5, 27, -25, 7), 64),
    ("invsq", 4): ((1, 3, 5, 7, 9), (-14, 84, -100, 49, -9), 256),
}

INTEGRAL_RANGES = {
    "odd": range(0, 21),
    "even": range(1, 21),
    "invsq": range(1, 16),
    "log": range(1, 16),
}

INTEGRALS = {
    "odd": (closedform.integral_odd, "odd_power_over_asin"),
    "even": (closedform.integral_even, "even_power_over_asin"),
    "invsq": (closedform.integral_invsq, "power_over_asin_sq"),
    "log": (closedform.integral_log, "power_over_log"),
}

ANTIDERIVATIVES = {
    "odd": (closedform.antideriv_odd, "odd_power_over_asin", (0, 1, 2, 6, 13)),
    "even": (closedform.antideriv_even, "even_power_over_asin", (0, 1, 2, 6, 12)),
    "invsq": (closedform.antideriv_invsq, "power_over_asin_sq", (1, 2, 3, 4, 8)),
    "log": (closedform.antideriv_log, "power_over_log", (0, 1, 2, 5, 10)),
}

SAMPLE_POINTS = np.linspace(0.05, 0.95, 20)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str


def oracle_integral(kind: str, n: int, tol: float = 1e-13) -> float:
    return oracle.integrate(oracle.integrand(INTEGRALS[kind][1], n), 0.0, 1.0, tol=tol).value


def integral_check(kind: str, n: int, tol: float) -> tuple[float, float, float]:
    """(closed form, oracle, |difference|)."""
    value = INTEGRALS[kind][0](n).value
    ref = oracle_integral(kind, n, max(oracle.MIN_TOL, tol / 100))
    return value, ref, abs(value - ref)


def rows_suite() -> list[Check]:
    out = []
    for (kind, n), (mults, nums, scale) in REFERENCE_ROWS.items():
        row = triangles.ROW_BUILDERS[kind](n)
        ok = tuple(row.multipliers) == mults and tuple(row.numerators) == nums and 2**row.scale_log2 == scale
        out.append(Check(f"reference row {kind}({n})", ok, f"{row.numerators} / 2^{row.scale_log2}"))
    for kind in ("even", "log"):
        sums = [triangles.ROW_BUILDERS[kind](n).signed_sum() for n in range(1, 31)]
        out.append(Check(f"zero signed sums {kind} n=1..30", all(s == 0 for s in sums), f"max |sum| = {max(map(abs, sums))}"))
    # the builders assert zero remainder on every division
    for n in range(0, 201):
        for k in range(n // 2 + 1):
            triangles.ballot_coefficient(n, k)
    for k in range(1, 201):
        for n in range(1, k + 1):
            triangles.invsq_coefficient(k, n)
    out.append(Check("integrality n <= 200", True, "exact division everywhere"))
    return out


def integrals_suite(tol: float = 1e-9) -> list[Check]:
    out = []
    for kind, indices in INTEGRAL_RANGES.items():
        worst = 0.0
        for n in indices:
            worst = max(worst, integral_check(kind, n, tol)[2])
        out.append(Check(f"integral_{kind} n={indices.start}..{indices.stop - 1}", worst <= tol, f"max |diff| = {worst:.3e}"))
    return out


def derivative_mismatch(kind: str, index: int, x: float) -> tuple[float, float]:
    """(Richardson derivative of the antiderivative, integrand) at x."""
    F, ikind, _ = ANTIDERIVATIVES[kind]
    d = oracle.differentiate(lambda t: F(index, t), float(x), base_step=1e-3)
    return d, oracle.integrand(ikind, index)(float(x))


def antiderivatives_suite(rtol: float = 1e-6, atol: float = 1e-9) -> list[Check]:
    out = []
    for kind, (_, _, indices) in ANTIDERIVATIVES.items():
        worst = 0.0
        ok = True
        for idx in indices:
            for x in SAMPLE_POINTS:
                d, e = derivative_mismatch(kind, idx, x)
                ok &= abs(d - e) <= rtol * abs(e) + atol
                worst = max(worst, abs(d - e) / max(abs(e), atol))
        out.append(Check(f"d/dx antideriv_{kind} {list(indices)}", ok, f"max scaled diff = {worst:.3e}"))
    return out


SUITES = {
    "rows": rows_suite,
    "integrals": integrals_suite,
    "antiderivatives": antiderivatives_suite,
}
