import math
import random
from fractions import Fraction

import numpy as np
import pytest

from sinseries import closedform, transforms
from sinseries.specfun import DomainError, si
from sinseries.transforms import (
    ConvergenceReport,
    arcsine_coeff,
    arcsine_coeff_exact,
    arcsine_sq_coeff,
    arcsine_sq_coeff_central,
    arcsine_sq_coeff_exact,
    convergence_table,
    derived_series_sec2,
    evaluate_theorem,
    literal_theorem_term,
    theorem_term,
    theorem_terms,
)


class TestCoefficients:
    def test_arcsine(self):
        assert arcsine_coeff(0) == 1.0
        assert arcsine_coeff_exact(1) == Fraction(1, 6)
        assert arcsine_coeff_exact(2) == Fraction(3, 40)

    @pytest.mark.parametrize("j", [100, 600, 5000])
    def test_arcsine_dual_path(self, j):
        assert arcsine_coeff(j, exact=False) == pytest.approx(float(arcsine_coeff_exact(j)), rel=1e-13)

    def test_arcsine_sq_low_orders(self):
        assert arcsine_sq_coeff(0) == 1.0
        assert arcsine_sq_coeff_exact(1) == Fraction(1, 3)

    def test_arcsine_sq_by_convolution(self):
        # square arcsin x = sum a_j x^(2j+1): coefficient of x^(2k+2) is sum_{i+j=k} a_i a_j
        for k in range(12):
            conv = sum(arcsine_coeff_exact(i) * arcsine_coeff_exact(k - i) for i in range(k + 1))
            assert conv == arcsine_sq_coeff_exact(k)

    def test_two_forms_agree_exactly(self):
        for k in range(51):
            assert arcsine_sq_coeff_exact(k) == arcsine_sq_coeff_central(k + 1)

    @pytest.mark.parametrize("k", [100, 600, 5000])
    def test_arcsine_sq_dual_path(self, k):
        assert arcsine_sq_coeff(k, exact=False) == pytest.approx(float(arcsine_sq_coeff_exact(k)), rel=1e-13)

    def test_negative(self):
        with pytest.raises(DomainError):
            arcsine_coeff(-1)
        with pytest.raises(DomainError):
            arcsine_sq_coeff(-1)


class TestTerms:
    def test_thm1_first(self):
        assert theorem_term(1, 0).term_value == pytest.approx(si(math.pi).value / 2, abs=1e-15)

    def test_thm2_first(self):
        expected = si(math.pi).value - si(2 * math.pi).value / 2
        assert theorem_term(2, 0).term_value == pytest.approx(expected, abs=1e-15)
        assert literal_theorem_term(2, 0).term_value == pytest.approx(expected, abs=1e-15)

    def test_thm3_first(self):
        expected = si(math.pi).value / 2 - si(2 * math.pi).value / 4
        assert theorem_term(3, 1).term_value == pytest.approx(expected, abs=1e-15)
        assert expected == pytest.approx(0.5714, abs=1e-4)

    @pytest.mark.parametrize("tid,i", [(3, 0), (1, -1), (4, 2), (2, 1.5)])
    def test_out_of_range(self, tid, i):
        with pytest.raises(DomainError):
            theorem_term(tid, i)

    @pytest.mark.parametrize("tid", transforms.THEOREMS)
    def test_positive(self, tid):
        assert (theorem_terms(tid, 500) > 0).all()

    @pytest.mark.parametrize("tid", transforms.THEOREMS)
    def test_dual_path(self, tid):
        rng = random.Random(20 + tid)
        start = transforms.FIRST_INDEX[tid]
        for i in rng.sample(range(start, 301), 50):
            lit = literal_theorem_term(tid, i).term_value
            assert theorem_term(tid, i).term_value == pytest.approx(lit, rel=1e-11)

    def test_inner_count(self):
        assert theorem_term(1, 5).inner_terms_evaluated == 6
        assert literal_theorem_term(2, 5).inner_terms_evaluated == 7


class TestReports:
    def test_thm1_small_budget(self):
        reports = convergence_table(1, [250, 500, 1000, 2000])
        errors = [r.raw_error for r in reports]
        assert all(r.partial_sum < 1.0 for r in reports)
        assert all(a > b for a, b in zip(errors, errors[1:]))

    @pytest.mark.parametrize("tid", transforms.THEOREMS)
    def test_monotone_bounded(self, tid):
        terms = theorem_terms(tid, 3000)
        partial = np.cumsum(terms)
        assert (np.diff(partial) > 0).all()
        assert partial[-1] <= transforms.KNOWN_LIMITS[tid] + 1e-9

    @pytest.mark.parametrize("tid", transforms.THEOREMS)
    def test_tail_exponent(self, tid):
        # every theorem's terms fall off like i^-5/2
        r = evaluate_theorem(tid, 2000)
        assert 2.0 < r.tail_exponent < 3.0

    def test_small_budget_is_flagged(self):
        r = evaluate_theorem(1, 10)
        assert r.extrapolation_skipped
        assert r.extrapolated_value is None and r.tail_exponent is None

    def test_budget_limits(self):
        with pytest.raises(DomainError):
            evaluate_theorem(1, 7)
        with pytest.raises(DomainError):
            evaluate_theorem(1, transforms.J_MAX + 1)

    def test_plain_sum_close_to_compensated(self):
        a = evaluate_theorem(3, 500, compensated=True).partial_sum
        b = evaluate_theorem(3, 500, compensated=False).partial_sum
        assert abs(a - b) < 1e-13

    def test_deterministic_across_chunking(self):
        results = set()
        for chunk in (1, 4, 16, 64):
            closedform._integral_odd_value.cache_clear()
            results.add(evaluate_theorem(2, 600, parallel_chunk=chunk, workers=3).partial_sum)
        assert len(results) == 1

    def test_report_round_trip(self):
        r = evaluate_theorem(1, 100)
        assert ConvergenceReport.from_dict(r.to_dict()) == r

    def test_extrapolation_improves(self):
        r = evaluate_theorem(1, 2000)
        assert r.extrapolated_error < r.raw_error / 20


class TestSec2:
    def test_first_term(self):
        assert transforms.sec2_term(0) == closedform.integral_invsq(1).value

    def test_monotone_and_bounded(self):
        terms = transforms.sec2_terms(2000)
        assert (terms > 0).all()
        assert np.cumsum(terms)[-1] <= transforms.sec2_known_limit() + 1e-9

    def test_more_terms_help(self):
        small, large = convergence_table("sec2", [1000, 2000])
        assert large.raw_error < small.raw_error

    def test_report(self):
        r = derived_series_sec2(500)
        assert r.theorem_id == "sec2"
        assert r.known_limit == pytest.approx(si(math.pi).value / 2, abs=1e-13)
