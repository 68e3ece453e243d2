"""Double series combining binomial coefficients with the sine integral."""

from .closedform import (
    IntegralValue,
    antideriv_even,
    antideriv_invsq,
    antideriv_log,
    antideriv_odd,
    integral_even,
    integral_invsq,
    integral_log,
    integral_odd,
)
from .specfun import DomainError, SpecialValue, ci, ei, si
from .transforms import ConvergenceReport, SeriesTerm, derived_series_sec2, evaluate_theorem, theorem_term
from .triangles import (
    CoefficientRow,
    ExactCoefficient,
    ballot_coefficient,
    even_row,
    invsq_coefficient,
    invsq_row,
    log_row,
    odd_row,
)

__version__ = "0.1.0"
