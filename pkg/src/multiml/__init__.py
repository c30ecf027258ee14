"""Multinomial Mittag-Leffler functions with certified truncation."""

from .classic import EvalResult, MLParams, classic_tail_bound, eval_classic, mittag_leffler
from .combinatorics import (
    Composition,
    compositions,
    compositions_array,
    count_compositions,
    identity_deviation,
    log_multinomial,
    multinomial_exact,
)
from .errors import (
    BudgetExceededError,
    ConvergenceError,
    DomainError,
    MultiMLError,
    NumericalOverflowError,
    TailBoundNotApplicableError,
)
from .estimate import EstimateConstants, compute_constants, compute_n0
from .gamma import GammaMinimum, find_gamma_minimum, gamma, gamma_minimum, log_gamma
from .multinomial import (
    MultiMLParams,
    eval_multinomial,
    multinomial_partial_sum,
    multinomial_tail_bound,
    term_block,
)
from .verify import BoundCheck, Ranges, VerifyReport, check_bound, verify_random

__version__ = "0.1.0"

__all__ = [
    "BoundCheck",
    "BudgetExceededError",
    "Composition",
    "ConvergenceError",
    "DomainError",
    "EstimateConstants",
    "EvalResult",
    "GammaMinimum",
    "MLParams",
    "MultiMLError",
    "MultiMLParams",
    "NumericalOverflowError",
    "Ranges",
    "TailBoundNotApplicableError",
    "VerifyReport",
    "check_bound",
    "classic_tail_bound",
    "compositions",
    "compositions_array",
    "compute_constants",
    "compute_n0",
    "count_compositions",
    "eval_classic",
    "eval_multinomial",
    "find_gamma_minimum",
    "gamma",
    "gamma_minimum",
    "identity_deviation",
    "log_gamma",
    "log_multinomial",
    "mittag_leffler",
    "multinomial_exact",
    "multinomial_partial_sum",
    "multinomial_tail_bound",
    "term_block",
    "verify_random",
]
