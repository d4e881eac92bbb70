"""Division and summation polynomials over Q and dependence loci over finite fields."""

from ._core import (
    BudgetExceeded,
    DomainError,
    candidate_W,
    division_polynomials,
    is_K_mult_dependent,
    is_L_linear_dependent,
    locus,
    resultant,
    resultant_table,
    run_acceptance,
    summation_polynomial,
)

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "candidate_W",
    "division_polynomials",
    "is_K_mult_dependent",
    "is_L_linear_dependent",
    "locus",
    "resultant",
    "resultant_table",
    "run_acceptance",
    "summation_polynomial",
]
