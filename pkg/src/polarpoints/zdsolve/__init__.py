"""Exact zero-dimensional solving: Groebner bases, quotient algebras and
univariate parameterizations."""

from .groebner import GroebnerBasis, GroebnerLimitExceeded, groebner
from .param import (
    ContractViolation,
    Verdict,
    ZeroDimParam,
    cleared_eval,
    project_param,
    transform_param,
    verify_param,
)
from .quotient import (
    INFINITE,
    QuotientAlgebra,
    hessenberg_charpoly,
    krull_dimension,
    quotient_dimension,
)
from .solve import (
    SolveOutcome,
    SolveStatus,
    lambda_candidates,
    minimal_polynomial_on,
    parameterize,
    radicalize,
    solve_zero_dim,
)

__all__ = [
    "ContractViolation",
    "GroebnerBasis",
    "GroebnerLimitExceeded",
    "INFINITE",
    "QuotientAlgebra",
    "SolveOutcome",
    "SolveStatus",
    "Verdict",
    "ZeroDimParam",
    "cleared_eval",
    "groebner",
    "hessenberg_charpoly",
    "krull_dimension",
    "lambda_candidates",
    "minimal_polynomial_on",
    "parameterize",
    "project_param",
    "quotient_dimension",
    "radicalize",
    "solve_zero_dim",
    "transform_param",
    "verify_param",
]
