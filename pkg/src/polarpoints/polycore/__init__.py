"""Exact polynomial arithmetic over Q: the kernel every other module uses."""

from .calculus import (
    change_of_vars,
    change_of_vars_matrix,
    det_laplace,
    jacobian,
    p_minors,
    partial_derivative,
    poly_matmul,
    truncated_jacobian,
)
from .matrix import IncrementalEchelon, RatMatrix, SingularMatrixError, solve_linear
from .mpoly import Height, MPoly, RingMismatchError, as_rat, grevlex_key, height
from .upoly import UPoly, gcd, inverse_mod, is_squarefree, squarefree_part, xgcd


def evaluate(f: MPoly, point):
    return f.evaluate(point)


__all__ = [
    "Height",
    "IncrementalEchelon",
    "MPoly",
    "RatMatrix",
    "RingMismatchError",
    "SingularMatrixError",
    "UPoly",
    "as_rat",
    "change_of_vars",
    "change_of_vars_matrix",
    "det_laplace",
    "evaluate",
    "gcd",
    "grevlex_key",
    "height",
    "inverse_mod",
    "is_squarefree",
    "jacobian",
    "p_minors",
    "partial_derivative",
    "poly_matmul",
    "solve_linear",
    "squarefree_part",
    "truncated_jacobian",
    "xgcd",
]
