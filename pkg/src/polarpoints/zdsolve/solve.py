"""Zero-dimensional solving to a univariate parameterization.

The ideal is made radical (Seidenberg: adjoin squarefree parts of the
univariate eliminants), then a separating linear form is searched for. A
form separates exactly when its minimal polynomial on the radical quotient
has degree equal to the quotient dimension; coordinates are then expressed
as polynomials in the form.
"""

from __future__ import annotations

import enum
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence

from ..polycore import MPoly, UPoly, squarefree_part
from .groebner import GroebnerBasis, groebner
from .param import Verdict, ZeroDimParam, verify_param
from .quotient import QuotientAlgebra, _standard_monomials, express

log = logging.getLogger(__name__)


class SolveStatus(str, enum.Enum):
    PARAMETERIZATION = "parameterization"
    NOT_ZERO_DIMENSIONAL = "not_zero_dimensional"
    SEPARATION_FAILURE = "separation_failure"
    INCONSISTENT = "inconsistent"


@dataclass
class SolveOutcome:
    status: SolveStatus
    param: Optional[ZeroDimParam] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (SolveStatus.PARAMETERIZATION, SolveStatus.INCONSISTENT)


def lambda_candidates(nvars: int, support: Sequence[int], seed: int = 0) -> Iterator[List[Fraction]]:
    """Coordinate forms over ``support`` first, then random integer
    combinations with |c_j| <= 2**attempt."""
    for j in support:
        c = [Fraction(0)] * nvars
        c[j] = Fraction(1)
        yield c
    rng = random.Random(f"lambda:{seed}")
    attempt = 0
    while True:
        attempt += 1
        bound = 2**attempt
        while True:
            c = [Fraction(0)] * nvars
            for j in support:
                c[j] = Fraction(rng.randint(-bound, bound))
            if any(c):
                break
        yield c


def radicalize(gb: GroebnerBasis, alg: QuotientAlgebra):
    """Return (gb, algebra, was_radical) for the radical of the ideal."""
    extra = []
    for j in range(alg.nvars):
        coeffs = [Fraction(int(k == j)) for k in range(alg.nvars)]
        mu = alg.minimal_polynomial(coeffs)
        s = squarefree_part(mu)
        if s.degree < mu.degree:
            x = MPoly.var(alg.ring, j)
            extra.append(s(x))
    if not extra:
        return gb, alg, True
    gb2 = groebner(list(gb.generators) + extra)
    return gb2, QuotientAlgebra(gb2), False


def parameterize(alg: QuotientAlgebra, lam: Sequence[Fraction]) -> Optional[ZeroDimParam]:
    """Parameterization with respect to ``lam``, or None if it does not
    separate the points (the algebra must be reduced)."""
    mu, ech = alg.krylov(lam)
    if mu.degree != alg.dim:
        return None
    q = mu  # monic; squarefree because the algebra is reduced and lam separates
    qp = q.derivative()
    v = []
    for j in range(alg.nvars):
        xj = alg.vector(MPoly.var(alg.ring, j))
        c = express(ech, xj)
        if c is None:
            return None
        v.append((UPoly(c) * qp) % q)
    return ZeroDimParam(q, tuple(v), tuple(Fraction(x) for x in lam), alg.ring)


def solve_zero_dim(
    system: Sequence[MPoly],
    lambda_vars: Optional[Sequence[int]] = None,
    budget: int = 8,
    seed: int = 0,
    verify: bool = True,
) -> SolveOutcome:
    """Solve ``system`` exactly.

    ``lambda_vars`` restricts the separating form to those variable indices
    (all variables by default). ``budget`` caps the number of forms tried.
    """
    system = [f for f in system]
    if not system:
        raise ValueError("empty system")
    ring = system[0].ring
    gb = groebner(system)
    diag = {"basis_size": len(gb.generators), "attempts": []}
    if gb.is_unit():
        return SolveOutcome(SolveStatus.INCONSISTENT, ZeroDimParam.empty(ring), diag)
    if _standard_monomials(gb.leading_monomials(), len(ring)) is None:
        return SolveOutcome(SolveStatus.NOT_ZERO_DIMENSIONAL, None, diag)
    alg = QuotientAlgebra(gb)
    diag["quotient_dimension"] = alg.dim
    gb_r, alg_r, radical = radicalize(gb, alg)
    diag["radical"] = radical
    diag["radical_dimension"] = alg_r.dim
    support = list(range(len(ring))) if lambda_vars is None else list(lambda_vars)
    cands = lambda_candidates(len(ring), support, seed)
    for attempt in range(budget):
        lam = next(cands)
        P = parameterize(alg_r, lam)
        diag["attempts"].append([str(c) for c in lam])
        if P is None:
            continue
        if verify:
            verdict = verify_param(P, system)
            if not verdict:
                log.warning("parameterization failed verification: %s", verdict.certificate)
                continue
        diag["lambda_attempts"] = attempt + 1
        log.debug("solve: dim=%d radical=%s attempts=%d", alg_r.dim, radical, attempt + 1)
        return SolveOutcome(SolveStatus.PARAMETERIZATION, P, diag)
    diag["lambda_attempts"] = budget
    return SolveOutcome(SolveStatus.SEPARATION_FAILURE, None, diag)


def minimal_polynomial_on(system: Sequence[MPoly], lam: Sequence[Fraction]):
    """(squarefree minimal polynomial of lam on V(system), #V(system)).

    Returns (UPoly(1), 0) for an empty variety and None when
    V(system) is infinite.
    """
    gb = groebner(list(system))
    if gb.is_unit():
        return UPoly.const(1), 0
    if _standard_monomials(gb.leading_monomials(), len(gb.ring)) is None:
        return None
    _, alg, _ = radicalize(gb, QuotientAlgebra(gb))
    return alg.minimal_polynomial(lam), alg.dim


__all__ = [
    "SolveOutcome",
    "SolveStatus",
    "Verdict",
    "lambda_candidates",
    "minimal_polynomial_on",
    "parameterize",
    "radicalize",
    "solve_zero_dim",
]
