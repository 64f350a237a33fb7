"""Zero-dimensional parameterizations ((q, v_1..v_m), lambda)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from ..polycore import MPoly, RatMatrix, UPoly, gcd


class ContractViolation(ValueError):
    pass


@dataclass(frozen=True)
class ZeroDimParam:
    """Finite point set {(v_j(t)/q'(t))_j : q(t) = 0}.

    ``lam`` holds the coefficients of the linear form lambda over
    ``variables``; lambda takes the value t at the point attached to t.
    """

    q: UPoly
    v: Tuple[UPoly, ...]
    lam: Tuple[Fraction, ...]
    variables: Tuple[str, ...]

    @property
    def degree(self) -> int:
        return self.q.degree

    @property
    def qprime(self) -> UPoly:
        return self.q.derivative()

    @classmethod
    def empty(cls, variables: Sequence[str]) -> "ZeroDimParam":
        variables = tuple(variables)
        lam = tuple(Fraction(int(k == 0)) for k in range(len(variables)))
        return cls(UPoly.const(1), tuple(UPoly() for _ in variables), lam, variables)

    def lambda_support(self) -> set:
        return {self.variables[k] for k, c in enumerate(self.lam) if c}


@dataclass(frozen=True)
class Verdict:
    ok: bool
    certificate: Optional[str] = None
    detail: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


class _ModRing:
    """Cache of powers of v_j and q' modulo q."""

    def __init__(self, q: UPoly, v: Sequence[UPoly], qp: UPoly):
        self.q = q
        self.v = [x % q for x in v]
        self.qp = qp % q
        self._pw: Dict[Tuple[int, int], UPoly] = {}
        self._qpw: Dict[int, UPoly] = {0: UPoly.const(1) % q if q.degree > 0 else UPoly()}

    def vpow(self, j: int, e: int) -> UPoly:
        key = (j, e)
        if key not in self._pw:
            self._pw[key] = self.v[j] if e == 1 else (self.vpow(j, e - 1) * self.v[j]) % self.q
        return self._pw[key]

    def qppow(self, e: int) -> UPoly:
        if e not in self._qpw:
            self._qpw[e] = (self.qppow(e - 1) * self.qp) % self.q
        return self._qpw[e]


def cleared_eval(f: MPoly, P: ZeroDimParam, cache: _ModRing | None = None) -> UPoly:
    """q'^deg(f) * f(v/q') reduced modulo q."""
    q = P.q
    if q.degree <= 0:
        return UPoly()
    if f.nvars != len(P.v):
        raise ValueError("polynomial ring does not match the parameterization")
    mr = cache or _ModRing(q, P.v, P.qprime)
    e = f.total_degree()
    acc = UPoly()
    for m, c in f.terms.items():
        t = mr.qppow(e - sum(m)) * c
        for j, k in enumerate(m):
            if k:
                t = (t * mr.vpow(j, k)) % q
        acc = acc + t
    return acc % q


def verify_param(P: ZeroDimParam, system: Sequence[MPoly] = ()) -> Verdict:
    """Check the defining identities and that every system polynomial
    vanishes on the parameterized points.

    Certificates: "a" shape of q and v, "b" the lambda identity, "c:<k>" the
    k-th system polynomial.
    """
    q = P.q
    if not q.is_monic():
        return Verdict(False, "a", {"reason": "q is not monic"})
    qp = q.derivative()
    if q.degree > 0 and gcd(q, qp).degree != 0:
        return Verdict(False, "a", {"reason": "q is not squarefree"})
    if len(P.v) != len(P.variables) or len(P.lam) != len(P.variables):
        return Verdict(False, "a", {"reason": "arity mismatch"})
    for j, vj in enumerate(P.v):
        if vj.degree >= q.degree:
            return Verdict(False, "a", {"reason": f"deg v_{j + 1} >= deg q"})
    if q.degree > 0:
        lam_v = UPoly()
        for c, vj in zip(P.lam, P.v):
            if c:
                lam_v = lam_v + vj * c
        if (lam_v - UPoly.T() * qp) % q != UPoly():
            return Verdict(False, "b", {"reason": "lambda(v) != T q' mod q"})
    cache = _ModRing(q, P.v, qp) if q.degree > 0 else None
    for k, f in enumerate(system):
        if tuple(f.ring) != P.variables:
            return Verdict(False, f"c:{k}", {"reason": "ring mismatch"})
        if q.degree > 0 and not cleared_eval(f, P, cache).is_zero():
            return Verdict(False, f"c:{k}", {"reason": f"polynomial {k} does not vanish"})
    return Verdict(True)


def project_param(P: ZeroDimParam, keep: Sequence) -> ZeroDimParam:
    """Restrict to the coordinates in ``keep`` (names or indices)."""
    idx = []
    for k in keep:
        idx.append(P.variables.index(k) if isinstance(k, str) else int(k))
    dropped = [j for j in range(len(P.variables)) if j not in idx]
    bad = [P.variables[j] for j in dropped if P.lam[j]]
    if bad:
        raise ContractViolation(f"lambda depends on dropped variables {bad}")
    return ZeroDimParam(
        P.q,
        tuple(P.v[j] for j in idx),
        tuple(P.lam[j] for j in idx),
        tuple(P.variables[j] for j in idx),
    )


def transform_param(P: ZeroDimParam, A: RatMatrix) -> ZeroDimParam:
    """Parameterization of {A y : y in P}; lambda is rewritten as
    lambda(A^-1 x) so that it keeps taking the same values."""
    if A.rows != len(P.v) or A.cols != len(P.v):
        raise ValueError("matrix does not match the parameterization")
    Ainv = A.inverse()
    v = tuple(A.apply(list(P.v)))
    lam = tuple(
        sum((P.lam[k] * Ainv[k, j] for k in range(A.rows)), Fraction(0)) for j in range(A.cols)
    )
    return ZeroDimParam(P.q, v, lam, P.variables)
