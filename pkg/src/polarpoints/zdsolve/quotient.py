"""Finite-dimensional quotient algebras Q[X]/I from a reduced Groebner basis."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from ..polycore import IncrementalEchelon, MPoly, UPoly
from .groebner import GroebnerBasis, ReductionStats, _divides, _Poly, _reduce

INFINITE = math.inf

Vector = Dict[int, Fraction]


def _standard_monomials(lms, nvars: int, limit: int | None = None):
    """Monomials outside the leading-term ideal, or None when infinitely many."""
    for j in range(nvars):
        if not any(m[j] > 0 and sum(m) == m[j] for m in lms):
            return None
    zero = (0,) * nvars
    if any(_divides(m, zero) for m in lms):
        return []
    seen = {zero}
    frontier = [zero]
    out = [zero]
    while frontier:
        nxt = []
        for b in frontier:
            for j in range(nvars):
                m = b[:j] + (b[j] + 1,) + b[j + 1:]
                if m in seen:
                    continue
                seen.add(m)
                if any(_divides(l, m) for l in lms):
                    continue
                out.append(m)
                nxt.append(m)
                if limit is not None and len(out) > limit:
                    raise RuntimeError("quotient larger than limit")
        frontier = nxt
    return out


def quotient_dimension(gb: GroebnerBasis):
    """-1 for the unit ideal, INFINITE when positive-dimensional, else the
    number of standard monomials."""
    if gb.is_unit():
        return -1
    std = _standard_monomials(gb.leading_monomials(), len(gb.ring))
    return INFINITE if std is None else len(std)


def krull_dimension(gb: GroebnerBasis) -> int:
    """Size of a largest set of variables independent modulo the leading
    terms (-1 for the unit ideal)."""
    if gb.is_unit():
        return -1
    lms = gb.leading_monomials()
    n = len(gb.ring)
    supports = [frozenset(j for j, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


class QuotientAlgebra:
    """Q[X]/I with I zero-dimensional; elements are sparse coordinate vectors
    over the standard monomial basis."""

    def __init__(self, gb: GroebnerBasis):
        if gb.is_unit():
            raise ValueError("unit ideal has a zero quotient")
        std = _standard_monomials(gb.leading_monomials(), len(gb.ring))
        if std is None:
            raise ValueError("ideal is not zero-dimensional")
        self.gb = gb
        self.ring = gb.ring
        self.nvars = len(gb.ring)
        std.sort(key=lambda m: (sum(m), m[::-1]))
        self.basis = std
        self.index = {m: k for k, m in enumerate(std)}
        self._work = [_Poly(g.terms) for g in gb.generators]
        self._mult: Dict[int, List[Vector]] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def one(self) -> Vector:
        return {self.index[(0,) * self.nvars]: Fraction(1)}

    def vector(self, f: MPoly) -> Vector:
        nf = _reduce(f.terms, self._work, ReductionStats()) if f.terms else {}
        return {self.index[m]: c for m, c in nf.items()}

    def to_poly(self, v: Vector) -> MPoly:
        return MPoly._raw(self.ring, {self.basis[k]: c for k, c in v.items() if c})

    def mult_matrix(self, j: int) -> List[Vector]:
        """Column k is the image of basis element k under multiplication by X_j."""
        if j not in self._mult:
            cols = []
            for b in self.basis:
                m = b[:j] + (b[j] + 1,) + b[j + 1:]
                k = self.index.get(m)
                if k is not None:
                    cols.append({k: Fraction(1)})
                else:
                    cols.append(self.vector(MPoly._raw(self.ring, {m: Fraction(1)})))
            self._mult[j] = cols
        return self._mult[j]

    def mul_linear(self, coeffs: Sequence[Fraction], v: Vector) -> Vector:
        """(sum_j coeffs[j] X_j) * v."""
        out: Vector = {}
        for j, a in enumerate(coeffs):
            if not a:
                continue
            M = self.mult_matrix(j)
            for k, x in v.items():
                s = a * x
                for r, y in M[k].items():
                    t = out.get(r, 0) + s * y
                    if t:
                        out[r] = t
                    else:
                        out.pop(r, None)
        return out

    def krylov(self, coeffs: Sequence[Fraction]):
        """Minimal polynomial of the linear form, plus the echelon of its
        powers 1, l, l^2, ... (used to express other elements)."""
        ech = IncrementalEchelon()
        v = self.one()
        while True:
            dep = ech.add(v)
            if dep is not None:
                k = ech.count - 1
                cs = [-dep.get(t, 0) for t in range(k)] + [Fraction(1)]
                return UPoly(cs), ech
            v = self.mul_linear(coeffs, v)

    def minimal_polynomial(self, coeffs: Sequence[Fraction]) -> UPoly:
        return self.krylov(coeffs)[0]

    def dense_matrix(self, coeffs: Sequence[Fraction]) -> List[List[Fraction]]:
        """Multiplication by the linear form as a dense dim x dim matrix."""
        N = self.dim
        M = [[Fraction(0)] * N for _ in range(N)]
        for k in range(N):
            for r, y in self.mul_linear(coeffs, {k: Fraction(1)}).items():
                M[r][k] = y
        return M

    def characteristic_polynomial(self, coeffs: Sequence[Fraction]) -> UPoly:
        """Cross-check path for minimal_polynomial: det(T - M) through an
        exact Hessenberg reduction."""
        return hessenberg_charpoly(self.dense_matrix(coeffs))


def hessenberg_charpoly(M: List[List[Fraction]]) -> UPoly:
    H = [list(map(Fraction, row)) for row in M]
    N = len(H)
    # similarity transforms to upper Hessenberg form
    for c in range(N - 2):
        piv = next((r for r in range(c + 1, N) if H[r][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[piv], H[c + 1] = H[c + 1], H[piv]
            for row in H:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        for r in range(c + 2, N):
            f = H[r][c] / H[c + 1][c]
            if not f:
                continue
            for k in range(N):
                H[r][k] -= f * H[c + 1][k]
            for k in range(N):
                H[k][c + 1] += f * H[k][r]
    # p_m = (T - h_mm) p_{m-1} - sum_i h_im prod(h_{j,j-1}) p_{i-1}
    T = UPoly.T()
    polys = [UPoly.const(1)]
    for m in range(N):
        acc = (T - H[m][m]) * polys[m]
        prod = Fraction(1)
        for i in range(m - 1, -1, -1):
            prod *= H[i + 1][i]
            if not prod:
                break
            acc = acc - polys[i] * (prod * H[i][m])
        polys.append(acc)
    return polys[N]


def express(ech: IncrementalEchelon, vec: Vector) -> Optional[List[Fraction]]:
    """Coefficients c with vec = sum_t c_t * (t-th vector added to ``ech``),
    or None when vec is outside their span."""
    v = {k: x for k, x in vec.items() if x}
    comb: Dict[int, Fraction] = {}
    for pivot, row, rcomb in ech.rows:
        c = v.get(pivot)
        if not c:
            continue
        for k, x in row.items():
            y = v.get(k, 0) - c * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)
        for k, x in rcomb.items():
            comb[k] = comb.get(k, 0) + c * x
    if v:
        return None
    return [comb.get(t, Fraction(0)) for t in range(len(ech.rows))]
