"""Exact rational matrices and the small amount of linear algebra we need."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .mpoly import as_rat


class SingularMatrixError(ValueError):
    pass


class RatMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(as_rat(x) for x in row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.entries: Tuple[Tuple[Fraction, ...], ...] = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([self.column(j) for j in range(self.cols)])

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        return RatMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries])

    def apply(self, vec: Sequence) -> List:
        """Matrix-vector product; entries of ``vec`` may be any module elements."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.entries:
            acc = None
            for a, x in zip(r, vec):
                if a:
                    t = x * a
                    acc = t if acc is None else acc + t
            out.append(acc if acc is not None else vec[0] * 0)
        return out

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.entries]
        n = self.rows
        d = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return Fraction(0)
            if p != k:
                a[k], a[p] = a[p], a[k]
                d = -d
            d *= a[k][k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] * inv
                if f:
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return d

    def inverse(self) -> "RatMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        sol = solve_linear(self.entries, [[1 if i == j else 0 for j in range(n)] for i in range(n)])
        if sol is None:
            raise SingularMatrixError("matrix is singular")
        return RatMatrix(sol)

    def __repr__(self) -> str:
        return "RatMatrix(%s)" % [[str(x) for x in r] for r in self.entries]


def solve_linear(a: Sequence[Sequence], b: Sequence[Sequence]) -> Optional[List[List[Fraction]]]:
    """Solve A X = B for square invertible A; B has one row per equation.

    Returns X as a list of rows, or None when A is singular.
    """
    n = len(a)
    m = [list(map(as_rat, r)) + list(map(as_rat, br)) for r, br in zip(a, b)]
    w = len(m[0])
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k]), None)
        if p is None:
            return None
        m[k], m[p] = m[p], m[k]
        inv = 1 / m[k][k]
        rowk = [x * inv for x in m[k]]
        m[k] = rowk
        for i in range(n):
            if i != k:
                f = m[i][k]
                if f:
                    ri = m[i]
                    for j in range(k, w):
                        if rowk[j]:
                            ri[j] -= f * rowk[j]
    return [r[n:] for r in m]


class IncrementalEchelon:
    """Row-echelon basis grown one sparse vector at a time.

    ``add`` reduces a vector against the stored rows and returns the
    expression of the vector in terms of previously added vectors when it is
    dependent, or None after storing it when it is independent.
    """

    def __init__(self):
        self.rows = []  # (pivot, reduced vector dict, combination dict)
        self.count = 0

    def add(self, vec: dict) -> Optional[dict]:
        v = {k: x for k, x in vec.items() if x}
        comb = {self.count: Fraction(1)}
        for pivot, row, rcomb in self.rows:
            c = v.get(pivot)
            if c:
                for k, x in row.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
                for k, x in rcomb.items():
                    y = comb.get(k, 0) - c * x
                    if y:
                        comb[k] = y
                    else:
                        comb.pop(k, None)
        idx = self.count
        self.count += 1
        if not v:
            # comb . (added vectors) = 0 with comb[idx] = 1
            return {k: -x for k, x in comb.items() if k != idx}
        pivot = min(v)
        inv = 1 / v[pivot]
        v = {k: x * inv for k, x in v.items()}
        comb = {k: x * inv for k, x in comb.items()}
        self.rows.append((pivot, v, comb))
        return None
