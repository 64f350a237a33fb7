"""Jacobians, minors and linear changes of variables."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Sequence

from .matrix import RatMatrix
from .mpoly import MPoly, RingMismatchError

PolyMatrix = List[List[MPoly]]


def partial_derivative(f: MPoly, j: int) -> MPoly:
    return f.diff(j)


def _common_ring(F: Sequence[MPoly]):
    rings = {f.ring for f in F}
    if len(rings) > 1:
        raise RingMismatchError(f"polynomials live in different rings: {sorted(rings)}")
    return next(iter(rings))


def jacobian(F: Sequence[MPoly], nvars: int | None = None) -> PolyMatrix:
    """Matrix of partials d f_i / d X_j for the first ``nvars`` ring variables."""
    if not F:
        return []
    ring = _common_ring(F)
    n = len(ring) if nvars is None else nvars
    return [[f.diff(j) for j in range(n)] for f in F]


def truncated_jacobian(F: Sequence[MPoly], i: int, n: int | None = None) -> PolyMatrix:
    """Partials with respect to X_{i+1}..X_n only (1-based level ``i``).

    The result is p x (n - i). Levels run over 1..n-p+1.
    """
    if not F:
        raise ValueError("empty system")
    ring = _common_ring(F)
    n = len(ring) if n is None else n
    p = len(F)
    if not 1 <= i <= n - p + 1:
        raise ValueError(f"level {i} out of range 1..{n - p + 1}")
    return [[f.diff(j) for j in range(i, n)] for f in F]


def det_laplace(M: Sequence[Sequence], mul: Callable | None = None):
    """Determinant by cofactor expansion along the first row, memoized on
    column subsets. Works over any commutative ring (no division)."""
    mul = mul or (lambda a, b: a * b)
    k = len(M)
    if k == 0:
        raise ValueError("empty matrix")

    @lru_cache(maxsize=None)
    def sub(r: int, cols: tuple):
        if r == k - 1:
            return M[r][cols[0]]
        acc = None
        for pos, c in enumerate(cols):
            entry = M[r][c]
            if _is_zero(entry):
                continue
            term = mul(entry, sub(r + 1, cols[:pos] + cols[pos + 1:]))
            if pos % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc if acc is not None else M[r][cols[0]] * 0

    return sub(0, tuple(range(len(M[0]))))


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    if z is not None:
        return z()
    return x == 0


def p_minors(M: PolyMatrix, p: int | None = None) -> List[MPoly]:
    """All p x p minors (p = number of rows by default).

    Column subsets are enumerated in lexicographic order; fewer than p
    columns yields the empty list.
    """
    if not M:
        return []
    p = len(M) if p is None else p
    cols = len(M[0])
    if cols < p:
        return []
    out = []
    for rows in combinations(range(len(M)), p):
        for cs in combinations(range(cols), p):
            sub = [[M[r][c] for c in cs] for r in rows]
            out.append(det_laplace(sub))
    return out


def change_of_vars(f: MPoly, A: RatMatrix) -> MPoly:
    """Return f(A X): variable k is replaced by sum_j A[k, j] X_j.

    A acts on the leading ``A.rows`` variables of the ring; any further
    variables (Lagrange multipliers) are left untouched.
    """
    n = A.rows
    if A.cols != n:
        raise ValueError("change of variables needs a square matrix")
    if n > f.nvars:
        raise ValueError(f"matrix is {n}x{n} but ring has {f.nvars} variables")
    ring = f.ring
    nv = f.nvars
    if not f.terms:
        return MPoly.zero(ring)
    # work over the integers: A = B / D and f = g / den
    D = math.lcm(*(x.denominator for row in A.entries for x in row))
    den = math.lcm(*(c.denominator for c in f.terms.values()))
    unit = [tuple(int(j == k) for j in range(nv)) for k in range(nv)]
    images = []
    for k in range(nv):
        if k < n:
            images.append({unit[j]: int(A[k, j] * D) for j in range(n) if A[k, j]})
        else:
            images.append({unit[k]: D})  # rescaled below with the rest
    cache: Dict[tuple, Dict[tuple, int]] = {(0,) * nv: {(0,) * nv: 1}}

    def image(m):
        # grow from a cached neighbour: one product with a linear form
        if m not in cache:
            k = next(j for j, e in enumerate(m) if e)
            prev = image(m[:k] + (m[k] - 1,) + m[k + 1:])
            acc: Dict[tuple, int] = {}
            for m1, c1 in prev.items():
                for m2, c2 in images[k].items():
                    mm = tuple(a + b for a, b in zip(m1, m2))
                    acc[mm] = acc.get(mm, 0) + c1 * c2
            cache[m] = acc
        return cache[m]

    top = max(sum(m) for m in f.terms)
    out: Dict[tuple, int] = {}
    for m, c in f.terms.items():
        # every factor carries one D; pad lower degrees up to D^top
        scale = (c.numerator * (den // c.denominator)) * D ** (top - sum(m))
        for mm, cc in image(m).items():
            out[mm] = out.get(mm, 0) + scale * cc
    total = den * D**top
    return MPoly._raw(ring, {m: Fraction(c, total) for m, c in out.items() if c})


def change_of_vars_matrix(M: PolyMatrix, A: RatMatrix) -> PolyMatrix:
    return [[change_of_vars(e, A) for e in row] for row in M]


def poly_matmul(M: PolyMatrix, A: RatMatrix) -> PolyMatrix:
    """Polynomial matrix times rational matrix."""
    if M and len(M[0]) != A.rows:
        raise ValueError("dimension mismatch")
    out = []
    for row in M:
        ring = row[0].ring
        new = []
        for j in range(A.cols):
            acc = MPoly.zero(ring)
            for k, e in enumerate(row):
                a = A[k, j]
                if a and not e.is_zero():
                    acc = acc + e.scale(a)
            new.append(acc)
        out.append(new)
    return out
