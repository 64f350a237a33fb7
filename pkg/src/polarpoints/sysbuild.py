"""Polar-variety systems: minor systems, Lagrange systems and sliced fibers.

Joint rings always order the variables X_1..X_n, L_1..L_p so that dropping
the Lagrange multipliers is a prefix projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

from .polycore import (
    MPoly,
    RatMatrix,
    SingularMatrixError,
    as_rat,
    change_of_vars,
    height,
    p_minors,
    truncated_jacobian,
)


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class InputSystem:
    polys: Tuple[MPoly, ...]
    n: int
    p: int
    d: int
    b: int  # exact height bound: ln(b) is the maximal polynomial height

    @property
    def delta(self) -> int:
        return self.n - self.p

    @property
    def ring(self) -> Tuple[str, ...]:
        return self.polys[0].ring

    @property
    def height_log(self) -> float:
        import math

        return math.log(self.b)

    @classmethod
    def from_polys(cls, polys: Sequence[MPoly]) -> "InputSystem":
        polys = tuple(polys)
        if not polys:
            raise ValueError("empty system")
        ring = polys[0].ring
        if any(f.ring != ring for f in polys):
            raise ValueError("all polynomials must share one ring")
        n, p = len(ring), len(polys)
        if not 1 <= p <= n:
            raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
        if not all(f.has_integer_coefficients() for f in polys):
            raise ValueError("input polynomials must have integer coefficients")
        if any(f.is_zero() for f in polys):
            raise ValueError("zero polynomial in input")
        d = max(f.total_degree() for f in polys)
        b = max(height(f).bound for f in polys)
        return cls(polys, n, p, d, b)


@dataclass(frozen=True)
class MinorSystem:
    level: int
    polys: Tuple[MPoly, ...]
    ring: Tuple[str, ...]


@dataclass(frozen=True)
class LagrangeFiberSystem:
    level: int
    A: RatMatrix
    sigma: Tuple[Fraction, ...]
    u: Tuple[Fraction, ...]
    polys: Tuple[MPoly, ...]
    ring: Tuple[str, ...]
    n: int
    p: int
    transformed: Tuple[MPoly, ...] = field(repr=False, default=())  # F^A in ring X


def _check_level(F: InputSystem, i: int):
    if not 1 <= i <= F.delta + 1:
        raise LevelError(f"level {i} out of range 1..{F.delta + 1}")


def multiplier_names(ring: Sequence[str], p: int) -> Tuple[str, ...]:
    taken = set(ring)
    names = []
    for k in range(1, p + 1):
        name = f"L{k}"
        while name in taken:
            name = "_" + name
        names.append(name)
    return tuple(names)


def minor_polys(polys: Sequence[MPoly], i: int) -> List[MPoly]:
    """p-minors of the Jacobian with respect to X_{i+1}..X_n."""
    n = polys[0].nvars
    return p_minors(truncated_jacobian(polys, i, n))


def build_minor_system(F: InputSystem, i: int) -> MinorSystem:
    _check_level(F, i)
    minors = minor_polys(F.polys, i)
    assert len(minors) == comb(F.n - i, F.p)
    return MinorSystem(i, tuple(F.polys) + tuple(minors), F.ring)


def lagrange_rows(polys: Sequence[MPoly], i: int, n: int, lnames: Sequence[str]) -> List[MPoly]:
    """Entries of [L_1 .. L_p] * jac(F, i), in the ring X + L."""
    J = truncated_jacobian(polys, i, n)
    p = len(polys)
    ext = [[e.extend_ring(lnames) for e in row] for row in J]
    ring = ext[0][0].ring if ext and ext[0] else polys[0].ring + tuple(lnames)
    Ls = [MPoly.var(ring, n + k) for k in range(p)]
    rows = []
    for j in range(n - i):
        acc = MPoly.zero(ring)
        for k in range(p):
            acc = acc + Ls[k] * ext[k][j]
        rows.append(acc)
    return rows


def normalization(ring: Sequence[str], n: int, u: Sequence[Fraction]) -> MPoly:
    return MPoly.linear(ring, [0] * n + list(u), -1)


def _check_u(u, p) -> Tuple[Fraction, ...]:
    u = tuple(as_rat(x) for x in u)
    if len(u) != p:
        raise ValueError(f"u must have {p} entries")
    if not any(u):
        raise ValueError("u must be a non-zero vector")
    return u


def build_lagrange_system(F: InputSystem, i: int, u: Sequence) -> List[MPoly]:
    """(F, [L] * jac(F, i), u.L - 1): p + n - i + 1 polynomials in X, L."""
    _check_level(F, i)
    u = _check_u(u, F.p)
    lnames = multiplier_names(F.ring, F.p)
    ring = F.ring + lnames
    lifted = [f.extend_ring(lnames) for f in F.polys]
    return lifted + lagrange_rows(F.polys, i, F.n, lnames) + [normalization(ring, F.n, u)]


def build_fiber_system(
    F: InputSystem, i: int, A: RatMatrix, sigma: Sequence, u: Sequence
) -> LagrangeFiberSystem:
    """Slices X_k - sigma_k (k < i), F^A, [L] * jac(F^A, i), u.L - 1.

    F^A is expanded before differentiation.
    """
    _check_level(F, i)
    u = _check_u(u, F.p)
    if A.rows != F.n or A.cols != F.n:
        raise ValueError(f"A must be {F.n}x{F.n}")
    if A.det() == 0:
        raise SingularMatrixError("change of variables matrix is singular")
    sigma = tuple(as_rat(s) for s in sigma)
    if len(sigma) < i - 1:
        raise ValueError(f"level {i} needs {i - 1} slice values, got {len(sigma)}")
    FA = tuple(change_of_vars(f, A) for f in F.polys)
    lnames = multiplier_names(F.ring, F.p)
    ring = F.ring + lnames
    slices = [MPoly.linear(ring, [0] * k + [1], -sigma[k]) for k in range(i - 1)]
    lifted = [f.extend_ring(lnames) for f in FA]
    polys = slices + lifted + lagrange_rows(FA, i, F.n, lnames) + [normalization(ring, F.n, u)]
    return LagrangeFiberSystem(i, A, sigma, u, tuple(polys), ring, F.n, F.p, FA)


def minor_fiber_system(F: InputSystem, i: int, A: RatMatrix, sigma: Sequence) -> List[MPoly]:
    """Slices, F^A and the p-minors of jac(F^A, i), in the ring X."""
    _check_level(F, i)
    FA = [change_of_vars(f, A) for f in F.polys]
    sigma = [as_rat(s) for s in sigma]
    slices = [MPoly.linear(F.ring, [0] * k + [1], -sigma[k]) for k in range(i - 1)]
    return slices + FA + minor_polys(FA, i)


def general_lagrange_system(
    b_polys: Sequence[MPoly], M: Sequence[Sequence[MPoly]], u: Sequence
) -> Tuple[List[MPoly], Tuple[str, ...]]:
    """(b, [L] * M, u.L - 1) for an arbitrary q x r polynomial matrix M.

    Test utility for the projection statements on general determinantal
    varieties. Returns the polynomials and the joint ring.
    """
    q = len(M)
    base = M[0][0].ring
    lnames = multiplier_names(base, q)
    ring = base + lnames
    n = len(base)
    u = _check_u(u, q)
    Ls = [MPoly.var(ring, n + k) for k in range(q)]
    rows = []
    for j in range(len(M[0])):
        acc = MPoly.zero(ring)
        for k in range(q):
            acc = acc + Ls[k] * M[k][j].extend_ring(lnames)
        rows.append(acc)
    polys = [b.extend_ring(lnames) for b in b_polys] + rows + [normalization(ring, n, u)]
    return polys, ring
