"""Real points of a parameterization: Sturm isolation, bisection refinement
and exact interval evaluation of the coordinate functions v_j / q'."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .polycore import MPoly, RatMatrix, UPoly, as_rat, is_squarefree
from .zdsolve import ZeroDimParam, transform_param

DEFAULT_WIDTH = Fraction(1, 2**53)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = as_rat(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def __add__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        c = as_rat(other)
        return Interval(self.lo + c, self.hi + c)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-other if isinstance(other, Interval) else -as_rat(other))

    def __mul__(self, other) -> "Interval":
        if isinstance(other, Interval):
            ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
            return Interval(min(ps), max(ps))
        c = as_rat(other)
        return Interval(min(self.lo * c, self.hi * c), max(self.lo * c, self.hi * c))

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __pow__(self, e: int) -> "Interval":
        if e == 0:
            return Interval.point(1)
        a, b = self.lo**e, self.hi**e
        if e % 2:
            return Interval(a, b)
        if self.lo <= 0 <= self.hi:
            return Interval(Fraction(0), max(a, b))
        return Interval(min(a, b), max(a, b))


@dataclass(frozen=True)
class RealPoint:
    coordinates: Tuple[Fraction, ...]
    enclosures: Tuple[Interval, ...]
    level: Optional[int] = None
    root_index: int = 0
    root: Optional[Interval] = None
    residuals: Tuple[Fraction, ...] = ()
    residual_bounds: Tuple[Fraction, ...] = ()


def sturm_sequence(q: UPoly) -> List[UPoly]:
    seq = [q, q.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def sign_changes(seq: Sequence[UPoly], x: Fraction) -> int:
    signs = [s for s in (p.sign_at(x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(q: UPoly) -> Fraction:
    """Cauchy bound: every root has |t| < bound."""
    lc = q.lc()
    return 1 + max((abs(c / lc) for c in q.coeffs[:-1]), default=Fraction(0))


def sturm_isolate(q: UPoly) -> List[Interval]:
    """Disjoint isolating intervals of the real roots of squarefree ``q``,
    in increasing order. Rational roots hit during bisection come back as
    point intervals; other intervals have non-root endpoints."""
    if q.is_zero() or not is_squarefree(q):
        raise ValueError("sturm_isolate needs a non-zero squarefree polynomial")
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    B = root_bound(q)
    out: List[Interval] = []

    def V(x):
        return sign_changes(seq, x)

    def split_at_root(a, m, b, va, vm, vb):
        # m is a root; find non-root neighbours isolating it from the others
        h = (m - a) / 2
        while True:
            l = m - h
            if q(l) and V(l) - vm == 1:
                break
            h /= 2
        h = (b - m) / 2
        while True:
            r = m + h
            if q(r) and vm - V(r) == 0:
                break
            h /= 2
        return l, r

    def rec(a, b, va, vb):
        count = va - vb  # roots in (a, b]
        if count == 0:
            return
        if count == 1 and q(b):
            out.append(Interval(a, b))
            return
        m = (a + b) / 2
        vm = V(m)
        if q(m) == 0:
            l, r = split_at_root(a, m, b, va, vm, vb)
            rec(a, l, va, V(l))
            out.append(Interval(m, m))
            rec(r, b, V(r), vb)
            return
        rec(a, m, va, vm)
        rec(m, b, vm, vb)

    rec(-B, B, V(-B), V(B))
    out.sort(key=lambda iv: iv.lo)
    # neighbours may share a (non-root) endpoint; shrink until disjoint
    for k in range(len(out) - 1):
        while out[k].hi >= out[k + 1].lo:
            out[k] = refine(q, out[k], out[k].width / 2)
            out[k + 1] = refine(q, out[k + 1], out[k + 1].width / 2)
    return out


def refine(q: UPoly, iv: Interval, width) -> Interval:
    """Bisect ``iv`` until its width is at most ``width``."""
    width = as_rat(width)
    if iv.lo == iv.hi:
        return iv
    lo, hi = iv.lo, iv.hi
    slo = q.sign_at(lo)
    if slo == 0:
        return Interval.point(lo)
    shi = q.sign_at(hi)
    if shi == 0:
        return Interval.point(hi)
    if slo == shi:
        raise ValueError("interval does not isolate a simple root")
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = q.sign_at(m)
        if sm == 0:
            return Interval.point(m)
        if sm == slo:
            lo = m
        else:
            hi = m
    return Interval(lo, hi)


def eval_interval(f: UPoly, iv: Interval) -> Interval:
    if iv.lo == iv.hi:
        return Interval.point(f(iv.lo))
    if f.is_zero():
        return Interval.point(0)
    acc = Interval.point(f.coeffs[-1])
    for c in reversed(f.coeffs[:-1]):
        acc = acc * iv + c
    return acc


def eval_mpoly_box(f: MPoly, box: Sequence[Interval]) -> Interval:
    total = Interval.point(0)
    for m, c in f.terms.items():
        t = Interval.point(c)
        for x, e in zip(box, m):
            if e:
                t = t * (x**e)
        total = total + t
    return total


def _target_width(iv: Interval, width: Fraction) -> Fraction:
    return width * max(Fraction(1), iv.magnitude())


def extract_points(P: ZeroDimParam, width=DEFAULT_WIDTH, level: Optional[int] = None) -> List[RealPoint]:
    """One RealPoint per real root of q, coordinates v_j(m)/q'(m) at the
    midpoint m of a refined isolating interval."""
    width = as_rat(width)
    if P.q.degree <= 0:
        return []
    qp = P.qprime
    # v_j = c q' means the coordinate is the constant c on every root
    consts = {}
    for j, vj in enumerate(P.v):
        c = vj.coeffs[-1] / qp.coeffs[-1] if vj.degree == qp.degree else Fraction(0)
        if vj.is_zero() or (vj.degree == qp.degree and vj == qp * c):
            consts[j] = c
    points = []
    for k, iv0 in enumerate(sturm_isolate(P.q)):
        w = _target_width(iv0, width)
        iv = refine(P.q, iv0, w)
        den = eval_interval(qp, iv)
        while den.contains_zero():
            w /= 2
            iv = refine(P.q, iv, w)
            den = eval_interval(qp, iv)
        m = iv.mid
        qm = qp(m)
        coords = tuple(vj(m) / qm for vj in P.v)
        encl = tuple(
            Interval.point(consts[j]) if j in consts else eval_interval(vj, iv) / den
            for j, vj in enumerate(P.v)
        )
        points.append(RealPoint(coords, encl, level, k, iv))
    return points


def with_residuals(points: Sequence[RealPoint], system: Sequence[MPoly]) -> List[RealPoint]:
    """Attach exact residuals at the approximations and rigorous bounds on
    |f| over the enclosure boxes."""
    out = []
    for pt in points:
        res = tuple(f.evaluate(pt.coordinates) for f in system)
        bounds = tuple(eval_mpoly_box(f, pt.enclosures).magnitude() for f in system)
        out.append(replace(pt, residuals=res, residual_bounds=bounds))
    return out


def map_back(obj, A: RatMatrix):
    """Send new-frame data y to x = A y (points or a parameterization)."""
    if A.det() == 0:
        raise ValueError("map_back needs an invertible matrix")
    if isinstance(obj, ZeroDimParam):
        return transform_param(obj, A)
    out = []
    for pt in obj:
        coords = tuple(A.apply(list(pt.coordinates)))
        encl = tuple(A.apply(list(pt.enclosures)))
        out.append(replace(pt, coordinates=coords, enclosures=encl, residuals=(), residual_bounds=()))
    return out
