"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]
Ring = Tuple[str, ...]


class RingMismatchError(ValueError):
    """Raised when two polynomials from different rings are combined."""


def as_rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def grevlex_key(m: Monomial):
    """Sort key such that larger keys are larger in graded reverse lex order."""
    return (sum(m), tuple(-e for e in reversed(m)))


class MPoly:
    """Immutable sparse polynomial: a map from exponent tuples to Fractions.

    ``ring`` is the ordered tuple of variable names; every monomial has one
    exponent slot per ring variable. Zero coefficients are never stored.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        ring = tuple(ring)
        clean: Dict[Monomial, Fraction] = {}
        nv = len(ring)
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != nv or any(e < 0 for e in m):
                raise ValueError(f"bad monomial {m} for ring {ring}")
            c = as_rat(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: Dict[Monomial, Fraction]) -> "MPoly":
        # trusted constructor: terms already normalized
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring: Sequence[str]) -> "MPoly":
        return cls._raw(tuple(ring), {})

    @classmethod
    def constant(cls, ring: Sequence[str], c) -> "MPoly":
        ring = tuple(ring)
        c = as_rat(c)
        return cls._raw(ring, {(0,) * len(ring): c} if c else {})

    @classmethod
    def var(cls, ring: Sequence[str], j: int) -> "MPoly":
        ring = tuple(ring)
        if not 0 <= j < len(ring):
            raise IndexError(f"variable index {j} out of range for {ring}")
        m = [0] * len(ring)
        m[j] = 1
        return cls._raw(ring, {tuple(m): Fraction(1)})

    @classmethod
    def linear(cls, ring: Sequence[str], coeffs: Sequence, const=0) -> "MPoly":
        """sum_j coeffs[j] * X_j + const, over the leading len(coeffs) variables."""
        ring = tuple(ring)
        terms: Dict[Monomial, Fraction] = {}
        nv = len(ring)
        for j, c in enumerate(coeffs):
            c = as_rat(c)
            if c:
                m = [0] * nv
                m[j] = 1
                terms[tuple(m)] = c
        const = as_rat(const)
        if const:
            terms[(0,) * nv] = const
        return cls._raw(ring, terms)

    # -- basic queries --------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.ring)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def total_degree(self) -> int:
        """Max exponent sum; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, j: int) -> int:
        return max((m[j] for m in self.terms), default=-1)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def variables_used(self) -> set:
        used = set()
        for m in self.terms:
            used.update(j for j, e in enumerate(m) if e)
        return used

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def sorted_terms(self):
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.constant(self.ring, other)

    def __add__(self, other) -> "MPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return MPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def scale(self, c) -> "MPoly":
        c = as_rat(c)
        if not c:
            return MPoly.zero(self.ring)
        return MPoly._raw(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return MPoly._raw(self.ring, {m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> "MPoly":
        return self.__mul__(other)

    def __pow__(self, e: int) -> "MPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.constant(self.ring, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c: Fraction) -> "MPoly":
        return MPoly._raw(
            self.ring,
            {tuple(a + b for a, b in zip(mm, m)): cc * c for mm, cc in self.terms.items()},
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(self.ring, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation -----------------------------------------

    def diff(self, j: int) -> "MPoly":
        """Formal partial derivative with respect to variable ``j``."""
        if not 0 <= j < self.nvars:
            raise IndexError(f"variable index {j} out of range")
        out = {}
        for m, c in self.terms.items():
            e = m[j]
            if e:
                mm = list(m)
                mm[j] = e - 1
                out[tuple(mm)] = c * e
        return MPoly._raw(self.ring, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        point = [as_rat(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= x**e
            total += t
        return total

    def eval_generic(self, point: Sequence, one, mul=None):
        """Evaluate at values from any commutative ring supporting + and *.

        ``one`` is that ring's unit; coefficients are multiplied on the left
        as ``one * c``. Powers are cached per variable.
        """
        mul = mul or (lambda a, b: a * b)
        cache: Dict[Tuple[int, int], object] = {}

        def power(j, e):
            key = (j, e)
            if key not in cache:
                cache[key] = point[j] if e == 1 else mul(power(j, e - 1), point[j])
            return cache[key]

        total = None
        for m, c in self.terms.items():
            t = one * c
            for j, e in enumerate(m):
                if e:
                    t = mul(t, power(j, e))
            total = t if total is None else total + t
        return total if total is not None else one * 0

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Replace variable j by ``images[j]`` (all images share one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring if images else self.ring
        return self.eval_generic(list(images), MPoly.constant(target, 1))

    def with_ring(self, ring: Sequence[str], positions: Sequence[int]) -> "MPoly":
        """Embed into a larger ring; variable j goes to slot positions[j]."""
        ring = tuple(ring)
        out = {}
        for m, c in self.terms.items():
            mm = [0] * len(ring)
            for j, e in enumerate(m):
                mm[positions[j]] = e
            out[tuple(mm)] = c
        return MPoly._raw(ring, out)

    def extend_ring(self, extra: Sequence[str]) -> "MPoly":
        """Append ``extra`` variables at the end of the ring."""
        k = len(extra)
        return MPoly._raw(
            self.ring + tuple(extra), {m + (0,) * k: c for m, c in self.terms.items()}
        )

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.ring, m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, ring={self.ring})"


@dataclass(frozen=True)
class Height:
    """Exact form of the polynomial height.

    ``denominator`` is the least common denominator v of the coefficients and
    ``max_abs`` the largest absolute coefficient of v*f. The height is
    ln(max(denominator, max_abs)).
    """

    denominator: int
    max_abs: int

    @property
    def bound(self) -> int:
        return max(self.denominator, self.max_abs)

    @property
    def log(self) -> float:
        return math.log(self.bound)


def height(f: MPoly) -> Height:
    if f.is_zero():
        return Height(1, 1)
    v = 1
    for c in f.terms.values():
        v = v * c.denominator // math.gcd(v, c.denominator)
    m = max(abs(c.numerator) * (v // c.denominator) for c in f.terms.values())
    return Height(v, m)


def vars_ring(names: Iterable[str]) -> Ring:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    return names
