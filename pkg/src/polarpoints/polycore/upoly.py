"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .mpoly import as_rat


class UPoly:
    """Immutable dense polynomial in T; ``coeffs[k]`` multiplies T**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs) -> "UPoly":
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def T(cls) -> "UPoly":
        return cls._raw((Fraction(0), Fraction(1)))

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "UPoly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-as_rat(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        c = self.coeffs[-1]
        if c == 1:
            return self
        return UPoly._raw(a / c for a in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly.const(other)

    def __add__(self, other) -> "UPoly":
        if not isinstance(other, (UPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other).coeffs
        a = self.coeffs
        if len(a) < len(o):
            a, o = o, a
        return UPoly._raw([x + (o[k] if k < len(o) else 0) for k, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly._raw(-c for c in self.coeffs)

    def __sub__(self, other) -> "UPoly":
        if not isinstance(other, (UPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return (-self) + other

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            c = as_rat(other)
            return UPoly._raw(c * a for a in self.coeffs)
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UPoly":
        result, base = UPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other: "UPoly") -> Tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        db = other.degree
        lb = other.coeffs[-1]
        if len(r) - 1 < db:
            return UPoly(), self
        q = [Fraction(0)] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c / lb
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
        return UPoly._raw(q), UPoly._raw(r[:db])

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def derivative(self) -> "UPoly":
        return UPoly._raw(k * c for k, c in enumerate(self.coeffs) if k) if self.coeffs else UPoly()

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element accepting * and +."""
        if not self.coeffs:
            return x * 0
        acc = x * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        v = self(as_rat(x))
        return (v > 0) - (v < 0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"UPoly({str(self)!r})"


def gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
        b = b.monic() if not b.is_zero() else b
    return a.monic()


def xgcd(a: UPoly, b: UPoly):
    """Return (g, s, t) with s*a + t*b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = UPoly.const(1), UPoly()
    t0, t1 = UPoly(), UPoly.const(1)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    c = r0.lc()
    if not c:
        return r0, s0, t0
    inv = 1 / c
    return r0 * inv, s0 * inv, t0 * inv


def inverse_mod(a: UPoly, m: UPoly) -> UPoly:
    g, s, _ = xgcd(a % m, m)
    if g.degree != 0:
        raise ZeroDivisionError("polynomial is not invertible modulo m")
    return s % m


def squarefree_part(f: UPoly) -> UPoly:
    """Monic squarefree part f / gcd(f, f')."""
    if f.degree <= 0:
        return f.monic()
    g = gcd(f, f.derivative())
    return (f // g).monic()


def is_squarefree(f: UPoly) -> bool:
    if f.is_zero():
        return False
    return gcd(f, f.derivative()).degree == 0
