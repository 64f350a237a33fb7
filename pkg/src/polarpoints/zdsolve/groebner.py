"""Buchberger's algorithm over Q in graded reverse lexicographic order.

Pairs are pruned with the Gebauer-Moeller criteria and selected by the
normal strategy (smallest lcm degree, ties broken by generator indices).
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..polycore import MPoly, grevlex_key

log = logging.getLogger(__name__)

Mono = Tuple[int, ...]
Terms = Dict[Mono, Fraction]


class GroebnerLimitExceeded(RuntimeError):
    """Raised when the pair budget of a Groebner computation runs out."""


def _heap_key(m: Mono):
    # min-heap key whose minimum is the grevlex-largest monomial
    return (-sum(m), m[::-1])


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Mono, b: Mono) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Poly:
    """Working polynomial: terms sorted by decreasing grevlex order."""

    __slots__ = ("lm", "lc", "tail", "terms")

    def __init__(self, terms: Terms):
        items = sorted(terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
        self.lm, self.lc = items[0]
        self.tail = items[1:]
        self.terms = items

    def monic(self) -> "_Poly":
        if self.lc == 1:
            return self
        inv = 1 / self.lc
        return _Poly({m: c * inv for m, c in self.terms})


@dataclass
class ReductionStats:
    reductions: int = 0
    max_bits: int = 0


def _reduce(f: Terms, basis: Sequence[_Poly], stats: ReductionStats, tail_only: bool = False) -> Terms:
    """Full normal form of ``f`` modulo ``basis`` (all leading coefficients 1)."""
    f = dict(f)
    heap = [(_heap_key(m), m) for m in f]
    heapq.heapify(heap)
    rem: Terms = {}
    lms = [(g.lm, g) for g in basis]
    first = tail_only
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        if first:
            first = False
            rem[m] = c
            continue
        g = None
        for lm, cand in lms:
            if _divides(lm, m):
                g = cand
                break
        if g is None:
            rem[m] = c
            continue
        stats.reductions += 1
        shift = tuple(a - b for a, b in zip(m, g.lm))
        for gm, gc in g.tail:
            mm = tuple(a + b for a, b in zip(gm, shift))
            old = f.get(mm)
            if old is None:
                f[mm] = -c * gc
                heapq.heappush(heap, (_heap_key(mm), mm))
            else:
                new = old - c * gc
                if new:
                    f[mm] = new
                else:
                    del f[mm]
    return rem


def _bits(terms) -> int:
    return max(
        (max(c.numerator.bit_length(), c.denominator.bit_length()) for _, c in terms), default=0
    )


@dataclass(frozen=True)
class GroebnerBasis:
    order: str
    generators: Tuple[MPoly, ...]
    ring: Tuple[str, ...]

    def leading_monomials(self) -> List[Mono]:
        return [g.leading_monomial() for g in self.generators]

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def normal_form(self, f: MPoly) -> MPoly:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        if f.is_zero():
            return f
        basis = [_Poly(g.terms) for g in self.generators]
        return MPoly._raw(self.ring, _reduce(f.terms, basis, ReductionStats()))

    def contains(self, f: MPoly) -> bool:
        return self.normal_form(f).is_zero()


def groebner(system: Sequence[MPoly], max_pairs: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``system``."""
    if not system:
        raise ValueError("empty system")
    ring = system[0].ring
    if any(f.ring != ring for f in system):
        raise ValueError("all polynomials must share one ring")
    stats = ReductionStats()
    polys: List[_Poly] = []
    active: List[int] = []
    pairs: List[Tuple[int, int]] = []
    considered = 0

    def update(h: int):
        nonlocal active, pairs
        hl = polys[h].lm
        cand = [(g, _lcm(hl, polys[g].lm)) for g in active]
        keep = []
        for k, (g, l) in enumerate(cand):
            if _coprime(hl, polys[g].lm):
                keep.append((g, l, True))
                continue
            # drop (h, g) if another pair's lcm properly divides this one
            dominated = False
            for k2, (g2, l2) in enumerate(cand):
                if k2 == k:
                    continue
                if _divides(l2, l) and (l2 != l or k2 < k):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, l, False))
        new_pairs = [(g, h) for g, _, copr in keep if not copr]
        old = []
        for a, b in pairs:
            lab = _lcm(polys[a].lm, polys[b].lm)
            if (
                _divides(hl, lab)
                and _lcm(polys[a].lm, hl) != lab
                and _lcm(polys[b].lm, hl) != lab
            ):
                continue
            old.append((a, b))
        pairs = old + new_pairs
        active = [g for g in active if not _divides(hl, polys[g].lm)] + [h]

    def add(terms: Terms) -> bool:
        p = _Poly(terms).monic()
        polys.append(p)
        stats.max_bits = max(stats.max_bits, _bits(p.terms))
        update(len(polys) - 1)
        return not any(p.lm)

    def current():
        return [polys[g] for g in active]

    for f in system:
        if f.is_zero():
            continue
        r = _reduce(f.terms, current(), stats)
        if r and add(r):
            return _unit_basis(ring, stats, considered)

    def pair_key(pr):
        a, b = pr
        return (sum(_lcm(polys[a].lm, polys[b].lm)), a, b)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.remove(pr)
        considered += 1
        if max_pairs is not None and considered > max_pairs:
            raise GroebnerLimitExceeded(f"more than {max_pairs} S-pairs")
        a, b = pr
        pa, pb = polys[a], polys[b]
        l = _lcm(pa.lm, pb.lm)
        sa = tuple(x - y for x, y in zip(l, pa.lm))
        sb = tuple(x - y for x, y in zip(l, pb.lm))
        s: Terms = {}
        for m, c in pa.tail:
            s[tuple(x + y for x, y in zip(m, sa))] = c
        for m, c in pb.tail:
            mm = tuple(x + y for x, y in zip(m, sb))
            v = s.get(mm, 0) - c
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        if not s:
            continue
        r = _reduce(s, current(), stats)
        if r and add(r):
            return _unit_basis(ring, stats, considered)

    # interreduce tails and sort by leading monomial
    basis = current()
    reduced = []
    for k, g in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        reduced.append(_reduce(dict(g.terms), others, stats, tail_only=True))
    gens = [MPoly._raw(ring, t) for t in reduced]
    gens.sort(key=lambda g: grevlex_key(g.leading_monomial()))
    log.debug(
        "groebner: pairs=%d reductions=%d basis=%d max_coeff_bits=%d",
        considered, stats.reductions, len(gens), stats.max_bits,
    )
    return GroebnerBasis("grevlex", tuple(gens), ring)


def _unit_basis(ring, stats, considered) -> GroebnerBasis:
    log.debug("groebner: unit ideal after pairs=%d reductions=%d", considered, stats.reductions)
    return GroebnerBasis("grevlex", (MPoly.constant(ring, 1),), ring)
