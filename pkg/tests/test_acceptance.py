"""Acceptance gate: one check per criterion, each recorded as a PASS/FAIL
line in the terminal summary. Run alone with ``pytest tests/test_acceptance.py``."""

import random
import time
from fractions import Fraction as Q
from pathlib import Path

import pytest
import sympy

from polarpoints.cli import main
from polarpoints.driver import (
    RunConfig,
    audit_polys_on_param,
    degree_constants,
    run_main,
    sample_sizes,
)
from polarpoints.polycore import (
    MPoly,
    RatMatrix,
    change_of_vars,
    change_of_vars_matrix,
    jacobian,
    poly_matmul,
)
from polarpoints.sysbuild import InputSystem, minor_fiber_system
from polarpoints.sysio import parse_system_file
from polarpoints.zdsolve import groebner

from conftest import record

SYSTEMS = Path(__file__).resolve().parents[1] / "systems"
ROT = RatMatrix([[1, 1], [-1, 1]])
Tsym = sympy.Symbol("T")


def load(name: str) -> InputSystem:
    return parse_system_file((SYSTEMS / f"{name}.txt").read_text()).to_input_system()


# -- independent oracles (sympy) ------------------------------------------------


def S(x: Q):
    return sympy.Rational(x.numerator, x.denominator)


def sym_upoly(f):
    return sympy.Poly([S(c) for c in reversed(f.coeffs)] or [0], Tsym)


def sym_mpoly(f: MPoly, gens):
    return sum((S(c) * sympy.prod([g**e for g, e in zip(gens, m)]) for m, c in f.terms.items()), sympy.Integer(0))


def param_identities(P) -> bool:
    """q monic squarefree, deg v_j < deg q, lambda(v) = T q' mod q."""
    q = sym_upoly(P.q)
    if q.LC() != 1:
        return False
    if q.degree() == 0:
        return all(v.is_zero() for v in P.v)
    qp = q.diff(Tsym)
    if sympy.gcd(q, qp).degree() != 0:
        return False
    vs = [sym_upoly(v) for v in P.v]
    if any(not v.is_zero and v.degree() >= q.degree() for v in vs):
        return False
    lam_v = sum((S(c) * v for c, v in zip(P.lam, vs)), sympy.Poly(0, Tsym))
    return (lam_v - sympy.Poly(Tsym, Tsym) * qp).rem(q).is_zero


def vanishes_on(polys_sym, gens, P) -> bool:
    """Denominator-cleared substitution x_j = v_j / q' reduces to 0 mod q."""
    q = sym_upoly(P.q)
    if q.degree() <= 0:
        return True
    qp = q.diff(Tsym).as_expr()
    sub = {g: sym_upoly(v).as_expr() / qp for g, v in zip(gens, P.v)}
    for f in polys_sym:
        num, _ = sympy.fraction(sympy.together(sympy.expand(f).subs(sub)))
        if not sympy.Poly(num, Tsym).rem(q).is_zero:
            return False
    return True


def minor_fiber_sym(F: InputSystem, i, A: RatMatrix, sigma):
    """Slices, F^A and p-minors of jac(F^A, i), built without polarpoints."""
    ys = sympy.symbols(" ".join(F.ring))
    M = sympy.Matrix([[S(x) for x in row] for row in A.entries])
    x_of_y = M * sympy.Matrix(ys)
    FA = [sympy.expand(sym_mpoly(f, ys).subs(dict(zip(ys, x_of_y)), simultaneous=True)) for f in F.polys]
    J = sympy.Matrix([[sympy.diff(f, y) for y in ys[i:]] for f in FA])
    minors = []
    cols = J.shape[1]
    if cols >= F.p:
        from itertools import combinations

        for c in combinations(range(cols), F.p):
            minors.append(sympy.expand(J.extract(list(range(F.p)), list(c)).det()))
    slices = [ys[k] - S(sigma[k]) for k in range(i - 1)]
    return slices + FA + minors, ys


def sym_minpoly_on(polys, gens, lam, P_q_degree=None):
    """Monic squarefree generator of the elimination ideal of T - lambda(x)."""
    lam_expr = sum((S(c) * g for c, g in zip(lam, gens)), sympy.Integer(0))
    G = sympy.groebner(list(polys) + [Tsym - lam_expr], *gens, Tsym, order="lex")
    if list(G.exprs) == [1]:
        return sympy.Poly(1, Tsym)
    uni = [g for g in G.exprs if g.free_symbols <= {Tsym}]
    mu = sympy.Poly(uni[0], Tsym)
    return sympy.Poly(sympy.sqf_part(mu), Tsym).monic()


# -- criteria ------------------------------------------------------------------------


def test_c01_parameterization_identities():
    worst = 0.0
    ok = True
    for name in ("circle", "hyperbola", "sphere", "sphere_cylinder", "torus"):
        rep = run_main(load(name), RunConfig(seed=0))
        t0 = time.perf_counter()
        for lv in rep.levels:
            for P in (lv.full_param, lv.frame_param, lv.param):
                if P is not None:
                    ok &= param_identities(P)
        worst = max(worst, time.perf_counter() - t0)
    ok &= worst < 1
    record("1", ok, f"max check time {worst:.2f}s per fixture")
    assert ok


def test_c02_circle():
    F = load("circle")
    t0 = time.perf_counter()
    covered = 0
    ok = True
    for seed in range(50):
        rep = run_main(F, RunConfig(seed=seed))
        covered += bool(rep.points)
        for lv in rep.levels:
            ok &= lv.status in ("ok", "empty") and bool(lv.audits["membership"])
            ok &= lv.param.q.degree <= 2 ** (3 - lv.level)
        for pt in rep.points:
            ok &= all(abs(r) <= b for r, b in zip(pt.residuals, pt.residual_bounds))
    secs = time.perf_counter() - t0
    ok &= covered >= 48 and secs < 10
    record("2", ok, f"covered {covered}/50, {secs:.1f}s")
    assert ok


def test_c03_hyperbola():
    F = load("hyperbola")
    covered = 0
    silent = 0
    for seed in range(50):
        rep = run_main(F, RunConfig(seed=seed))
        signs = {pt.coordinates[0] > 0 for pt in rep.points}
        if signs == {True, False}:
            covered += 1
        elif not rep.failed:
            silent += 1
    # fixed frame control: exact match of the rotated-frame fixture
    control = True
    for seed in range(5):
        rep = run_main(F, RunConfig(seed=seed, A=ROT, raw_frame=True))
        s1 = rep.sigma[0]
        l1, l2 = rep.levels
        control &= l1.points == []
        P = l2.frame_param
        control &= P.lam == (0, 1) and sympy.Poly(sym_upoly(P.q)) == sympy.Poly(Tsym**2 - (1 + S(s1) ** 2), Tsym)
        control &= len(l2.points) == 2
        for pt in l2.points:
            x1, x2 = pt.enclosures
            control &= x1.lo == x1.hi == s1
            target = 1 + s1 * s1
            control &= (x2.lo**2 <= target <= x2.hi**2) if x2.lo > 0 else (x2.hi**2 <= target <= x2.lo**2)
        back = run_main(F, RunConfig(seed=seed, A=ROT)).levels[1].points
        control &= {pt.coordinates[0] > 0 for pt in back} == {True, False}
    ok = covered >= 48 and silent == 0 and control
    record("3", ok, f"covered {covered}/50, silent misses {silent}, fixed-frame control {control}")
    assert ok


def test_c04_sphere():
    F = load("sphere")
    t0 = time.perf_counter()
    rep = run_main(F, RunConfig(seed=0))
    secs = time.perf_counter() - t0
    ok = bool(rep.points) and not rep.failed
    ok &= all(lv.param.q.degree <= 16 for lv in rep.levels)
    ok &= all(lv.audits["membership"] for lv in rep.levels)
    ok &= secs < 60
    record("4", ok, f"{len(rep.points)} points, max deg {max(lv.param.q.degree for lv in rep.levels)}, {secs:.2f}s")
    assert ok


def test_c05_oracle_equivalence():
    ok = True
    checked = 0
    for name in ("circle", "hyperbola"):
        F = load(name)
        for seed in range(6):
            rep = run_main(F, RunConfig(seed=seed))
            for lv in rep.levels:
                P = lv.frame_param
                polys, ys = minor_fiber_sym(F, lv.level, rep.A, rep.sigma)
                mu = sym_minpoly_on(polys, ys, P.lam)
                ok &= mu == sym_upoly(P.q)
                ok &= lv.audits["projection"].detail["equality"] is True
                checked += 1
    record("5", ok, f"{checked} level solves compared")
    assert ok


def random_smooth(rng: random.Random, n: int):
    while True:
        deg = rng.choice((2, 3))
        ring = tuple(f"x{k + 1}" for k in range(n))
        terms = {}
        for m in _monomials(n, deg):
            if rng.random() < 0.5 or sum(m) == deg and not any(sum(t) == deg for t in terms):
                c = rng.randint(-3, 3)
                if c:
                    terms[m] = c
        f = MPoly(ring, terms)
        if f.total_degree() < 1:
            continue
        grad = [f.diff(j) for j in range(n)]
        if groebner([f] + grad).is_unit():  # smooth over C
            return f


def _monomials(n, deg):
    if n == 1:
        return [(e,) for e in range(deg + 1)]
    return [(e,) + rest for e in range(deg + 1) for rest in _monomials(n - 1, deg - e)]


def test_c06_inclusion():
    rng = random.Random(20240606)
    systems = [load(n) for n in ("circle", "hyperbola", "sphere", "sphere_cylinder")]
    systems += [InputSystem.from_polys([random_smooth(rng, 2 if k < 10 else 3)]) for k in range(20)]
    ok = True
    levels = 0
    for F in systems:
        rep = run_main(F, RunConfig(seed=1, audits=frozenset()))
        for lv in rep.levels:
            if lv.frame_param is None:
                ok = False
                continue
            polys, ys = minor_fiber_sym(F, lv.level, rep.A, rep.sigma)
            ok &= vanishes_on(polys, ys, lv.frame_param)
            ok &= bool(audit_polys_on_param(minor_fiber_system(F, lv.level, rep.A, rep.sigma), lv.frame_param))
            ok &= lv.audits["projection"].detail["inclusion"]
            levels += 1
    record("6", ok, f"{len(systems)} systems, {levels} levels")
    assert ok


def test_c07_regularity():
    ok = True
    runs = 0
    for name in ("circle", "hyperbola", "sphere", "sphere_cylinder"):
        F = load(name)
        for seed in range(10):
            rep = run_main(F, RunConfig(seed=seed))
            for lv in rep.levels:
                ok &= bool(lv.audits["regularity"])
            runs += 1
    record("7", ok, f"{runs} runs on fixtures smooth over C")
    assert ok


@pytest.mark.xfail(strict=True, reason="torus is singular at (0, 0, +-i sqrt 3): level 1 fiber is non-reduced")
def test_c07_regularity_torus():
    rep = run_main(load("torus"), RunConfig(seed=0))
    verdicts = [bool(lv.audits["regularity"]) for lv in rep.levels]
    ok = all(verdicts)
    record("7 (torus)", ok, f"per-level regularity {verdicts}; expected: the torus is singular over C")
    assert ok


def test_c08_sample_sizes():
    # oracle values computed before the build by direct big-integer evaluation
    a = sample_sizes(2, 2, Q(1, 2))
    b = sample_sizes(3, 2, Q(1, 2))
    ok = (a.S_size, a.T_size, a.R_size, a.k) == (335544320, 4096, 256, 4)
    ok &= b.S_size == 1159641169920 == 8 * 135 * 4**15
    ok &= a.S_size == 8 * 40 * 4**10 and a.T_size == 8 * 2 * 2**8 and a.R_size == 8 * 2 * 2**4
    record("8", ok, f"S={a.S_size} T={a.T_size} R={a.R_size} k={a.k}; S(3,2)={b.S_size}")
    assert ok


def test_c09_probability_bookkeeping():
    ok = True
    count = 0
    for n in range(1, 5):
        for d in range(2, 5):
            for eps in (Q(1, 2), Q(1, 3), Q(1, 10), Q(99, 100), Q(1, 1000)):
                s = sample_sizes(n, d, eps)
                for deg, size in zip(degree_constants(n, d), (s.S_size, s.T_size, s.R_size)):
                    ok &= Q(deg, size) <= eps / 4
                    ok &= Q(deg, size - 1) > eps / 4 or size == 1  # sizes are the least such integers
                ok &= 2**s.k >= 4 * n / eps and (s.k == 0 or 2 ** (s.k - 1) < 4 * n / eps)
                count += 1
    record("9", ok, f"{count} (n, d, eps) points")
    assert ok


def _rand_poly(rng, ring):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        m = tuple(rng.randint(0, 3) for _ in ring)
        terms[m] = Q(rng.randint(-9, 9), rng.randint(1, 4))
    return MPoly(ring, terms)


def _rand_invertible(rng, n):
    while True:
        A = RatMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if A.det() != 0:
            return A


def test_c10_kernel_properties():
    rng = random.Random(10)
    ring = ("x1", "x2", "x3")
    t0 = time.perf_counter()
    prod = cov = chain = 0
    for _ in range(1000):
        f, g = _rand_poly(rng, ring), _rand_poly(rng, ring)
        j = rng.randrange(3)
        prod += (f * g).diff(j) == f * g.diff(j) + g * f.diff(j)
    for _ in range(1000):
        f = _rand_poly(rng, ring)
        A = _rand_invertible(rng, 3)
        cov += change_of_vars(change_of_vars(f, A), A.inverse()) == f
    for _ in range(1000):
        F = [_rand_poly(rng, ring) for _ in range(rng.randint(1, 2))]
        A = _rand_invertible(rng, 3)
        lhs = jacobian([change_of_vars(f, A) for f in F])
        chain += lhs == poly_matmul(change_of_vars_matrix(jacobian(F), A), A)
    secs = time.perf_counter() - t0
    ok = prod == cov == chain == 1000 and secs < 30
    record("10", ok, f"product {prod}, round trip {cov}, chain {chain}; {secs:.1f}s")
    assert ok


def test_c11_determinism(tmp_path):
    ok = True
    for name in ("circle", "hyperbola", "sphere", "sphere_cylinder"):
        outs = []
        for k in range(2):
            p = tmp_path / f"{name}{k}.json"
            main(["-i", str(SYSTEMS / f"{name}.txt"), "--seed", "5", "-o", str(p)])
            outs.append(p.read_bytes())
        ok &= outs[0] == outs[1]
    record("11", ok, "byte-identical result files on 4 fixtures")
    assert ok


@pytest.mark.slow
def test_c12_torus():
    F = load("torus")
    t0 = time.perf_counter()
    ok = True
    nonempty = 0
    for seed in range(10):
        rep = run_main(F, RunConfig(seed=seed))
        nonempty += bool(rep.points)
        for lv in rep.levels:
            if lv.status == "fail":
                ok &= bool(lv.reason) and not lv.points
            else:
                ok &= lv.param.q.degree <= 4**4 and bool(lv.audits["membership"])
        for pt in rep.points:
            ok &= all(abs(r) <= b for r, b in zip(pt.residuals, pt.residual_bounds))
    secs = time.perf_counter() - t0
    ok &= nonempty == 10 and secs < 1800
    record("12", ok, f"nonempty {nonempty}/10, {secs:.1f}s")
    assert ok
