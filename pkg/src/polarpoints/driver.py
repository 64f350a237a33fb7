"""Main loop: random parameters, one Lagrange fiber per level, exact
solving, projection to X-space, audits and the assembled report."""

from __future__ import annotations

import logging
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .polycore import (
    MPoly,
    RatMatrix,
    UPoly,
    as_rat,
    change_of_vars,
    det_laplace,
    gcd,
    height,
    inverse_mod,
    jacobian,
)
from .realize import DEFAULT_WIDTH, RealPoint, extract_points, map_back, with_residuals
from .sysbuild import (
    InputSystem,
    LagrangeFiberSystem,
    build_fiber_system,
    minor_fiber_system,
    minor_polys,
)
from .zdsolve import (
    GroebnerLimitExceeded,
    SolveStatus,
    Verdict,
    ZeroDimParam,
    cleared_eval,
    groebner,
    krull_dimension,
    minimal_polynomial_on,
    project_param,
    quotient_dimension,
    solve_zero_dim,
    verify_param,
)
from .zdsolve.param import _ModRing

log = logging.getLogger(__name__)

PRACTICAL_RANGE = 997
OPTIONAL_AUDITS = frozenset({"regularity", "projection_equality", "h1", "noether_fiber"})


class BoundViolation(AssertionError):
    """An output degree exceeded its theoretical bound (a solver bug)."""


@dataclass(frozen=True)
class RunConfig:
    epsilon: Fraction = Fraction(1, 2)
    mode: str = "practical"
    seed: int = 0
    retry_budget: int = 8
    width: Fraction = DEFAULT_WIDTH
    audits: frozenset = OPTIONAL_AUDITS
    raw_frame: bool = False
    workers: int = 1
    A: Optional[RatMatrix] = None  # forces the change of variables
    sigma: Optional[Tuple[Fraction, ...]] = None
    u: Optional[Tuple[Fraction, ...]] = None
    h1_pair_cap: int = 5000

    def __post_init__(self):
        eps = as_rat(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not 0 < eps < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.mode not in ("practical", "certified"):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "width", as_rat(self.width))
        if self.width <= 0:
            raise ValueError("width must be positive")
        unknown = set(self.audits) - OPTIONAL_AUDITS
        if unknown:
            raise ValueError(f"unknown audits {sorted(unknown)}")


@dataclass(frozen=True)
class SampleSets:
    S_size: int
    T_size: int
    R_size: int
    k: int


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def repetitions(n: int, epsilon) -> int:
    """Smallest integer k with 2**k >= 4n/epsilon."""
    target = Fraction(4 * n) / as_rat(epsilon)
    k = 0
    while 2**k < target:
        k += 1
    return k


def degree_constants(n: int, d: int) -> Tuple[int, int, int]:
    """Degree bounds of the three bad-parameter hypersurfaces (A, sigma, u)."""
    return 5 * n**3 * (2 * d) ** (5 * n), n * d ** (4 * n), n * d ** (2 * n)


def sample_sizes(n: int, d: int, epsilon, strict: bool = True) -> SampleSets:
    eps = as_rat(epsilon)
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if d < 2:
        if strict:
            raise ValueError("certified sample sizes need d >= 2")
        log.warning("degree bound d=%d < 2; sample sizes computed anyway", d)
    a, t, r = degree_constants(n, d)
    scale = 4 / eps
    return SampleSets(_ceil(scale * a), _ceil(scale * t), _ceil(scale * r), repetitions(n, eps))


def practical_sizes(n: int, epsilon) -> SampleSets:
    k = repetitions(n, epsilon)
    return SampleSets(PRACTICAL_RANGE, PRACTICAL_RANGE, PRACTICAL_RANGE, k)


def _stream(seed: int, label: str) -> random.Random:
    # string seeds are hashed with SHA-512, stable across runs and platforms
    return random.Random(f"polarpoints:{seed}:{label}")


def draw_parameters(sets: SampleSets, seed: int, n: int, p: int, max_tries: int = 64):
    """A in S^(n x n) (re-drawn until invertible), sigma in T^(n-p), u in R^p."""
    rng = _stream(seed, "A")
    for _ in range(max_tries):
        A = RatMatrix([[rng.randint(1, sets.S_size) for _ in range(n)] for _ in range(n)])
        if A.det() != 0:
            break
    else:
        raise RuntimeError("could not draw an invertible change of variables")
    rs = _stream(seed, "sigma")
    sigma = tuple(Fraction(rs.randint(1, sets.T_size)) for _ in range(n - p))
    ru = _stream(seed, "u")
    u = tuple(Fraction(ru.randint(1, sets.R_size)) for _ in range(p))
    return A, sigma, u


# -- audits ------------------------------------------------------------------


def audit_polys_on_param(polys: Sequence[MPoly], P: ZeroDimParam) -> Verdict:
    """Every polynomial vanishes on every point of P (denominator-cleared)."""
    if P.q.degree <= 0:
        return Verdict(True)
    cache = _ModRing(P.q, P.v, P.qprime)
    for k, f in enumerate(polys):
        if not cleared_eval(f, P, cache).is_zero():
            return Verdict(False, f"poly:{k}", {"poly": str(f)})
    return Verdict(True)


def compare_with_system(polys: Sequence[MPoly], P: ZeroDimParam) -> Verdict:
    """V(polys) equals the point set of P, via the squarefree minimal
    polynomial of P's lambda on V(polys)."""
    res = minimal_polynomial_on(polys, P.lam)
    if res is None:
        return Verdict(False, "positive_dimensional")
    mu, count = res
    if count != P.q.degree:
        return Verdict(False, "cardinality", {"system": count, "param": P.q.degree})
    if mu.monic() != P.q:
        return Verdict(False, "q_mismatch", {"system": str(mu), "param": str(P.q)})
    return Verdict(True)


def audit_projection(
    F: InputSystem,
    i: int,
    A: RatMatrix,
    sigma: Sequence,
    u: Sequence,
    P: ZeroDimParam,
    equality: bool = True,
) -> Verdict:
    """(a) X-projection of P cancels the slices, F^A and all p-minors of
    jac(F^A, i); (b) optionally, it equals the solution set of that minor
    system. ``u`` is recorded for the report only."""
    if P.variables != F.ring:
        P = project_param(P, list(F.ring))
    polys = minor_fiber_system(F, i, A, sigma)
    inc = audit_polys_on_param(polys, P)
    detail = {"inclusion": inc.ok, "equality": None}
    if not inc:
        return Verdict(False, "inclusion:" + inc.certificate, detail)
    if equality:
        eq = compare_with_system(polys, P)
        detail["equality"] = eq.ok
        if not eq:
            return Verdict(False, "equality:" + eq.certificate, {**detail, **(eq.detail or {})})
    return Verdict(True, None, detail)


def check_H1(F: InputSystem, i: int, A: RatMatrix, pair_cap: int = 5000) -> Verdict:
    """The polar variety of F^A at level i is empty or of dimension i - 1
    (dimension only, not equidimensionality). Certificate "unknown" when
    the pair cap is hit."""
    if not 1 <= i <= F.delta + 1:
        raise ValueError(f"level {i} out of range")
    FA = [change_of_vars(f, A) for f in F.polys] if A is not None else list(F.polys)
    try:
        gb = groebner(FA + minor_polys(FA, i), max_pairs=pair_cap)
    except GroebnerLimitExceeded:
        return Verdict(False, "unknown")
    dim = krull_dimension(gb)
    return Verdict(dim in (-1, i - 1), None if dim in (-1, i - 1) else "dimension", {"dimension": dim})


def check_noether_fiber(F: InputSystem, i: int, A: RatMatrix, sigma: Sequence) -> Verdict:
    """Finiteness of the fiber over the drawn sigma, the checkable
    consequence of Noether position: the sliced polar variety is finite."""
    gb = groebner(minor_fiber_system(F, i, A, sigma))
    qd = quotient_dimension(gb)
    ok = qd != math.inf
    return Verdict(ok, None if ok else "positive_dimensional", {"quotient_dimension": qd if ok else "inf"})


def check_regularity_at_solutions(system: Sequence[MPoly], P: ZeroDimParam) -> Verdict:
    """Jacobian determinant of a square system is a unit modulo q, so the
    Jacobian has full rank at every solution."""
    if P.q.degree <= 0:
        return Verdict(True)
    if len(system) != len(P.variables):
        return Verdict(False, "not_square")
    q = P.q
    if q.degree == 1:
        # the single point is rational; plain determinant
        tau = -q.coeffs[0]
        den = P.qprime(tau)
        pt = [vj(tau) / den for vj in P.v]
        J = jacobian(system)
        M = [[e.evaluate(pt) for e in row] for row in J]
        det = det_laplace(M)
        return Verdict(det != 0, None if det else "singular", {"det": str(det)})
    inv = inverse_mod(P.qprime, q)
    coords = [(vj * inv) % q for vj in P.v]
    J = jacobian(system)

    def mulmod(a, b):
        return (a * b) % q

    M = [[e.eval_generic(coords, UPoly.const(1), mulmod) % q for e in row] for row in J]
    det = det_laplace(M, mulmod) % q
    g = gcd(det, q)
    ok = g.degree == 0 and not det.is_zero()
    return Verdict(ok, None if ok else "singular", {"gcd_degree": g.degree if not det.is_zero() else q.degree})


def upoly_height(f: UPoly) -> int:
    R = ("T",)
    return height(MPoly(R, {(k,): c for k, c in enumerate(f.coeffs)})).bound


def check_output_bounds(report: "RunReport", F: InputSystem) -> Verdict:
    """deg q <= d^(n+p) overall and d^(n+p-i) per level; heights logged."""
    d, n, p = F.d, F.n, F.p
    detail = {"global_bound": d ** (n + p), "levels": []}
    ok = True
    cert = None
    eps = report.config.epsilon
    shape = d ** (n + p + 1) * (math.log(F.b) + math.log(1 / float(eps)))
    for lv in report.levels:
        if lv.param is None:
            continue
        deg = lv.param.q.degree
        tight = d ** (n + p - lv.level)
        hts = [upoly_height(lv.param.q)] + [upoly_height(v) for v in lv.param.v]
        hlog = math.log(max(hts))
        detail["levels"].append(
            {"level": lv.level, "degree": deg, "bound": tight, "height": hlog, "height_shape": shape}
        )
        log.info("level %d: deg q=%d (bound %d), height %.2f (shape %.2f)", lv.level, deg, tight, hlog, shape)
        if deg > d ** (n + p) or deg > tight:
            ok = False
            cert = cert or f"level:{lv.level}"
    return Verdict(ok, cert, detail)


# -- the main loop -------------------------------------------------------------


@dataclass
class LevelResult:
    level: int
    status: str  # "ok", "empty" or "fail"
    reason: Optional[str] = None
    full_param: Optional[ZeroDimParam] = None  # X and L, new frame
    frame_param: Optional[ZeroDimParam] = None  # X only, new frame
    param: Optional[ZeroDimParam] = None  # X only, output frame
    points: List[RealPoint] = field(default_factory=list)
    audits: Dict[str, Verdict] = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    seconds: float = 0.0


@dataclass
class RunReport:
    config: RunConfig
    system: InputSystem
    sizes: SampleSets
    A: RatMatrix
    sigma: Tuple[Fraction, ...]
    u: Tuple[Fraction, ...]
    levels: List[LevelResult]
    audits: Dict[str, Verdict] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return any(lv.status == "fail" for lv in self.levels)

    @property
    def points(self) -> List[RealPoint]:
        return [pt for lv in self.levels for pt in lv.points]


def solve_level(F: InputSystem, i: int, A, sigma, u, cfg: RunConfig, budget: int) -> LevelResult:
    t0 = time.perf_counter()
    fs: LagrangeFiberSystem = build_fiber_system(F, i, A, sigma, u)
    out = solve_zero_dim(list(fs.polys), lambda_vars=list(range(F.n)), budget=budget, seed=cfg.seed * 131 + i)
    res = LevelResult(i, "fail", diagnostics=dict(out.diagnostics))
    if out.status == SolveStatus.NOT_ZERO_DIMENSIONAL:
        res.reason = "fiber system is not zero-dimensional"
    elif out.status == SolveStatus.SEPARATION_FAILURE:
        res.reason = f"no separating form over X among {budget} candidates"
    else:
        P = out.param
        check = verify_param(P, fs.polys)
        if not check:
            res.reason = f"verification failed ({check.certificate})"
        else:
            res.full_param = P
            res.frame_param = project_param(P, list(F.ring))
            inc = audit_projection(
                F, i, A, sigma, u, res.frame_param, equality="projection_equality" in cfg.audits
            )
            res.audits["projection"] = inc
            if not inc.detail["inclusion"]:
                res.reason = "projection inclusion audit failed"
            else:
                res.status = "empty" if out.status == SolveStatus.INCONSISTENT else "ok"
                if "regularity" in cfg.audits:
                    res.audits["regularity"] = check_regularity_at_solutions(fs.polys, P)
                if "h1" in cfg.audits:
                    res.audits["h1"] = check_H1(F, i, A, cfg.h1_pair_cap)
                if "noether_fiber" in cfg.audits:
                    res.audits["noether_fiber"] = check_noether_fiber(F, i, A, sigma)
                _realize(res, F, A, cfg)
    res.seconds = time.perf_counter() - t0
    return res


def _realize(res: LevelResult, F: InputSystem, A: RatMatrix, cfg: RunConfig):
    P = res.frame_param
    pts = extract_points(P, cfg.width, level=res.level)
    if cfg.raw_frame:
        res.param = P
        system = [change_of_vars(f, A) for f in F.polys]
    else:
        res.param = map_back(P, A)
        pts = map_back(pts, A)
        system = list(F.polys)
    member = verify_param(res.param, system)
    res.audits["membership"] = member
    if not member:
        res.status = "fail"
        res.reason = f"output-frame membership failed ({member.certificate})"
        return
    res.points = with_residuals(pts, system)


def _workers(cfg: RunConfig) -> int:
    env = os.environ.get("THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, cfg.workers)


def run_main(F: InputSystem, cfg: RunConfig = RunConfig()) -> RunReport:
    """All levels i = 1..n-p+1. Per-level failures are recorded, never
    replaced by guessed points."""
    t0 = time.perf_counter()
    if cfg.mode == "certified":
        sizes = sample_sizes(F.n, F.d, cfg.epsilon, strict=True)
    else:
        sizes = practical_sizes(F.n, cfg.epsilon)
    A, sigma, u = draw_parameters(sizes, cfg.seed, F.n, F.p)
    if cfg.A is not None:
        A = cfg.A
    if cfg.sigma is not None:
        sigma = tuple(as_rat(s) for s in cfg.sigma)
    if cfg.u is not None:
        u = tuple(as_rat(x) for x in cfg.u)
    budget = max(cfg.retry_budget, sizes.k)
    levels = list(range(1, F.delta + 2))
    nw = _workers(cfg)
    if nw > 1 and len(levels) > 1:
        with ProcessPoolExecutor(max_workers=nw) as ex:
            futs = [ex.submit(solve_level, F, i, A, sigma, u, cfg, budget) for i in levels]
            results = [f.result() for f in futs]
    else:
        results = [solve_level(F, i, A, sigma, u, cfg, budget) for i in levels]
    report = RunReport(cfg, F, sizes, A, sigma, u, results)
    bounds = check_output_bounds(report, F)
    report.audits["output_bounds"] = bounds
    report.seconds = time.perf_counter() - t0
    if not bounds:
        raise BoundViolation(f"output degree bound violated at {bounds.certificate}")
    return report
