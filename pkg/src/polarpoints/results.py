"""JSON result files.

Rationals are stored as exact strings ("p/q" or "p"); each comes with an
advisory decimal rendering. Univariate polynomials are coefficient lists,
lowest degree first. Timings are deliberately left out so that identical
runs give byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

from .driver import LevelResult, RunReport
from .polycore import UPoly
from .realize import Interval, RealPoint
from .zdsolve import Verdict, ZeroDimParam

FORMAT = "polarpoints-result/1"
SCHEMA_PATH = Path(__file__).with_name("result.schema.json")


def rat(x: Fraction) -> str:
    return str(Fraction(x))


def decimal(x: Fraction, digits: int = 20) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _upoly(f: UPoly) -> List[str]:
    return [rat(c) for c in f.coeffs]


def param_to_dict(P: ZeroDimParam) -> Dict[str, Any]:
    return {
        "variables": list(P.variables),
        "q": _upoly(P.q),
        "v": [_upoly(v) for v in P.v],
        "lambda": [rat(c) for c in P.lam],
    }


def param_from_dict(d: Dict[str, Any]) -> ZeroDimParam:
    return ZeroDimParam(
        UPoly([Fraction(c) for c in d["q"]]),
        tuple(UPoly([Fraction(c) for c in v]) for v in d["v"]),
        tuple(Fraction(c) for c in d["lambda"]),
        tuple(d["variables"]),
    )


def _verdict(v: Verdict) -> Dict[str, Any]:
    out: Dict[str, Any] = {"ok": v.ok}
    if v.certificate is not None:
        out["certificate"] = v.certificate
    if v.detail:
        out["detail"] = json.loads(json.dumps(v.detail, default=str))
    return out


def point_to_dict(pt: RealPoint) -> Dict[str, Any]:
    return {
        "root_index": pt.root_index,
        "coordinates": [{"value": rat(c), "decimal": decimal(c)} for c in pt.coordinates],
        "enclosures": [[rat(e.lo), rat(e.hi)] for e in pt.enclosures],
        "root_interval": [rat(pt.root.lo), rat(pt.root.hi)] if pt.root else None,
        "residuals": [rat(r) for r in pt.residuals],
        "residual_bounds": [rat(r) for r in pt.residual_bounds],
    }


def point_from_dict(d: Dict[str, Any], level: int) -> RealPoint:
    root = d.get("root_interval")
    return RealPoint(
        tuple(Fraction(c["value"]) for c in d["coordinates"]),
        tuple(Interval(Fraction(a), Fraction(b)) for a, b in d["enclosures"]),
        level,
        d["root_index"],
        Interval(Fraction(root[0]), Fraction(root[1])) if root else None,
        tuple(Fraction(r) for r in d["residuals"]),
        tuple(Fraction(r) for r in d["residual_bounds"]),
    )


def _level(lv: LevelResult) -> Dict[str, Any]:
    diag = lv.diagnostics
    return {
        "level": lv.level,
        "status": lv.status,
        "reason": lv.reason,
        "degree": lv.param.q.degree if lv.param else None,
        "quotient_dimension": diag.get("quotient_dimension"),
        "radical": diag.get("radical"),
        "lambda_attempts": diag.get("lambda_attempts"),
        "parameterization": param_to_dict(lv.param) if lv.param else None,
        "frame_parameterization": param_to_dict(lv.frame_param) if lv.frame_param else None,
        "points": [point_to_dict(pt) for pt in lv.points],
        "audits": {k: _verdict(v) for k, v in sorted(lv.audits.items())},
    }


def report_to_dict(report: RunReport) -> Dict[str, Any]:
    cfg = report.config
    F = report.system
    return {
        "format": FORMAT,
        "config": {
            "epsilon": rat(cfg.epsilon),
            "mode": cfg.mode,
            "seed": cfg.seed,
            "width": rat(cfg.width),
            "retry_budget": cfg.retry_budget,
            "audits": sorted(cfg.audits),
            "frame": "raw" if cfg.raw_frame else "original",
        },
        "input": {
            "variables": list(F.ring),
            "polynomials": [str(f) for f in F.polys],
            "n": F.n,
            "p": F.p,
            "d": F.d,
            "height_bound": str(F.b),
        },
        "parameters": {
            "sample_sizes": {
                "S": str(report.sizes.S_size),
                "T": str(report.sizes.T_size),
                "R": str(report.sizes.R_size),
                "k": report.sizes.k,
            },
            "A": [[rat(x) for x in row] for row in report.A.entries],
            "sigma": [rat(s) for s in report.sigma],
            "u": [rat(x) for x in report.u],
        },
        "levels": [_level(lv) for lv in report.levels],
        "audits": {k: _verdict(v) for k, v in sorted(report.audits.items())},
        "summary": {
            "points": len(report.points),
            "failed_levels": [lv.level for lv in report.levels if lv.status == "fail"],
        },
    }


def dumps(report: RunReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def write_result(report: RunReport, path) -> None:
    Path(path).write_text(dumps(report))


@dataclass
class LoadedLevel:
    level: int
    status: str
    param: ZeroDimParam | None
    frame_param: ZeroDimParam | None
    points: List[RealPoint]


def load_result(source) -> Dict[str, Any]:
    """Parse a result file; adds "_levels" with rebuilt objects."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        data = json.loads(Path(source).read_text())
    else:
        data = json.loads(source)
    levels = []
    for lv in data["levels"]:
        levels.append(
            LoadedLevel(
                lv["level"],
                lv["status"],
                param_from_dict(lv["parameterization"]) if lv["parameterization"] else None,
                param_from_dict(lv["frame_parameterization"]) if lv["frame_parameterization"] else None,
                [point_from_dict(p, lv["level"]) for p in lv["points"]],
            )
        )
    data["_levels"] = levels
    return data


def load_schema() -> Dict[str, Any]:
    return json.loads(SCHEMA_PATH.read_text())
