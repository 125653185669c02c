"""Command-line interface: ``conicdet eval | sweep | extremal | verify | limits``.

Exit codes: 0 success, 1 verification or numerical failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from . import determinant as det
from . import extremal as ext
from .divisor import ConeDivisor
from .errors import ConvergenceError, DomainError, ValidationError
from .liouville import action_breakdown
from .verify import SUITES, run_suite

__all__ = ["main", "build_parser", "ResultRecord", "SweepSpec", "format_number"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

CSV_FIELDS = (
    "beta1", "beta2", "beta3", "area", "curvature", "geometry", "path",
    "log_det", "zeta0", "action", "log_h", "C1", "C2", "C3", "residual", "error",
)


class InputError(Exception):
    """Malformed or out-of-domain command-line input."""


# -- serialization --------------------------------------------------------


def format_number(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dump_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dump_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dump_json(v, indent, _level + 1) for v in obj) + "]"
        items = [inner + dump_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- records --------------------------------------------------------------


@dataclass
class ResultRecord:
    beta: Sequence[float]
    area: float
    curvature: Optional[float] = None
    geometry: Optional[str] = None
    path: Optional[str] = None
    log_det: Optional[float] = None
    zeta0: Optional[float] = None
    action: Optional[float] = None
    log_h: Optional[float] = None
    c_terms: Optional[Sequence[float]] = None
    terms: Optional[dict] = None
    residual: Optional[float] = None
    error: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "beta": [float(b) for b in self.beta],
            "area": self.area,
            "curvature": self.curvature,
            "geometry": self.geometry,
            "path": self.path,
            "log_det": self.log_det,
            "zeta0": self.zeta0,
            "action": self.action,
            "log_h": self.log_h,
            "c_terms": None if self.c_terms is None else [float(c) for c in self.c_terms],
            "terms": self.terms,
            "residual": self.residual,
            "error": self.error,
        }

    def csv_row(self) -> List[str]:
        def num(v):
            return "" if v is None else format_number(v)

        c = list(self.c_terms) if self.c_terms is not None else [None] * 3
        return [
            num(self.beta[0]), num(self.beta[1]), num(self.beta[2]), num(self.area), num(self.curvature),
            self.geometry or "", self.path or "", num(self.log_det), num(self.zeta0), num(self.action),
            num(self.log_h), num(c[0]), num(c[1]), num(c[2]), num(self.residual), self.error or "",
        ]


def evaluate(beta, area: float, path: str = "closed") -> ResultRecord:
    """Evaluate log det for one divisor and area along the requested path(s)."""
    spec = det.SurfaceSpec(ConeDivisor(tuple(beta)), area)
    closed = det.logdet(spec, det.Path.CLOSED_FORM)
    brk = action_breakdown(spec.divisor)
    residual = None
    chosen = closed
    if path in ("quadrature", "both"):
        quad = det.logdet(spec, det.Path.QUADRATURE_ANOMALY)
        if path == "quadrature":
            chosen = quad
        else:
            residual = abs(quad.log_det - closed.log_det)
    return ResultRecord(
        beta=spec.divisor.beta,
        area=spec.area,
        curvature=spec.curvature,
        geometry=spec.geometry.value,
        path=path,
        log_det=chosen.log_det,
        zeta0=chosen.zeta0,
        action=brk.action,
        log_h=brk.log_h,
        c_terms=chosen.c_terms,
        terms=dict(chosen.terms),
        residual=residual,
    )


# -- sweeps ---------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    grid: int
    area: float
    degree: float = -2.0

    def __post_init__(self):
        if self.mode not in ("fixed-sum", "flat-line", "spindle-line"):
            raise InputError(f"unknown sweep mode {self.mode!r}")
        if self.grid < 2:
            raise InputError("grid must be at least 2")
        if not self.area > 0:
            raise InputError("area must be positive")
        if self.mode == "fixed-sum" and not -3.0 < self.degree < 0.0:
            raise InputError("--sum must lie in (-3, 0)")


def symmetric_axis(degree: float, n: int) -> np.ndarray:
    """n orders centred on degree/3, strictly inside (-1, 0)."""
    centre = degree / 3.0
    span = min(1.0 + centre, -centre)
    step = span / ((n - 1) / 2.0 + 1.0)
    return centre + step * (np.arange(n) - (n - 1) / 2.0)


def _spindle_zeta0(b: float) -> float:
    """zeta(0) with the middle cone removed (order 0)."""
    return math.fsum([(2.0 * b + 2.0) / 6.0, -2.0 * (b + 1.0 - 1.0 / (b + 1.0)) / 12.0, -1.0])


def sweep_records(spec: SweepSpec, path: str = "closed") -> List[ResultRecord]:
    records = []
    if spec.mode == "spindle-line":
        for b in np.linspace(-1.0, 0.0, spec.grid + 2)[1:-1]:
            b = float(b)
            z0 = _spindle_zeta0(b)
            value = det.logdet_spindle(b) - z0 * math.log(spec.area)
            residual = abs(det.spindle_limit(b) - det.logdet_spindle(b)) if path == "both" else None
            records.append(ResultRecord(
                beta=(b, 0.0, b), area=spec.area, curvature=2.0 * math.pi * (2.0 * b + 2.0) / spec.area,
                geometry="spherical", path="spindle", log_det=value, zeta0=z0, residual=residual,
            ))
        return records
    degree = -2.0 if spec.mode == "flat-line" else spec.degree
    axis = symmetric_axis(degree, spec.grid)
    for b1 in axis:
        for b3 in axis:
            beta = (float(b1), degree - float(b1) - float(b3), float(b3))
            try:
                records.append(evaluate(beta, spec.area, path))
            except (ValidationError, DomainError, ConvergenceError) as exc:
                records.append(ResultRecord(beta=beta, area=spec.area, path=path, error=str(exc)))
    return records


# -- argument parsing -----------------------------------------------------


def parse_beta(text: str):
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse cone orders {text!r}") from exc
    if len(values) != 3:
        raise argparse.ArgumentTypeError("--beta needs exactly three comma-separated orders")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conicdet",
        description="Determinants of Laplacians on spheres with three conical singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, area_default=1.0):
        p.add_argument("--area", type=float, default=area_default, help="total area S")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    p = sub.add_parser("eval", help="log det for one divisor and area")
    p.add_argument("--beta", type=parse_beta, required=True, help="cone orders a,b,c in (-1,0)")
    p.add_argument("--path", choices=("closed", "quadrature", "both"), default="closed")
    common(p)

    p = sub.add_parser("sweep", help="log det over a grid of divisors")
    p.add_argument("--mode", choices=("fixed-sum", "flat-line", "spindle-line"), default="fixed-sum")
    p.add_argument("--sum", type=float, default=-2.0, help="degree |beta| for fixed-sum mode")
    p.add_argument("--grid", type=int, default=11)
    p.add_argument("--path", choices=("closed", "quadrature", "both"), default="closed")
    common(p)

    p = sub.add_parser("extremal", help="threshold area and type of the symmetric stationary point")
    p.add_argument("--sum", type=float, required=True, help="degree |beta| in (-3,0)")
    p.add_argument("--area", type=float, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--tol-scale", type=float, default=1.0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("limits", help="sphere and spindle limits of the general formula")
    p.add_argument("--beta", type=parse_beta, default=(-0.2, -0.5, -0.8),
                   help="spindle orders to report (three values)")
    p.add_argument("--out", default=None)
    return parser


# -- commands -------------------------------------------------------------


def _render(records: List[ResultRecord], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for r in records:
            writer.writerow(r.csv_row())
        return buf.getvalue()
    if len(records) == 1:
        return dump_json(records[0].as_dict()) + "\n"
    return dump_json([r.as_dict() for r in records]) + "\n"


def cmd_eval(args) -> str:
    return _render([evaluate(args.beta, args.area, args.path)], args.format)


def cmd_sweep(args) -> str:
    spec = SweepSpec(args.mode, args.grid, args.area, args.sum)
    return _render(sweep_records(spec, args.path), args.format)


def cmd_extremal(args) -> str:
    s = args.sum
    if not -3.0 < s < 0.0:
        raise InputError("--sum must lie in (-3, 0)")
    report = {"abs_beta": s, "s0": ext.threshold_area(s)}
    area = 1.0 if args.area is None else args.area
    if not area > 0:
        raise InputError("area must be positive")
    h = ext.hessian_symmetric(s, area)
    report.update({"area": area, "d11": h.d11, "d13": h.d13, "eigenvalues": list(h.eigenvalues)})
    if args.area is not None:
        report["classification"] = ext.classify((s / 3.0,) * 3, area).value
    return dump_json(report) + "\n"


def cmd_limits(args) -> str:
    sphere = det.sphere_limit()
    exact = det.logdet_round_sphere()
    report = {
        "round_sphere": {"area": 4.0 * math.pi, "extrapolated": sphere, "exact": exact,
                         "residual": abs(sphere - exact)},
        "spindle": [],
    }
    for b in args.beta:
        lim, val = det.spindle_limit(b), det.logdet_spindle(b)
        report["spindle"].append({"b": b, "extrapolated": lim, "exact": val, "residual": abs(lim - val)})
    return dump_json(report) + "\n"


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            results = run_suite(args.suite, args.tol_scale)
            _emit("".join(r.line() + "\n" for r in results), args.out)
            return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
        handler = {"eval": cmd_eval, "sweep": cmd_sweep, "extremal": cmd_extremal, "limits": cmd_limits}
        _emit(handler[args.command](args), args.out)
        return EXIT_OK
    except ValidationError as exc:
        print(f"conicdet: invalid input ({exc.invariant}): {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, InputError) as exc:
        print(f"conicdet: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceError as exc:
        print(f"conicdet: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"conicdet: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
