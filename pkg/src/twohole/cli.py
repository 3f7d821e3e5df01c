"""
Command-line front end.

    twohole solve  --shape hypotrochoid --n 2 --m auto --rout 1 --R 0.25 --d 1
    twohole curve  --shape polygon --nsides 3 --terms 5 --C 1 --R 1 --d 1 --format svg --out tri.svg
    twohole table1 --out table1.csv
    twohole grid   --shape hypotrochoid --n 2 --m auto --rout 1 --R 1 --d 0.1 --rings 20 --rays 90

Settings may also come from ``--config FILE`` holding ``key=value`` lines with
the flag names as keys; flags given on the command line win. The gap ``d`` is
measured along the positive x-axis from the normalization length (C, r_out or
a) to the near rim of the hole.

Exit status: 0 on success, 1 on usage errors, 2 on computation or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import export
from .composite import CompositeMap, HoleTarget, annulus_grid, build_composite, inner_hole_image
from .discrepancy import max_discrepancy, reproduce_table1
from .errors import MappingError
from .outer import (
    HypotrochoidSpec,
    LaurentMap,
    PolygonSpec,
    hypotrochoid_map,
    normalized,
    sample_boundary,
    schwarz_christoffel_map,
    straight_edge_m,
)

DEFAULT_SAMPLES = 720
DEFAULT_PRECISION = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _bool(text: str) -> bool:
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _m_value(text: str):
    return "auto" if str(text).strip().lower() == "auto" else float(text)


# key -> converter; keys double as flag names and config-file keys
_KEYS = {
    "shape": str,
    "n": int,
    "m": _m_value,
    "nsides": int,
    "terms": int,
    "rotated": _bool,
    "C": float,
    "rout": float,
    "a": float,
    "R": float,
    "d": float,
    "h": float,
    "format": str,
    "out": str,
    "samples": int,
    "precision": int,
    "rings": int,
    "rays": int,
}


@dataclass(frozen=True)
class RunConfig:
    shape: str
    n: Optional[int] = None
    m: object = None
    nsides: Optional[int] = None
    terms: int = 5
    rotated: bool = False
    C: Optional[float] = None
    rout: Optional[float] = None
    a: Optional[float] = None
    R: Optional[float] = None
    d: Optional[float] = None
    h: Optional[float] = None
    format: Optional[str] = None
    out: Optional[str] = None
    samples: int = DEFAULT_SAMPLES
    precision: int = DEFAULT_PRECISION
    rings: int = 16
    rays: int = 72

    def validate(self):
        if self.shape not in ("hypotrochoid", "polygon"):
            raise UsageError(f"--shape must be hypotrochoid or polygon, got {self.shape!r}")
        if self.shape == "hypotrochoid" and (self.n is None or self.m is None):
            raise UsageError("hypotrochoid needs --n and --m")
        if self.shape == "polygon" and self.nsides is None:
            raise UsageError("polygon needs --nsides")
        norms = [k for k in ("C", "rout", "a") if getattr(self, k) is not None]
        if len(norms) != 1:
            raise UsageError("give exactly one of --C, --rout, --a")
        if self.R is None:
            raise UsageError("--R is required")
        if (self.d is None) == (self.h is None):
            raise UsageError("give exactly one of --d, --h")
        if self.samples < 3:
            raise UsageError("--samples must be at least 3")
        if self.precision < 1:
            raise UsageError("--precision must be at least 1")

    @property
    def resolved_m(self) -> float:
        return straight_edge_m(self.n) if self.m == "auto" else float(self.m)

    def outer_map(self) -> LaurentMap:
        if self.shape == "hypotrochoid":
            unit = hypotrochoid_map(HypotrochoidSpec(self.n, self.resolved_m, 1.0))
        else:
            unit = schwarz_christoffel_map(PolygonSpec(self.nsides, self.terms, 1.0, self.rotated))
        if self.C is not None:
            return unit.with_scale(self.C)
        if self.rout is not None:
            return normalized(unit, r_out=self.rout)
        return normalized(unit, a=self.a)

    @property
    def datum(self) -> float:
        for k in ("C", "rout", "a"):
            val = getattr(self, k)
            if val is not None:
                return val
        raise UsageError("no normalization length")

    def target(self) -> HoleTarget:
        if self.h is not None:
            return HoleTarget(R=self.R, h=self.h)
        return HoleTarget(R=self.R, d=self.d, datum=self.datum)


def read_config(path) -> dict:
    out = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, val = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-")
        if key not in _KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _KEYS[key](val)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return out


def _merge(args) -> RunConfig:
    values = {}
    if args.config:
        try:
            values.update(read_config(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
    for key in _KEYS:
        val = getattr(args, key, None)
        if val is not None:
            values[key] = val
    if "shape" not in values:
        raise UsageError("--shape is required")
    return RunConfig(**values)


# -- commands -------------------------------------------------------------------


def solve_report(cfg: RunConfig, cm: Optional[CompositeMap] = None) -> dict:
    if cm is None:
        cm = build_composite(cfg.outer_map(), cfg.target())
    rep = max_discrepancy(cm)
    if cfg.shape == "hypotrochoid":
        n, m_or_terms = cfg.n, cfg.resolved_m
    else:
        n, m_or_terms = cfg.nsides, cfg.terms
    return {
        "C": cm.outer.scale,
        "n": n,
        "m_or_terms": m_or_terms,
        "e": cm.e,
        "r1": cm.r1,
        "lambda": cm.bilinear.lam,
        "rho1": cm.bilinear.rho1,
        "h": cm.h,
        "R": cm.R,
        "epsilon": cm.epsilon,
        "s": cm.s,
        "delta_max": rep.delta_max,
    }


def cmd_solve(cfg: RunConfig) -> str:
    cfg.validate()
    return export.json_text(solve_report(cfg))


def cmd_curve(cfg: RunConfig) -> str:
    cfg.validate()
    cm = build_composite(cfg.outer_map(), cfg.target())
    thetas = 2.0 * np.pi * np.arange(cfg.samples) / cfg.samples
    outer_pts = sample_boundary(cm.outer, cfg.samples)
    hole_pts = inner_hole_image(cm, thetas)
    ref_pts = cm.h + cm.R * np.exp(1j * thetas)
    fmt = cfg.format or "csv"
    if fmt == "svg":
        return export.curves_svg(outer_pts, hole_pts, cm.h, cm.R)
    curves = {"outer": outer_pts, "hole": hole_pts, "hole_circle_ref": ref_pts}
    rows = list(export.curve_rows(curves, thetas, cfg.precision))
    if fmt == "json":
        return export.json_text([dict(zip(("curve", "theta", "x", "y"), r)) for r in rows])
    return export.csv_text(["curve", "theta", "x", "y"], rows)


def cmd_table1(precision: int = DEFAULT_PRECISION, fmt: str = "csv") -> str:
    rows = reproduce_table1()
    if fmt == "json":
        return export.json_text([r.__dict__ for r in rows])
    body = [
        [export.fmt(v, precision) for v in (r.R, r.d, r.epsilon, r.delta_max)] for r in rows
    ]
    return export.csv_text(["R", "d", "epsilon", "delta_max"], body)


def cmd_grid(cfg: RunConfig) -> str:
    cfg.validate()
    if cfg.rings < 2 or cfg.rays < 3:
        raise UsageError("need --rings >= 2 and --rays >= 3")
    cm = build_composite(cfg.outer_map(), cfg.target())
    grid = annulus_grid(cm, cfg.rings, cfg.rays)
    return export.csv_text(["ring", "ray", "x", "y", "at_infinity"], export.grid_rows(grid, cfg.precision))


_FORMATS = {
    "solve": ("json",),
    "curve": ("csv", "svg", "json"),
    "table1": ("csv", "json"),
    "grid": ("csv",),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twohole", allow_abbrev=False, description="Composite annulus maps onto a plane with two holes.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def common_output(p, with_samples=True):
        p.add_argument("--format", help="output format")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--precision", type=int, help=f"significant digits (default {DEFAULT_PRECISION})")
        if with_samples:
            p.add_argument("--samples", type=int, help=f"boundary samples (default {DEFAULT_SAMPLES})")

    def map_flags(p):
        p.add_argument("--config", help="key=value file with defaults for any flag")
        g = p.add_argument_group("shape")
        g.add_argument("--shape", choices=("hypotrochoid", "polygon"))
        g.add_argument("--n", type=int, help="hypotrochoid order")
        g.add_argument("--m", type=_m_value, help="hypotrochoid amplitude or 'auto' for 1/n^2")
        g.add_argument("--nsides", type=int, help="polygon side count")
        g.add_argument("--terms", type=int, help="series terms kept (default 5)")
        g.add_argument("--rotated", action="store_const", const=True, help="rotated polygon series")
        g = p.add_argument_group("normalization (exactly one)")
        g.add_argument("--C", type=float, help="scale factor")
        g.add_argument("--rout", type=float, help="outer radius of the curve")
        g.add_argument("--a", type=float, help="value of F(1)")
        g = p.add_argument_group("hole")
        g.add_argument("--R", type=float, help="hole radius")
        g.add_argument("--d", type=float, help="gap from the normalization length to the hole")
        g.add_argument("--h", type=float, help="hole centre")

    p = sub.add_parser("solve", allow_abbrev=False, help="solve for the map parameters, print a JSON report")
    map_flags(p)
    common_output(p)
    p = sub.add_parser("curve", allow_abbrev=False, help="boundary curves as CSV, SVG or JSON")
    map_flags(p)
    common_output(p)
    p = sub.add_parser("table1", allow_abbrev=False, help="epsilon and max discrepancy on the reference R x d grid")
    common_output(p, with_samples=False)
    p.set_defaults(config=None)
    p = sub.add_parser("grid", allow_abbrev=False, help="image of a polar grid of the annulus")
    map_flags(p)
    common_output(p, with_samples=False)
    p.add_argument("--rings", type=int)
    p.add_argument("--rays", type=int)
    return parser


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table1":
            fmt = args.format or "csv"
            if fmt not in _FORMATS["table1"]:
                raise UsageError(f"table1 writes {', '.join(_FORMATS['table1'])}, not {fmt}")
            text = cmd_table1(args.precision or DEFAULT_PRECISION, fmt)
            out = args.out
        else:
            cfg = _merge(args)
            fmt = cfg.format or _FORMATS[args.command][0]
            if fmt not in _FORMATS[args.command]:
                raise UsageError(f"{args.command} writes {', '.join(_FORMATS[args.command])}, not {fmt}")
            text = {"solve": cmd_solve, "curve": cmd_curve, "grid": cmd_grid}[args.command](cfg)
            out = cfg.out
    except UsageError as exc:
        print(f"twohole: usage error: {exc}", file=sys.stderr)
        return 1
    except MappingError as exc:
        print(f"twohole: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"twohole: usage error: {exc}", file=sys.stderr)
        return 1

    try:
        _write(text, out)
    except OSError as exc:
        print(f"twohole: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
