"""Command-line interface.

Subcommands: classify | range | shell | nr | verify | emit.  Matrices are
given inline as "a11,a12;a21,a22" with complex literals like 1+2i, -1i, 0.5,
or as a JSON document {"matrix": [[[re,im],[re,im]],[[re,im],[re,im]]]}.
Descriptors are emitted as JSON with "inf"/"-inf" sentinels for extended
reals; emit produces CSV polylines or an SVG figure.

Exit codes: 0 ok, 1 usage or parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import NonFiniteEntry, ParseError, ShellRangeError
from .hyperbolic import HPoint
from .oracle import sample, verify_membership
from .ranges import (
    ConicBCK,
    DualQuadric,
    NumericalRangeDescriptor,
    RangeDescriptor,
    ShellDescriptor,
    boundary_polyline,
    conformal_range,
    dw_shell,
    numerical_range,
    touch_height_bck,
)
from .spectra import (
    canonical_representative,
    classify,
    eigendistance,
    invariants,
    triple_ratio,
)

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<s1>[+-])?(?:(?P<n1>{_NUM})(?P<i1>[iI])?|(?P<j1>[iI]))"
    rf"(?:(?P<s2>[+-])(?:(?P<n2>{_NUM})(?P<i2>[iI])|(?P<j2>[iI])))?$"
)


def _parse_complex(text: str, offset: int) -> complex:
    s = text.strip()
    if not s:
        raise ParseError("empty matrix entry", offset)
    m = _COMPLEX_RE.match(s)
    if not m:
        raise ParseError(f"bad complex literal {s!r}", offset)
    sign1 = -1.0 if m.group("s1") == "-" else 1.0
    real = imag = 0.0
    if m.group("j1"):
        imag = sign1
    else:
        value = sign1 * float(m.group("n1"))
        if m.group("i1"):
            imag = value
        else:
            real = value
    if m.group("s2"):
        if m.group("i1") or m.group("j1"):
            raise ParseError(f"two imaginary terms in {s!r}", offset)
        sign2 = -1.0 if m.group("s2") == "-" else 1.0
        imag = sign2 * (float(m.group("n2")) if m.group("n2") else 1.0)
    return complex(real, imag)


def _parse_inline(text: str) -> np.ndarray:
    rows = []
    offset = 0
    row_chunks = text.split(";")
    if len(row_chunks) != 2:
        raise ParseError(f"expected 2 rows separated by ';', got {len(row_chunks)}", 0)
    for chunk in row_chunks:
        cells = chunk.split(",")
        if len(cells) != 2:
            raise ParseError(f"expected 2 entries per row, got {len(cells)}", offset)
        row = []
        cell_offset = offset
        for cell in cells:
            row.append(_parse_complex(cell, cell_offset))
            cell_offset += len(cell) + 1
        rows.append(row)
        offset += len(chunk) + 1
    return np.array(rows, dtype=complex)


def _parse_json_matrix(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos) from exc
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise ParseError("JSON input needs a 'matrix' key", 0)
    raw = doc["matrix"]
    try:
        m = np.array(
            [[complex(raw[i][j][0], raw[i][j][1]) for j in range(2)] for i in range(2)]
        )
    except (TypeError, IndexError, KeyError) as exc:
        raise ParseError(f"matrix must be 2x2 of [re, im] pairs: {exc}", 0) from exc
    return m


def parse_matrix(text: str) -> np.ndarray:
    """Parse an inline "a,b;c,d" or JSON matrix document; whitespace-insensitive."""
    stripped = text.strip()
    if stripped.startswith("{"):
        m = _parse_json_matrix(stripped)
    else:
        m = _parse_inline("".join(text.split()))
    if not np.all(np.isfinite(m)):
        raise NonFiniteEntry("matrix entries must be finite")
    return m


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    model: str = "bck"
    samples: int = 100_000
    seed: int = 0
    tolerance: float = 1e-8
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")


def _encode(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, complex):
        return [_encode(value.real), _encode(value.imag)]
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return _encode(value.tolist())
    return value


def _decode_float(value) -> float:
    if value == "inf":
        return math.inf
    if value == "-inf":
        return -math.inf
    return float(value)


def _point_doc(p: HPoint) -> dict:
    return {"coords": list(p.coords), "asymptotic": p.is_asymptotic()}


def _point_from_doc(doc: dict) -> HPoint:
    return HPoint("bck2", tuple(doc["coords"]))


def range_descriptor_doc(d: RangeDescriptor) -> dict:
    return _encode(
        {
            "kind": "conformal-range",
            "case": d.case,
            "foci": [list(f.coords) for f in d.foci],
            "foci_asymptotic": [f.is_asymptotic() for f in d.foci],
            "s_plus": d.s_plus,
            "s_minus": d.s_minus,
            "s_focal": d.s_focal,
            "chi_plus": d.chi_plus,
            "chi_minus": d.chi_minus,
            "chi_e": d.chi_e,
            "vertex": list(d.vertex.coords) if d.vertex is not None else None,
            "conic": {
                "dual": d.conic.gc,
                "rank": d.conic.rank,
                "primal": d.conic.primal,
            },
            "touch_height": d.touch_height,
            "touch_height_bck": touch_height_bck(d.touch_height),
        }
    )


def range_descriptor_from_doc(doc: dict) -> RangeDescriptor:
    conic = ConicBCK(
        gc=np.array(doc["conic"]["dual"]),
        rank=int(doc["conic"]["rank"]),
        primal=None if doc["conic"]["primal"] is None else np.array(doc["conic"]["primal"]),
    )
    return RangeDescriptor(
        case=doc["case"],
        foci=tuple(HPoint("bck2", tuple(c)) for c in doc["foci"]),
        s_plus=_decode_float(doc["s_plus"]),
        s_minus=_decode_float(doc["s_minus"]),
        s_focal=_decode_float(doc["s_focal"]),
        chi_plus=float(doc["chi_plus"]),
        chi_minus=float(doc["chi_minus"]),
        chi_e=float(doc["chi_e"]),
        vertex=None if doc["vertex"] is None else HPoint("bck2", tuple(doc["vertex"])),
        conic=conic,
        touch_height=_decode_float(doc["touch_height"]),
    )


def shell_descriptor_doc(d: ShellDescriptor) -> dict:
    return _encode(
        {
            "kind": "shell",
            "case": d.case,
            "asymptotic_points": list(d.asymptotic_points),
            "radius": d.radius,
            "touch_height": d.touch_height,
            "touch_height_bck": touch_height_bck(d.touch_height),
            "dual_quadric": {"g": d.dual_quadric.g, "rank": d.dual_quadric.rank},
        }
    )


def shell_descriptor_from_doc(doc: dict) -> ShellDescriptor:
    return ShellDescriptor(
        case=doc["case"],
        asymptotic_points=tuple(complex(re, im) for re, im in doc["asymptotic_points"]),
        radius=_decode_float(doc["radius"]),
        touch_height=_decode_float(doc["touch_height"]),
        dual_quadric=DualQuadric(
            g=np.array(doc["dual_quadric"]["g"]), rank=int(doc["dual_quadric"]["rank"])
        ),
    )


def nr_descriptor_doc(d: NumericalRangeDescriptor) -> dict:
    return _encode(
        {
            "kind": "numerical-range",
            "foci": list(d.foci),
            "s_plus": d.s_plus,
            "s_minus": d.s_minus,
            "s_focal": d.s_focal,
        }
    )


def nr_descriptor_from_doc(doc: dict) -> NumericalRangeDescriptor:
    return NumericalRangeDescriptor(
        foci=tuple(complex(re, im) for re, im in doc["foci"]),
        s_plus=_decode_float(doc["s_plus"]),
        s_minus=_decode_float(doc["s_minus"]),
        s_focal=_decode_float(doc["s_focal"]),
    )


def _classify_doc(matrix) -> dict:
    inv = invariants(matrix)
    rep = canonical_representative(matrix)
    ratio = triple_ratio(matrix)
    rep_doc = {"kind": rep.kind}
    if rep.kind == "s":
        rep_doc["beta"] = rep.beta
    elif rep.kind == "l":
        rep_doc.update({"alpha": rep.alpha, "t": rep.t, "sign": rep.sign})
    return _encode(
        {
            "class": classify(matrix).value,
            "invariants": {"u": inv.u, "abs_d": inv.abs_d, "e": inv.e, "d": inv.d},
            "canonical_rep": rep_doc,
            "triple_ratio": [ratio.chi1, ratio.chi2, ratio.chi3],
            "eigendistance": eigendistance(matrix),
        }
    )


_MODEL_2D = {"bck": "bck2", "pck": "pck2", "ph": "ph2"}
_MODEL_3D = {"bck": "bck3", "pck": "pck3", "ph": "bck3"}


def _emit_csv(points) -> str:
    lines = ["model,x,z,is_asymptotic"]
    for p in points:
        coords = ",".join(repr(c) for c in p.coords)
        lines.append(f"{p.model},{coords},{str(p.is_asymptotic()).lower()}")
    return "\n".join(lines) + "\n"


def _emit_svg(points, descriptor, model2d: str) -> str:
    size = 1000.0
    if model2d == "bck2":
        def view(x, z):
            return (size / 2 + size / 2 * x, size / 2 - size / 2 * z)
        backdrop = (
            f'<circle cx="{size/2:.1f}" cy="{size/2:.1f}" r="{size/2:.1f}" '
            'fill="none" stroke="#888" stroke-width="2"/>'
        )
    else:
        xs = [p.coords[0] for p in points if not p.at_infinity]
        zs = [p.coords[1] for p in points if not p.at_infinity]
        x0, x1 = min(xs), max(xs)
        z0, z1 = min(zs), max(zs)
        span = max(x1 - x0, z1 - z0, 1e-9) * 1.1
        cx, cz = (x0 + x1) / 2, (z0 + z1) / 2

        def view(x, z):
            return (size / 2 + size * (x - cx) / span, size / 2 - size * (z - cz) / span)
        backdrop = ""
    path = []
    for p in points:
        if p.at_infinity:
            continue
        vx, vz = view(*p.coords)
        path.append(f"{'M' if not path else 'L'} {vx:.3f} {vz:.3f}")
    closed = descriptor.case not in ("segment", "closed-line", "closed-half-line")
    d_attr = " ".join(path) + (" Z" if closed else "")
    markers = []
    for f in descriptor.foci:
        vx, vz = view(*f.coords)
        if f.is_asymptotic():
            markers.append(
                f'<circle cx="{vx:.3f}" cy="{vz:.3f}" r="8" fill="none" '
                'stroke="#d62728" stroke-width="2"/>'
            )
        else:
            markers.append(f'<circle cx="{vx:.3f}" cy="{vz:.3f}" r="6" fill="#d62728"/>')
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">\n'
        f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>\n'
        f"{backdrop}\n"
        f'<path d="{d_attr}" fill="none" stroke="#1f77b4" stroke-width="3"/>\n'
        + "\n".join(markers)
        + "\n</svg>\n"
    )


def run(config: RunConfig, matrix) -> tuple[int, str]:
    """Dispatch one subcommand; returns (exit_code, document text)."""
    sub = config.subcommand
    if sub == "classify":
        return 0, json.dumps(_classify_doc(matrix), indent=2) + "\n"
    if sub == "range":
        return 0, json.dumps(range_descriptor_doc(conformal_range(matrix)), indent=2) + "\n"
    if sub == "shell":
        return 0, json.dumps(shell_descriptor_doc(dw_shell(matrix)), indent=2) + "\n"
    if sub == "nr":
        return 0, json.dumps(nr_descriptor_doc(numerical_range(matrix)), indent=2) + "\n"
    if sub == "verify":
        rd = conformal_range(matrix)
        sd = dw_shell(matrix)
        range_cloud = sample(matrix, "range", _MODEL_2D[config.model], config.samples, config.seed)
        shell_cloud = sample(matrix, "shell", _MODEL_3D[config.model], config.samples, config.seed)
        r1 = verify_membership(range_cloud, rd, tol=config.tolerance)
        r2 = verify_membership(shell_cloud, sd, tol=config.tolerance)
        worst = max(r1.max_violation, r2.max_violation)
        ok = r1.passed and r2.passed
        doc = _encode(
            {
                "samples": config.samples,
                "seed": config.seed,
                "tolerance": config.tolerance,
                "max_violation": worst,
                "pass": ok,
                "checks": {"range": r1.checks, "shell": r2.checks},
            }
        )
        return (0 if ok else 2), json.dumps(doc, indent=2) + "\n"
    if sub == "emit":
        descriptor = conformal_range(matrix)
        points = boundary_polyline(descriptor, max(config.samples, 8), _MODEL_2D[config.model])
        if config.output_format == "svg":
            return 0, _emit_svg(points, descriptor, _MODEL_2D[config.model])
        if config.output_format == "csv":
            return 0, _emit_csv(points)
        docs = [{"coords": list(p.coords), "asymptotic": p.is_asymptotic()} for p in points]
        return 0, json.dumps(_encode({"model": _MODEL_2D[config.model], "points": docs}), indent=2) + "\n"
    raise ValueError(f"unknown subcommand {sub!r}")


def build_parser() -> argparse.ArgumentParser:
    default_tol = float(os.environ.get("SHELLRANGE_TOLERANCE", "1e-8"))
    parser = argparse.ArgumentParser(
        prog="shellrange",
        description="Geometric descriptors of numerical ranges, Davis-Wielandt shells "
        "and conformal ranges of 2x2 complex matrices.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in (
        ("classify", "spectral class, invariants and canonical representative"),
        ("range", "conformal-range descriptor"),
        ("shell", "Davis-Wielandt shell descriptor"),
        ("nr", "numerical-range descriptor"),
        ("verify", "sample the ranges and check the descriptors"),
        ("emit", "boundary polyline as CSV/SVG/JSON"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("matrix", help="inline 'a,b;c,d' or JSON matrix document")
        p.add_argument("--model", choices=("bck", "pck", "ph"), default="bck")
        p.add_argument("--samples", type=int, default=100_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tolerance", type=float, default=default_tol)
        p.add_argument("--format", choices=("json", "csv", "svg"), default="json",
                       dest="output_format")
        p.add_argument("--out", default=None, dest="output_path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        matrix = parse_matrix(args.matrix)
        config = RunConfig(
            subcommand=args.subcommand,
            model=args.model,
            samples=args.samples,
            seed=args.seed,
            tolerance=args.tolerance,
            output_format=args.output_format,
            output_path=args.output_path,
        )
        code, doc = run(config, matrix)
    except (ShellRangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.output_path:
        Path(config.output_path).write_text(doc)
    else:
        sys.stdout.write(doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
