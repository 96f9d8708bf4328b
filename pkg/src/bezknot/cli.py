"""Command-line entry point.

Exit status: 0 success, 2 certification failure (obstruction printed),
3 bad input or degenerate geometry.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .bezier import ControlPolygon, scale_for_subdivision, subdivide_levels
from .certify import (
    DEFAULT_MAX_LEVEL, CertificationError, PushError, certify_isotopy, certify_push, shared_endpoints,
)
from .homotopy import VertexHomotopy, bisect_transition
from .hulls import (
    EnclosureError, EvidenceError, build_enclosure, convex_hull, curve_in_enclosure, enclosure_disjoint,
)
from .bezier import HALF, evaluate
from .io import (
    PolygonFormatError, diagram_report, dumps, evidence_to_dict, format_forest, isotopy_to_dict,
    push_to_dict, read_polygon, read_report, separation_to_dict, transition_to_dict, validate_report,
)
from .kernel import Axis, DegenerateInputError, Point3, format_rational, parse_rational
from .topology import DegenerateProjectionError, PLKnot, classify, project_diagram

EXIT_OK = 0
EXIT_UNCERTIFIED = 2
EXIT_INPUT = 3

AXES = {"xy": Axis.Z, "yz": Axis.X, "xz": Axis.Y}


class InputError(Exception):
    pass


def _point(text: str) -> Point3:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError(f"expected x,y,z but got {text!r}")
    try:
        return Point3(*(parse_rational(p) for p in parts))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _closed(cp: ControlPolygon) -> ControlPolygon:
    if not cp.closed:
        raise InputError("control polygon is not closed (first and last points differ)")
    return cp


def _scaled(cp: ControlPolygon, scale: str, level: int) -> tuple[ControlPolygon, Fraction]:
    if scale == "none":
        return cp, Fraction(1)
    if scale == "auto":
        try:
            scaled, m = scale_for_subdivision(cp, level)
        except ValueError as exc:
            raise InputError(f"--scale auto: {exc}") from None
        return scaled, Fraction(2) ** m
    if scale.startswith("2^") and scale[2:].isdigit():
        k = Fraction(2) ** int(scale[2:])
        return cp.scaled(k), k
    raise InputError(f"--scale must be auto, none or 2^m, got {scale!r}")


def cmd_subdivide(args) -> int:
    cp = read_polygon(args.input)
    scaled, k = _scaled(cp, args.scale, args.levels)
    levels = range(1, args.levels + 1) if args.all_levels else [args.levels]
    chunks = []
    for level in levels:
        forest = subdivide_levels(scaled, level, scale=k)
        body = format_forest(forest, label=args.label, annotate=not args.no_annotate)
        chunks.append(f"(*Subdivision {level} *)\n{body}" if args.all_levels else body)
    _emit("\n".join(chunks), args.output)
    return EXIT_OK


def cmd_certify(args) -> int:
    cp = _closed(read_polygon(args.input))
    try:
        cert = certify_isotopy(cp, args.max_level, min_level=args.min_level, repair=not args.no_repair)
    except CertificationError as exc:
        print(f"uncertified: {exc}", file=sys.stderr)
        for key, value in exc.obstruction.items():
            print(f"  {key}: {value}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    _emit(dumps(isotopy_to_dict(cert)), args.output)
    print(f"certified at level {cert.level}: {cert.pl_knot_class}", file=sys.stderr)
    return EXIT_OK


def cmd_diagram(args) -> int:
    cp = _closed(read_polygon(args.input))
    if args.level:
        scaled, k = _scaled(cp, args.scale, args.level)
        knot = PLKnot(subdivide_levels(scaled, args.level).refinement())
    else:
        knot = PLKnot(cp.points)
    d = project_diagram(knot, AXES[args.axis])
    _emit(dumps(diagram_report(d)), args.output)
    if args.svg:
        from .svg import render_svg

        render_svg(d, knot, args.svg)
    return EXIT_OK


def cmd_classify(args) -> int:
    cp = _closed(read_polygon(args.input))
    try:
        cert = certify_isotopy(cp, args.max_level)
    except CertificationError as exc:
        print(f"uncertified: {exc}")
        return EXIT_UNCERTIFIED
    cls = cert.pl_knot_class
    print(cls.family)
    print(f"type: {cls}  jones: {cls.jones}  level: {cert.level}  projection: drop {cert.diagram_axis}")
    return EXIT_OK


def cmd_push(args) -> int:
    cp = _closed(read_polygon(args.input))
    try:
        cert = certify_push(cp, args.vertex, _point(args.to))
    except PushError as exc:
        print(f"push fails: {exc}", file=sys.stderr)
        print(f"  edge: {exc.edge}", file=sys.stderr)
        print("  witness: (" + ", ".join(format_rational(c) for c in exc.witness) + ")", file=sys.stderr)
        return EXIT_UNCERTIFIED
    _emit(dumps(push_to_dict(cert)), args.output)
    return EXIT_OK


def cmd_bisect(args) -> int:
    cp0 = _closed(read_polygon(args.input0))
    cp1 = _closed(read_polygon(args.input1))
    try:
        h = VertexHomotopy.between(cp0, cp1)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        t = bisect_transition(h, args.tol, args.max_level,
                              on_step=lambda s, c: print(f"s = {s}: {c}", file=sys.stderr))
    except CertificationError as exc:
        print(f"endpoint uncertified: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    _emit(dumps(transition_to_dict(t)), args.output)
    return EXIT_OK


def cmd_enclosure(args) -> int:
    cp = read_polygon(args.input)
    scaled, k = _scaled(cp, args.scale, args.level)
    pieces = subdivide_levels(scaled, args.level).pieces
    if not 0 <= args.piece < len(pieces):
        raise InputError(f"piece index {args.piece} out of range 0..{len(pieces) - 1}")
    piece = pieces[args.piece]
    mid = evaluate(piece, HALF)
    try:
        E = build_enclosure(piece, mid, _point(args.normal_l), _point(args.normal_r))
        ev = curve_in_enclosure(piece, E, [Fraction(1, 4), HALF, Fraction(3, 4)])
    except (EnclosureError, EvidenceError) as exc:
        print(f"enclosure fails: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    against = {}
    status = EXIT_OK
    for j, other in enumerate(pieces):
        if j == args.piece:
            continue
        r = enclosure_disjoint(E, convex_hull(other.points), shared_endpoints(pieces, args.piece, j))
        against[str(j)] = separation_to_dict(r)
        if not r.disjoint:
            status = EXIT_UNCERTIFIED
    report = {"kind": "EnclosureEvidence", "piece": args.piece, "level": args.level,
              "mid": [format_rational(c) for c in mid],
              "left_plane": [format_rational(c) for c in E.left_half],
              "right_plane": [format_rational(c) for c in E.right_half],
              "evidence": evidence_to_dict(ev), "against": against}
    _emit(dumps(report), args.output)
    return status


def cmd_validate(args) -> int:
    problems = validate_report(read_report(args.report))
    for p in problems:
        print(p)
    if problems:
        return EXIT_UNCERTIFIED
    print("valid")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bezknot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subdivide", help="write sub-control polygons in table format")
    p.add_argument("input")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--scale", default="auto", help="auto (2^m from degree and level), none, or 2^m")
    p.add_argument("--all-levels", action="store_true", help="emit levels 1..L with comment headers")
    p.add_argument("--label", default="P[{k}]", help="piece header template, {k} is the piece index")
    p.add_argument("--no-annotate", action="store_true", help="omit monotone-axis annotations")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("certify", help="certify curve and PL refinement share a knot type")
    p.add_argument("input")
    p.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL)
    p.add_argument("--min-level", type=int, default=1)
    p.add_argument("--no-repair", action="store_true", help="never use enclosure repairs")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("diagram", help="crossings of a projection of the polygon")
    p.add_argument("input")
    p.add_argument("--axis", choices=sorted(AXES), default="xy", help="projection plane")
    p.add_argument("--level", type=int, default=0, help="use the refinement at this subdivision level")
    p.add_argument("--scale", default="auto")
    p.add_argument("--svg")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("classify", help="certified knot type of the Bezier curve")
    p.add_argument("input")
    p.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("push", help="certify a straight-line move of one vertex")
    p.add_argument("input")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--to", required=True, metavar="X,Y,Z")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_push)

    p = sub.add_parser("bisect", help="bracket the knot-type change along a one-vertex family")
    p.add_argument("input0")
    p.add_argument("input1")
    p.add_argument("--tol", type=_rational, default=Fraction(1, 1024))
    p.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bisect)

    p = sub.add_parser("enclosure", help="trimmed-hull evidence for one sub-control polygon")
    p.add_argument("input")
    p.add_argument("--piece", type=int, required=True)
    p.add_argument("--level", type=int, default=3)
    p.add_argument("--scale", default="auto")
    p.add_argument("--normal-l", required=True, metavar="A,B,C")
    p.add_argument("--normal-r", required=True, metavar="A,B,C")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_enclosure)

    p = sub.add_parser("validate", help="re-check a JSON report from scratch")
    p.add_argument("report")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PolygonFormatError, DegenerateInputError, DegenerateProjectionError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
