"""Polygon files, subdivision tables and JSON certificate reports.

Polygon files come in two flavours: whitespace (``x y z`` per line, ``#``
comments) and brace (``{ x, y,z },`` rows with ``(* ... *)`` comments, as in
the published subdivision tables).  Reports store every rational as a
``"p/q"`` string so they can be re-validated exactly.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .bezier import HALF, ControlPolygon, SubdivisionForest, evaluate, monotone_axes, subdivide_levels
from .certify import (
    IsotopyCertificate, PushCertificate, PushError, certify_push, check_witness_plane, shared_endpoints,
)
from .hulls import (
    EnclosureEvidence, SeparationResult, Verdict, build_enclosure, convex_hull, curve_in_enclosure,
    enclosure_disjoint,
)
from .kernel import Axis, Plane, Point3, format_rational, parse_rational
from .topology import KnotDiagram, PLKnot, classify, gauss_code, is_simple, project_diagram

_COMMENT = re.compile(r"\(\*.*?\*\)", re.S)
_TRIPLE = re.compile(r"\{([^{}]*)\}")


class PolygonFormatError(ValueError):
    pass


def parse_points(text: str) -> list[Point3]:
    """Points from either file format (detected by the presence of braces)."""
    body = _COMMENT.sub(" ", text)
    pts = []
    if "{" in body:
        for m in _TRIPLE.finditer(body):
            fields = [f for f in m.group(1).split(",")]
            if len(fields) != 3:
                raise PolygonFormatError(f"expected three coordinates in {{{m.group(1)}}}")
            pts.append(Point3(*(parse_rational(f) for f in fields)))
        leftover = _TRIPLE.sub("", body).replace(",", " ").split()
        if leftover:
            raise PolygonFormatError(f"unexpected text outside point triples: {leftover[0]!r}")
        return pts
    for lineno, line in enumerate(body.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise PolygonFormatError(f"line {lineno}: expected 'x y z', got {line!r}")
        try:
            pts.append(Point3(*(parse_rational(f) for f in fields)))
        except ValueError as exc:
            raise PolygonFormatError(f"line {lineno}: {exc}") from None
    return pts


def parse_polygon(text: str) -> ControlPolygon:
    pts = parse_points(text)
    try:
        return ControlPolygon(tuple(pts))
    except ValueError as exc:
        raise PolygonFormatError(str(exc)) from None


def read_polygon(path: str | Path) -> ControlPolygon:
    return parse_polygon(Path(path).read_text(encoding="utf-8"))


def brace_row(p: Sequence[Fraction]) -> str:
    x, y, z = (format_rational(c) for c in p)
    return f"{{ {x}, {y},{z} }}"


def format_polygon(cp: ControlPolygon | Iterable[Point3], style: str = "whitespace") -> str:
    pts = list(cp)
    if style == "whitespace":
        return "".join(" ".join(format_rational(c) for c in p) + "\n" for p in pts)
    if style == "brace":
        rows = [brace_row(p) for p in pts]
        return ",\n".join(rows) + "\n"
    raise ValueError(f"unknown polygon style {style!r}")


def write_polygon(cp: ControlPolygon, path: str | Path, style: str = "whitespace") -> None:
    Path(path).write_text(format_polygon(cp, style), encoding="utf-8")


def format_axes(axes: Iterable[Axis]) -> str:
    return ", ".join(str(a) for a in sorted(axes))


def format_forest(forest: SubdivisionForest, label: str = "P[{k}]", annotate: bool = True) -> str:
    """One block per piece: ``label: axes`` header, then brace rows."""
    blocks = []
    for k, piece in enumerate(forest.pieces):
        head = label.format(k=k, level=forest.level)
        if annotate:
            axes = format_axes(monotone_axes(piece))
            head = f"{head}: {axes}" if axes else f"{head}:"
        blocks.append(head + "\n" + format_polygon(piece, "brace"))
    return "\n".join(blocks)


def parse_forest(text: str) -> list[list[Point3]]:
    """Blocks of brace rows separated by blank lines (headers and comments ignored)."""
    text = _COMMENT.sub("", text)
    blocks: list[list[Point3]] = []
    current: list[Point3] = []
    for line in text.splitlines() + [""]:
        line = line.strip()
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        if "{" not in line:
            continue
        current.extend(parse_points(line))
    return blocks


# ---------------------------------------------------------------------------
# reports


def _q(x: Fraction) -> str:
    return format_rational(x)


def _pt(p: Sequence[Fraction]) -> list[str]:
    return [_q(c) for c in p]


def _unpt(v: Sequence[str]) -> Point3:
    return Point3(*(parse_rational(c) for c in v))


def _plane(pl: Plane | None) -> list[str] | None:
    return None if pl is None else [_q(c) for c in pl]


def _unplane(v) -> Plane | None:
    return None if v is None else Plane(*(parse_rational(c) for c in v))


def separation_to_dict(r: SeparationResult) -> dict[str, Any]:
    out: dict[str, Any] = {"verdict": str(r.verdict)}
    if r.plane is not None:
        out["plane"] = _plane(r.plane)
    if r.shared:
        out["shared"] = [_pt(p) for p in r.shared]
    if r.witness is not None:
        out["witness"] = _pt(r.witness)
    if r.parts:
        out["parts"] = [separation_to_dict(p) for p in r.parts]
    return out


def separation_from_dict(d: dict) -> SeparationResult:
    return SeparationResult(
        Verdict(d["verdict"]), _unplane(d.get("plane")), tuple(_unpt(p) for p in d.get("shared", [])),
        _unpt(d["witness"]) if "witness" in d else None,
        tuple(separation_from_dict(p) for p in d.get("parts", [])),
    )


def diagram_to_dict(d: KnotDiagram) -> dict[str, Any]:
    return {
        "axis": f"drop {d.projection_axis}",
        "crossings": [
            {"location": _pt(c.location), "over_edge": c.over_edge, "under_edge": c.under_edge,
             "over_depth": _q(c.over_depth), "under_depth": _q(c.under_depth), "sign": c.sign,
             "over_param": _q(c.over_param), "under_param": _q(c.under_param)}
            for c in d.crossings
        ],
        "gauss_code": str(gauss_code(d)),
        "writhe": d.writhe,
    }


def evidence_to_dict(ev: EnclosureEvidence) -> dict[str, Any]:
    return {
        "left_count": ev.left_count, "left_points": [_pt(p) for p in ev.left_points],
        "right_count": ev.right_count, "right_points": [_pt(p) for p in ev.right_points],
        "samples": [{"s": _q(s), "point": _pt(p), "inside": inside} for s, p, inside in ev.samples],
    }


def isotopy_to_dict(cert: IsotopyCertificate) -> dict[str, Any]:
    return {
        "kind": "IsotopyCertificate",
        "source": [_pt(p) for p in cert.source],
        "level": cert.level,
        "scale_exponent": cert.scale_exponent,
        "pieces": [{"index": pc.index, "monotone_axis": str(pc.monotone_axis),
                    "hull_vertices": len(pc.hull.vertices), "degeneracy": str(pc.hull.degeneracy),
                    "points": [_pt(p) for p in pc.piece]} for pc in cert.pieces],
        "separations": [dict(pair=[i, j], **separation_to_dict(r)) for (i, j), r in sorted(cert.separations.items())],
        "enclosures": [{"piece": rep.piece, "left_plane": _plane(rep.enclosure.left_half),
                        "right_plane": _plane(rep.enclosure.right_half),
                        "normal_left": _pt(rep.normal_left), "normal_right": _pt(rep.normal_right),
                        "evidence": evidence_to_dict(rep.evidence),
                        "against": [dict(piece=j, **separation_to_dict(r)) for j, r in sorted(rep.against.items())]}
                       for rep in cert.enclosures],
        "refinement_vertices": len(cert.refinement),
        "simple": cert.simplicity.simple,
        "diagram": diagram_to_dict(cert.diagram),
        "knot_class": str(cert.pl_knot_class),
        "jones": str(cert.pl_knot_class.jones),
    }


def push_to_dict(cert: PushCertificate) -> dict[str, Any]:
    return {
        "kind": "PushCertificate",
        "polygon": [_pt(p) for p in cert.polygon.vertices],
        "vertex": cert.vertex,
        "start": _pt(cert.start),
        "end": _pt(cert.end),
        "triangles": [[_pt(p) for p in tri] for tri in cert.triangles],
        "checks": [{"triangle": c.triangle, "edge": c.edge, "contact": c.contact} for c in cert.checks],
        "final_simple": cert.final_simple.simple,
    }


def transition_to_dict(t) -> dict[str, Any]:
    return {
        "kind": "TransitionInterval",
        "lo": _q(t.lo), "hi": _q(t.hi),
        "class_lo": str(t.class_lo), "class_hi": str(t.class_hi),
        "uncertified_gap": t.uncertified_gap,
        "failed_at": None if t.failed_at is None else _q(t.failed_at),
        "certificate_lo": isotopy_to_dict(t.cert_lo),
        "certificate_hi": isotopy_to_dict(t.cert_hi),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def write_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(report), encoding="utf-8")


def read_report(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def validate_report(report: dict) -> list[str]:
    """Re-derive every verdict in a serialized report; returns discrepancies."""
    kind = report.get("kind")
    if kind == "IsotopyCertificate":
        return _validate_isotopy(report)
    if kind == "PushCertificate":
        return _validate_push(report)
    if kind == "TransitionInterval":
        out = []
        if not parse_rational(report["lo"]) < parse_rational(report["hi"]):
            out.append("interval is empty")
        if report["class_lo"] == report["class_hi"]:
            out.append("endpoint classes coincide")
        for key, cls in (("certificate_lo", report["class_lo"]), ("certificate_hi", report["class_hi"])):
            sub = report[key]
            if sub["knot_class"] != cls:
                out.append(f"{key} records {sub['knot_class']}, interval says {cls}")
            out.extend(f"{key}: {m}" for m in _validate_isotopy(sub))
        return out
    return [f"unknown report kind {kind!r}"]


def _validate_isotopy(rep: dict) -> list[str]:
    out: list[str] = []
    source = ControlPolygon(tuple(_unpt(p) for p in rep["source"]))
    scaled = source.scaled(2 ** rep["scale_exponent"])
    forest = subdivide_levels(scaled, rep["level"])
    pieces = forest.pieces
    if len(pieces) != len(rep["pieces"]):
        return ["piece count mismatch"]
    for stored, piece in zip(rep["pieces"], pieces):
        if [_unpt(p) for p in stored["points"]] != list(piece.points):
            out.append(f"piece {stored['index']}: points differ")
        if Axis[stored["monotone_axis"]] not in monotone_axes(piece):
            out.append(f"piece {stored['index']}: not monotone in {stored['monotone_axis']}")
    repaired = {tuple(sorted((e["piece"], a["piece"]))) for e in rep["enclosures"] for a in e["against"]}
    for entry in rep["separations"]:
        i, j = entry["pair"]
        r = separation_from_dict(entry)
        if r.verdict is Verdict.OVERLAPPING:
            if (i, j) not in repaired:
                out.append(f"pair {i},{j}: overlapping and not repaired")
            continue
        out.extend(f"pair {i},{j}: {m}" for m in
                   check_witness_plane(r, pieces[i].points, pieces[j].points, shared_endpoints(pieces, i, j)))
    for e in rep["enclosures"]:
        k = e["piece"]
        for a in e["against"]:
            r = separation_from_dict(a)
            if r.verdict is Verdict.OVERLAPPING:
                out.append(f"enclosure {k} overlaps piece {a['piece']}")
                continue
            if not r.parts:
                out.append(f"enclosure {k} vs piece {a['piece']}: no part results")
        cp = pieces[k]
        try:
            E = build_enclosure(cp, evaluate(cp, HALF), _unpt(e["normal_left"]), _unpt(e["normal_right"]))
            ev = curve_in_enclosure(cp, E, [parse_rational(s["s"]) for s in e["evidence"]["samples"]])
        except Exception as exc:  # noqa: BLE001 - any failure is a discrepancy here
            out.append(f"enclosure {k}: {exc}")
            continue
        if ev.left_count != e["evidence"]["left_count"] or ev.right_count != e["evidence"]["right_count"]:
            out.append(f"enclosure {k}: plane counts differ")
        for a in e["against"]:
            j = a["piece"]
            if not enclosure_disjoint(E, convex_hull(pieces[j].points), shared_endpoints(pieces, k, j)).disjoint:
                out.append(f"enclosure {k} meets hull {j}")
    knot = PLKnot(forest.refinement())
    if len(knot) != rep["refinement_vertices"]:
        out.append("refinement size differs")
    if not is_simple(knot).simple:
        out.append("refinement is not simple")
    axis = Axis[rep["diagram"]["axis"].split()[-1]]
    d = project_diagram(knot, axis)
    if diagram_to_dict(d) != rep["diagram"]:
        out.append("diagram differs on reprojection")
    if str(classify(d)) != rep["knot_class"]:
        out.append("knot class differs")
    return out


def _validate_push(rep: dict) -> list[str]:
    knot = PLKnot(_unpt(p) for p in rep["polygon"])
    try:
        cert = certify_push(knot, rep["vertex"], _unpt(rep["end"]))
    except (PushError, ValueError) as exc:
        return [f"push no longer certifies: {exc}"]
    if push_to_dict(cert) != rep:
        return ["recomputed push certificate differs"]
    return []


def diagram_report(d: KnotDiagram) -> dict[str, Any]:
    return {"kind": "KnotDiagram", **diagram_to_dict(d), "knot_class": str(classify(d))}


__all__ = [
    "PolygonFormatError", "brace_row", "diagram_report", "dumps", "format_forest", "format_polygon",
    "isotopy_to_dict", "parse_forest", "parse_points", "parse_polygon", "push_to_dict", "read_polygon",
    "read_report", "transition_to_dict", "validate_report", "write_polygon", "write_report",
]
