"""Serializers (FOLD, SVG, OBJ) and the ``boxpleat`` command line."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from decimal import Decimal
from pathlib import Path

from . import foldsim
from .construct import MODES, ConstructionError, VerificationFailed, compile_polycube
from .facemap import FaceEntry, FaceMap
from .foldsim import FoldedState
from .isometry import Isometry
from .pattern import CreasePattern, PatternError, edge_key, split_segment
from .polycube import Face, PolycubeError, parse_face, parse_polycube

log = logging.getLogger("boxpleat")


class IoError(ValueError):
    pass


def _half(v: int):
    """Doubled coordinate -> paper units, as an int when whole so JSON shows 2 or 2.5."""
    return v // 2 if v % 2 == 0 else v / 2


def _dec(v: int) -> str:
    return str(Decimal(v) / 2)


# -- FOLD -------------------------------------------------------------------------

COLORS = {180: "red", 90: "orange", -90: "green", -180: "blue"}


def _face_json(f: Face) -> list:
    return [*f.cell, f.direction]


def _face_from_json(v) -> Face:
    return Face(tuple(int(x) for x in v[:3]), str(v[3]))  # type: ignore[arg-type]


def face_map_to_json(fm: FaceMap) -> dict:
    return {
        "cells": [list(c) for c in sorted(fm.cells)],
        "seamed": _face_json(fm.seamed) if fm.seamed else None,
        "folded_over": _face_json(fm.folded_over) if fm.folded_over else None,
        "reversed": [_face_json(f) for f in sorted(fm.reversed_faces)],
        "entries": [
            {
                "face": _face_json(f),
                "row": e.row,
                "col": e.col,
                "rotation": [list(r) for r in e.iso.rotation],
                "translation": list(e.iso.translation),
            }
            for f, e in sorted(fm.entries.items())
        ],
    }


def face_map_from_json(d: dict) -> FaceMap:
    try:
        entries = {}
        for item in d["entries"]:
            rot = tuple(tuple(int(x) for x in r) for r in item["rotation"])
            iso = Isometry(rot, tuple(int(x) for x in item["translation"]))  # type: ignore[arg-type]
            entries[_face_from_json(item["face"])] = FaceEntry(int(item["row"]), int(item["col"]), iso)
        return FaceMap(
            frozenset(tuple(int(x) for x in c) for c in d["cells"]),
            entries,
            _face_from_json(d["seamed"]) if d.get("seamed") else None,
            {_face_from_json(f) for f in d.get("reversed", [])},
            _face_from_json(d["folded_over"]) if d.get("folded_over") else None,
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise IoError(f"malformed face map: {exc}") from None


def export_fold(c: CreasePattern, border: bool = False, face_map: FaceMap | None = None,
                mode: str | None = None) -> str:
    """FOLD document for ``c``.

    FOLD's ``edges_foldAngle`` counts valleys as positive, the opposite of the
    mountain-positive convention used here, so angles are negated on export.
    """
    edges: list[tuple[tuple[int, int], tuple[int, int], str, int]] = []
    for (a, b), ang in c.creases.items():
        edges.append((a, b, "M" if ang > 0 else "V", -ang))
    if border:
        W, H = c.extent
        for a, b in (((0, 0), (W, 0)), ((W, 0), (W, H)), ((0, H), (W, H)), ((0, 0), (0, H))):
            for e in split_segment(a, b):
                edges.append((e[0], e[1], "B", 0))
    edges.sort()
    verts = sorted({p for a, b, _, _ in edges for p in (a, b)})
    index = {p: i for i, p in enumerate(verts)}
    doc = {
        "file_spec": 1.1,
        "file_creator": "boxpleat",
        "file_classes": ["singleModel"],
        "frame_classes": ["creasePattern"],
        "frame_unit": "unit",
        "boxpleat:width": c.width,
        "boxpleat:height": c.height,
        "vertices_coords": [[_half(u), _half(v)] for u, v in verts],
        "edges_vertices": [[index[a], index[b]] for a, b, _, _ in edges],
        "edges_assignment": [s for _, _, s, _ in edges],
        "edges_foldAngle": [f for _, _, _, f in edges],
    }
    if mode is not None:
        doc["boxpleat:mode"] = mode
    if face_map is not None:
        doc["boxpleat:face_map"] = face_map_to_json(face_map)
    return json.dumps(doc, indent=1) + "\n"


def _doubled(x) -> int:
    d = Decimal(str(x)) * 2
    if d != d.to_integral_value():
        raise IoError(f"coordinate {x} is not a multiple of 0.5")
    return int(d)


def parse_fold_document(text: str) -> tuple[CreasePattern, FaceMap | None, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IoError(f"not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise IoError("FOLD document must be a JSON object")
    try:
        verts = [(_doubled(x), _doubled(y)) for x, y, *_ in doc["vertices_coords"]]
        ev = doc["edges_vertices"]
        assign = doc.get("edges_assignment", ["U"] * len(ev))
        angles = doc.get("edges_foldAngle")
    except (KeyError, TypeError, ValueError) as exc:
        raise IoError(f"malformed FOLD document: {exc}") from None
    creases: dict = {}
    for k, (i, j) in enumerate(ev):
        a, b = verts[i], verts[j]
        kind = assign[k]
        if kind in ("B", "F", "C"):
            continue
        if angles is not None:
            ang = -int(round(angles[k]))
        elif kind in ("M", "V"):
            ang = 180 if kind == "M" else -180
        else:
            raise IoError(f"edge {k} has no fold angle")
        if ang == 0:
            continue
        if ang not in COLORS:
            raise IoError(f"edge {k}: unsupported fold angle {ang}")
        try:
            for e in split_segment(a, b):
                creases[edge_key(*e)] = ang
        except PatternError as exc:
            raise IoError(str(exc)) from None
    if "boxpleat:width" in doc:
        w, h = int(doc["boxpleat:width"]), int(doc["boxpleat:height"])
    elif verts:
        w, h = (max(v[0] for v in verts) + 1) // 2, (max(v[1] for v in verts) + 1) // 2
    else:
        raise IoError("cannot determine paper size")
    fm = face_map_from_json(doc["boxpleat:face_map"]) if "boxpleat:face_map" in doc else None
    meta = {k: v for k, v in doc.items() if k.startswith("boxpleat:") and k != "boxpleat:face_map"}
    return CreasePattern(w, h, creases), fm, meta


def parse_fold(text: str) -> CreasePattern:
    return parse_fold_document(text)[0]


# -- SVG --------------------------------------------------------------------------


def export_svg(c: CreasePattern, scale: int = 40) -> str:
    W, H = c.extent
    half = Decimal(scale) / 2

    def xy(p):
        return f'x1="{Decimal(p[0]) * half}" y1="{Decimal(H - p[1]) * half}"'

    def line(a, b, color, width):
        x2, y2 = Decimal(b[0]) * half, Decimal(H - b[1]) * half
        return f'<line {xy(a)} x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"/>'

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W * half}" height="{H * half}" '
        f'viewBox="0 0 {W * half} {H * half}">',
        '<g id="tiling">',
    ]
    for u in range(W + 1):
        out.append(line((u, 0), (u, H), "lightgray", "0.5"))
    for v in range(H + 1):
        out.append(line((0, v), (W, v), "lightgray", "0.5"))
    for col in range(c.width):
        for row in range(c.height):
            u, v = 2 * col, 2 * row
            out.append(line((u, v), (u + 2, v + 2), "lightgray", "0.5"))
            out.append(line((u, v + 2), (u + 2, v), "lightgray", "0.5"))
    out.append("</g>")
    out.append('<g id="creases">')
    for (a, b), ang in c.creases.items():
        out.append(line(a, b, COLORS[ang], "2"))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- OBJ --------------------------------------------------------------------------


def export_obj(fs: FoldedState, eps: str | float = "0.01") -> str:
    """Folded faces as OBJ polygons, stacked layers pushed apart by ``eps`` along their normals."""
    step = Decimal(str(eps))
    cover_seen: dict = {}
    lines = ["# boxpleat folded state"]
    vindex: dict[tuple, int] = {}
    polys = []
    for face in fs.faces:
        iso = fs.placements[face.id]
        # layer rank: how many earlier faces already touch one of this face's lattice squares
        keys = set()
        for t in face.triangles:
            key, _ = foldsim._triangle_pieces(tuple(iso.apply2(*p) for p in foldsim.triangle_vertices(t)))
            keys.add(key)
        rank = max((cover_seen.get(k, 0) for k in keys), default=0)
        for k in keys:
            cover_seen[k] = rank + 1
        loops = [face.polygon()]
        if loops[0] is None:
            loops = [list(foldsim.triangle_vertices(t)) for t in face.triangles]
        n = iso.normal
        for loop in loops:
            ids = []
            for p in loop:
                q = iso.apply2(*p)
                coord = tuple(Decimal(q[k]) / 2 + rank * step * n[k] for k in range(3))
                if coord not in vindex:
                    vindex[coord] = len(vindex) + 1
                ids.append(vindex[coord])
            polys.append(ids)
    for coord in vindex:
        lines.append("v " + " ".join(_fmt(x) for x in coord))
    for ids in polys:
        lines.append("f " + " ".join(str(i) for i in ids))
    return "\n".join(lines) + "\n"


def _fmt(x: Decimal) -> str:
    s = format(x.normalize(), "f")
    return "0" if s == "-0" else s


# -- CLI --------------------------------------------------------------------------

_MODE_NAMES = {"rect-seam": "rect_seam", "rect-seamless": "rect_seamless", "square": "square"}
assert set(_MODE_NAMES.values()) == set(MODES)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit status 2, like argparse, but keep stdout clean
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="boxpleat", description="Fold polycubes from box-pleated square paper.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_format=True):
        p.add_argument("input", help="polycube text file (x y z per line) or, where allowed, a .fold file")
        p.add_argument("--mode", choices=sorted(_MODE_NAMES), default="square")
        p.add_argument("--seam", help='seam face override, e.g. "0 0 0 -z"')
        p.add_argument("-o", "--output", help="output path (default: stdout)")
        if with_format:
            p.add_argument("--format", choices=("fold", "svg", "obj"), default="fold")
            p.add_argument("--scale", type=int, default=40, help="SVG pixels per paper unit")
            p.add_argument("--eps", default="0.01", help="OBJ layer separation")
            p.add_argument("--border", action="store_true", help="include paper border edges in FOLD")

    common(sub.add_parser("fold", help="compile a polycube to a crease pattern"))
    v = sub.add_parser("verify", help="check a pattern (or a fresh compilation) against a polycube")
    common(v, with_format=False)
    v.add_argument("--against", help="polycube file to check a .fold input against")
    common(sub.add_parser("export", help="convert a .fold pattern or a polycube to fold/svg/obj"))
    common(sub.add_parser("stats", help="print compilation statistics as one JSON line"), with_format=False)
    return ap


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc.strerror}") from None


def _compile(args):
    p = parse_polycube(_read(args.input))
    g = parse_face(args.seam) if args.seam else None
    return compile_polycube(p, _MODE_NAMES[args.mode], g)


def _render(args, pattern: CreasePattern, fm: FaceMap | None, mode: str | None) -> str:
    if args.format == "svg":
        return export_svg(pattern, args.scale)
    if args.format == "obj":
        return export_obj(foldsim.evaluate(pattern), args.eps)
    return export_fold(pattern, border=args.border, face_map=fm, mode=mode)


def _report_json(report: foldsim.VerificationReport) -> str:
    return json.dumps(
        {
            "ok": report.ok,
            "coverage_ok": report.coverage_ok,
            "loop_closure_ok": report.loop_closure_ok,
            "seam_census_ok": report.seam_census_ok,
            "one_sided_ok": report.one_sided_ok,
            "diameter_ok": report.diameter_ok,
            "seamed_faces": [_face_json(f) for f in report.seamed_faces],
            "details": report.details,
        },
        sort_keys=True,
    )


def _verify(args) -> int:
    if args.input.endswith(".fold"):
        if not args.against:
            raise IoError("verifying a .fold file needs --against POLYCUBE")
        pattern, fm, meta = parse_fold_document(_read(args.input))
        p = parse_polycube(_read(args.against))
        mode = meta.get("boxpleat:mode", _MODE_NAMES[args.mode])
        if fm is None:
            # no bookkeeping in the file: recompile and insist on the same pattern
            res = compile_polycube(p, mode, parse_face(args.seam) if args.seam else None)
            if res.pattern != pattern:
                print("pattern differs from a fresh compilation and carries no face map", file=sys.stderr)
                return 1
            fm = res.face_map
        try:
            fs = foldsim.evaluate(pattern)
        except foldsim.InconsistentAssignment as exc:
            print(json.dumps({"ok": False, "details": [str(exc)]}))
            return 1
        report = foldsim.verify(fs, p, fm, mode)
    else:
        try:
            report = _compile(args).report
        except VerificationFailed as exc:
            report = exc.report
    print(_report_json(report))
    return 0 if report.ok else 1


def run_cli(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "export" and args.input.endswith(".fold"):
            pattern, fm, meta = parse_fold_document(_read(args.input))
            _write(args.output, _render(args, pattern, fm, meta.get("boxpleat:mode")))
            return 0
        res = _compile(args)
        if args.command == "stats":
            print(json.dumps(res.stats, sort_keys=True))
            return 0
        _write(args.output, _render(args, res.pattern, res.face_map, res.mode))
        return 0
    except (IoError, PolycubeError) as exc:
        print(f"boxpleat: error: {exc}", file=sys.stderr)
        return 2
    except (VerificationFailed, ConstructionError) as exc:
        print(f"boxpleat: construction failed: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
