"""Compile a polycube into a crease pattern, one inserted cube at a time."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from . import foldsim
from .facemap import FaceEntry, FaceMap, face_from_placement
from .gadgets import NORMAL, ROTATED, apply_insertion, cube_gadget
from .isometry import Isometry, angle_between, crease_rotation, det3
from .pattern import CreasePattern, edge_key, triangle_at
from .polycube import Face, Polycube, build_plan

log = logging.getLogger(__name__)

RECT_SEAM = "rect_seam"
RECT_SEAMLESS = "rect_seamless"
SQUARE = "square"
MODES = (RECT_SEAM, RECT_SEAMLESS, SQUARE)


class VerificationFailed(RuntimeError):
    def __init__(self, report: foldsim.VerificationReport):
        super().__init__("; ".join(report.details) or "verification failed")
        self.report = report


class ConstructionError(RuntimeError):
    pass


def paper_size(n: int, mode: str) -> tuple[int, int]:
    if n < 1:
        raise ValueError("n must be at least 1")
    if mode == RECT_SEAM:
        return 4 * n + 1, 2 * n + 1
    if mode == RECT_SEAMLESS:
        return 4 * n + 1, 2 * n + 2
    if mode == SQUARE:
        return 3 * n + 2, 3 * n + 2
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class CompileResult:
    pattern: CreasePattern
    face_map: FaceMap
    polycube: Polycube
    mode: str
    stats: dict = field(default_factory=dict)
    report: foldsim.VerificationReport | None = None
    # max layer count after each insertion step (only when tracked)
    layer_history: list[int] = field(default_factory=list)


def _proper_rotations():
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = tuple(tuple(signs[r] if perm[r] == k else 0 for k in range(3)) for r in range(3))
            if det3(m) == 1:
                yield m


def base_state(g: Face) -> tuple[CreasePattern, FaceMap]:
    """The cube gadget with its seamed bottom placed on face ``g``."""
    gadget = cube_gadget()
    rot = next(r for r in sorted(_proper_rotations(), reverse=True)
               if Isometry(r).linear((0, 0, -1)) == g.outward)
    # local cube centre (5, 3, 1) goes to the centre of g's cell
    cx, cy, cz = Isometry(rot).linear((5, 3, 1))
    x, y, z = g.cell
    place = Isometry(rot, (2 * x + 1 - cx, 2 * y + 1 - cy, 2 * z + 1 - cz))
    fm = FaceMap(frozenset({g.cell}), seamed=g)
    for (row, col), iso in gadget.face_squares.items():
        world = place @ iso
        face = face_from_placement(world, row, col)
        fm.entries[face] = FaceEntry(row, col, world)
    return gadget.pattern, fm


def _grow(p: Polycube, g: Face, orientations, track_layers: bool = False):
    plan = build_plan(p, g)
    c, fm = base_state(g)
    history = []
    if track_layers:
        history.append(_max_layers(c))
    for k, st in enumerate(plan.insertion_order[1:], 1):
        s = fm.square(st.attach)
        c, fm = apply_insertion(c, fm, s, orientations(k))
        problems = fm.health(c)
        if problems:
            raise ConstructionError(f"face map broken after inserting {st.cell}: {problems[0]}")
        if track_layers:
            history.append(_max_layers(c))
    return c, fm, history


def _max_layers(c: CreasePattern) -> int:
    cover, _ = foldsim.piece_coverage(foldsim.evaluate(c))
    return max(max(v) for v in cover.values())


def _finish(c, fm, p, mode, history) -> CompileResult:
    try:
        fs = foldsim.evaluate(c)
    except foldsim.InconsistentAssignment as exc:
        raise VerificationFailed(foldsim.VerificationReport(
            False, False, {}, False, False, False, [f"folding does not close: {exc}"])) from exc
    report = foldsim.verify(fs, p, fm, mode)
    if not report.ok:
        raise VerificationFailed(report)
    w, h = paper_size(p.n, mode)
    if (c.width, c.height) != (w, h):
        raise ConstructionError(f"paper is {c.width}x{c.height}, expected {w}x{h}")
    stats = {
        "n": p.n,
        "width": c.width,
        "height": c.height,
        "nontrivial_crease_count": len(c),
        "max_layer_multiplicity": report.max_layers,
    }
    return CompileResult(c, fm, p, mode, stats, report, history)


def fold_rect_seam(p: Polycube, g: Face | None = None, track_layers: bool = False) -> CompileResult:
    g = g or p.default_seam_face()
    c, fm, history = _grow(p, g, lambda k: NORMAL, track_layers)
    return _finish(c, fm, p, RECT_SEAM, history)


def fold_rect_seamless(p: Polycube, g: Face | None = None, track_layers: bool = False) -> CompileResult:
    """Rectangle construction plus one extra row folded over the seamed face."""
    g = g or p.default_seam_face()
    c, fm, history = _grow(p, g, lambda k: NORMAL, track_layers)
    c, fm = fold_over_strip(c, fm, "top", outer=True)
    return _finish(c, fm, p, RECT_SEAMLESS, history)


def fold_square(p: Polycube, g: Face | None = None, track_layers: bool = False) -> CompileResult:
    """Alternate insertion orientations, then fold spare paper over the seamed face."""
    g = g or p.default_seam_face()
    c, fm, history = _grow(p, g, lambda k: ROTATED if k % 2 else NORMAL, track_layers)
    side = paper_size(p.n, SQUARE)[0]
    if c.width > side or c.height > side:
        raise ConstructionError(f"{c.width}x{c.height} paper does not fit in side {side}")
    outer = True
    while c.width < side:
        c, fm = fold_over_strip(c, fm, "right", outer=outer)
        outer = False
    while c.height < side:
        c, fm = fold_over_strip(c, fm, "top", outer=outer)
        outer = False
    return _finish(c, fm, p, SQUARE, history)


COMPILERS = {RECT_SEAM: fold_rect_seam, RECT_SEAMLESS: fold_rect_seamless, SQUARE: fold_square}


def compile_polycube(p: Polycube, mode: str = RECT_SEAM, g: Face | None = None, **kw) -> CompileResult:
    try:
        fn = COMPILERS[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}") from None
    return fn(p, g, **kw)


# -- fold-over strips ----------------------------------------------------------


def _face_box(f: Face) -> list[tuple[int, int]]:
    """Closed doubled-coordinate extent of face ``f`` along each axis."""
    box = [(2 * v, 2 * v + 2) for v in f.cell]
    k = f.axis
    plane = 2 * (f.cell[k] + (1 if f.sign > 0 else 0))
    box[k] = (plane, plane)
    return box


def _inside(box, pts) -> bool:
    return all(lo <= p[k] <= hi for p in pts for k, (lo, hi) in enumerate(box))


def fold_over_strip(c: CreasePattern, fm: FaceMap, side: str, outer: bool) -> tuple[CreasePattern, FaceMap]:
    """Add one row ("top") or column ("right") and fold it flat over the seamed face.

    The paper edge being extended already lies along one edge of the seamed
    face, so the new strip can be hinged onto that face piece by piece.  The
    hinge angles come from the folded state of ``c``.  With ``outer`` the
    strip becomes the face's outer layer and takes over its face-map entry.
    """
    g = fm.seamed or fm.folded_over
    if g is None:
        raise ConstructionError("no seamed face to fold a strip onto")
    fs = foldsim.evaluate(c)
    align = foldsim.alignment(fs, fm)
    box = _face_box(g)
    out_n = g.outward
    W, H = c.width, c.height
    top = side == "top"
    if side not in ("top", "right"):
        raise ValueError(f"side must be 'top' or 'right', got {side!r}")
    n_seg = 2 * W if top else 2 * H

    def frame(k: int):
        """Hinge segment, a point on the strip side, and the strip piece corners."""
        if top:
            a, b = (k, 2 * H), (k + 1, 2 * H)
            far = (k, 2 * H + 1)
            corners = [(k, 2 * H), (k + 1, 2 * H), (k, 2 * H + 2), (k + 1, 2 * H + 2)]
            inner = (2 * (k // 2) + 1, 2 * H - 1)
        else:
            a, b = (2 * W, k), (2 * W, k + 1)
            far = (2 * W + 1, k)
            corners = [(2 * W, k), (2 * W, k + 1), (2 * W + 2, k), (2 * W + 2, k + 1)]
            inner = (2 * W - 1, 2 * (k // 2) + 1)
        return a, b, far, corners, inner

    creases = dict(c.creases)
    pieces: list[Isometry] = []
    for k in range(n_seg):
        a, b, far, corners, inner = frame(k)
        below = align @ fs.triangle_placement(triangle_at(a, b, inner))
        choice = None
        for theta in (0, 90, -90, 180):
            q = below @ crease_rotation(a, b, far, theta)
            if _inside(box, [q.apply2(*p) for p in corners]):
                choice = (theta, q)
                break
        if choice is None:
            raise ConstructionError(f"strip piece {k} cannot be laid onto {g}")
        theta, q = choice
        if theta == 180:
            # an outer strip wraps around the layer below it; an inner one tucks under
            faces_out = _dot(below.normal, out_n) > 0
            theta = -180 if faces_out == outer else 180
        if theta:
            creases[edge_key(a, b)] = theta
        pieces.append(q)

    kink_free = []
    for k in range(n_seg - 1):
        q0, q1 = pieces[k], pieces[k + 1]
        if top:
            a, b, far = (k + 1, 2 * H), (k + 1, 2 * H + 2), (k + 2, 2 * H + 1)
        else:
            a, b, far = (2 * W, k + 1), (2 * W + 2, k + 1), (2 * W + 1, k + 2)
        rel = q0.inverse() @ q1
        ang = angle_between(a, b, far, rel)
        if ang not in (0, 180):
            raise ConstructionError(f"strip pieces {k} and {k + 1} do not meet flat")
        if ang:
            ang = 180 if _dot(q0.normal, out_n) > 0 else -180
            mid = (a[0] + b[0]) // 2, (a[1] + b[1]) // 2
            creases[edge_key(a, mid)] = ang
            creases[edge_key(mid, b)] = ang
        elif k % 2 == 0:
            kink_free.append(k // 2)

    new = CreasePattern(W + (0 if top else 1), H + (1 if top else 0), creases)
    entries = dict(fm.entries)
    reversed_faces = set(fm.reversed_faces)
    if outer:
        def square_of(unit):
            return (H, unit) if top else (unit, W)

        showing = [u for u in kink_free if _dot(pieces[2 * u].normal, out_n) > 0]
        if showing:
            unit = showing[0]
        elif kink_free:
            unit = kink_free[0]
            reversed_faces.add(g)
        else:
            raise ConstructionError("no unfolded unit square in the strip")
        row, col = square_of(unit)
        entries[g] = FaceEntry(row, col, pieces[2 * unit])
        return new, FaceMap(fm.cells, entries, None, reversed_faces, g)
    return new, FaceMap(fm.cells, entries, fm.seamed, reversed_faces, fm.folded_over)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))
