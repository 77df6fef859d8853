"""Crease-pattern fragments: the 5x3 cube gadget and the insertion step.

The gadget table was found by an exhaustive search over lattice placements of
the 120 tetrakis triangles of a 5x3 sheet (see ``tools/search_gadget.py``) and
is checked against the fold simulator in the test suite.

Local frame (doubled units): the cube occupies [4,6]x[2,4]x[0,2] and stands on
the sheet plane z=0; its bottom is the seamed face.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .facemap import FaceEntry, FaceMap, face_from_placement
from .isometry import Isometry, translation
from .pattern import (
    CreasePattern,
    Edge,
    FoldMap1D,
    PatternError,
    _map_triangle,
    default_kink_angles,
    edge_adjacency,
    edge_key,
    overlay,
    pullback,
)
from .polycube import DIRECTIONS, Face, step


class GadgetError(PatternError):
    pass


class SquareNotSeamless(GadgetError):
    pass


class SquareOutOfBounds(GadgetError):
    pass


class SquareNotMapped(GadgetError):
    pass


# (u0, v0, u1, v1, angle) in doubled coordinates
_CUBE_CREASES = [
    (0, 1, 1, 1, 180), (0, 2, 1, 2, -180), (0, 4, 1, 4, -180), (0, 5, 1, 5, 180),
    (1, 1, 1, 2, -180), (1, 1, 2, 0, 180), (1, 1, 2, 2, 180), (1, 2, 1, 3, 180),
    (1, 2, 2, 2, 180), (1, 3, 1, 4, 180), (1, 4, 1, 5, -180), (1, 4, 2, 4, 180),
    (1, 5, 2, 4, -180), (1, 5, 2, 6, 180), (2, 0, 2, 1, 90), (2, 0, 3, 1, -180),
    (2, 1, 2, 2, 90), (2, 2, 2, 3, 90), (2, 2, 3, 2, 90), (2, 3, 2, 4, 90),
    (2, 4, 2, 5, 90), (2, 4, 3, 4, 90), (2, 5, 2, 6, 90), (2, 6, 3, 5, -180),
    (3, 1, 4, 2, -180), (3, 2, 4, 2, 90), (3, 4, 4, 4, 90), (3, 5, 4, 4, 180),
    (4, 0, 4, 1, 180), (4, 1, 4, 2, 180), (4, 2, 4, 3, 90), (4, 2, 5, 2, 90),
    (4, 3, 4, 4, 90), (4, 4, 4, 5, 180), (4, 4, 5, 4, 90), (4, 5, 4, 6, 180),
    (5, 2, 6, 2, 90), (5, 4, 6, 4, 90), (6, 0, 6, 1, 180), (6, 1, 6, 2, 180),
    (6, 2, 6, 3, 90), (6, 2, 7, 1, 180), (6, 2, 7, 2, 90), (6, 3, 6, 4, 90),
    (6, 4, 6, 5, 180), (6, 4, 7, 4, 90), (6, 4, 7, 5, 180), (6, 5, 6, 6, 180),
    (7, 1, 8, 0, -180), (7, 2, 8, 2, 90), (7, 4, 8, 4, 90), (7, 5, 8, 6, 180),
    (8, 0, 8, 1, 90), (8, 0, 9, 1, 180), (8, 1, 8, 2, 90), (8, 2, 8, 3, 90),
    (8, 2, 9, 1, -180), (8, 2, 9, 2, 180), (8, 3, 8, 4, 90), (8, 4, 8, 5, 90),
    (8, 4, 9, 4, 180), (8, 4, 9, 5, -180), (8, 5, 8, 6, 90), (8, 6, 9, 5, 180),
    (9, 1, 9, 2, -180), (9, 1, 10, 1, 180), (9, 2, 9, 3, 180), (9, 2, 10, 2, -180),
    (9, 3, 9, 4, 180), (9, 4, 9, 5, -180), (9, 4, 10, 4, -180), (9, 5, 10, 5, 180),
]

# paper square (col, row) -> local placement (rotation, translation); top and four walls
_FACE_SQUARES = {
    (2, 1): (((1, 0, 0), (0, 1, 0), (0, 0, 1)), (0, 0, 2)),
    (1, 1): (((0, 0, -1), (0, 1, 0), (1, 0, 0)), (4, 0, -2)),
    (3, 1): (((0, 0, 1), (0, 1, 0), (-1, 0, 0)), (6, 0, 8)),
    (2, 2): (((1, 0, 0), (0, 0, 1), (0, -1, 0)), (0, 4, 6)),
    (2, 0): (((1, 0, 0), (0, 0, -1), (0, 1, 0)), (0, 2, 0)),
}

# fold angle from the block to the flat pleat continuation across its border
# (edges not listed continue flat)
_BORDER = {
    ((2, 0), (3, 0)): 90, ((3, 0), (4, 0)): 90, ((4, 0), (5, 0)): -90, ((5, 0), (6, 0)): -90,
    ((6, 0), (7, 0)): 90, ((7, 0), (8, 0)): 90,
    ((2, 6), (3, 6)): 90, ((3, 6), (4, 6)): 90, ((4, 6), (5, 6)): -90, ((5, 6), (6, 6)): -90,
    ((6, 6), (7, 6)): 90, ((7, 6), (8, 6)): 90,
}

NORMAL = "normal"
ROTATED = "rotated90"


@dataclass(frozen=True)
class CubeGadget:
    pattern: CreasePattern
    # (row, col) -> local placement of the square forming a seamless cube face
    face_squares: dict[tuple[int, int], Isometry]
    anchor: tuple[int, int]  # (row, col) of the sheet square the cube stands on
    border: dict[Edge, int] = field(default_factory=dict)
    orientation: str = NORMAL

    @property
    def width(self) -> int:
        return self.pattern.width

    @property
    def height(self) -> int:
        return self.pattern.height

    def face_directions(self) -> dict[str, tuple[int, int]]:
        """Local cube direction ("+z", "-x", ...) of each face square."""
        out = {}
        for (row, col), iso in self.face_squares.items():
            f = face_from_placement(iso, row, col)
            assert f is not None
            out[f.direction] = (row, col)
        return out


@lru_cache(maxsize=None)
def cube_gadget() -> CubeGadget:
    pat = CreasePattern.from_creases(5, 3, (((a, b), (c, d), t) for a, b, c, d, t in _CUBE_CREASES))
    faces = {(row, col): Isometry(r, t) for (col, row), (r, t) in _FACE_SQUARES.items()}
    return CubeGadget(pat, faces, (1, 2), dict(_BORDER), NORMAL)


# quarter turn of the paper: (u, v) -> (6 - v, u) maps the 5x3 block onto 3x5
_QUARTER = Isometry(((0, -1, 0), (1, 0, 0), (0, 0, 1)), (6, 0, 0))


def _turn(p):
    q = _QUARTER.apply2(*p)
    return (q[0], q[1])


@lru_cache(maxsize=None)
def rotated_gadget() -> CubeGadget:
    """The cube gadget turned a quarter, for insertions that add 2 columns and 4 rows."""
    g = cube_gadget()
    creases = {edge_key(_turn(a), _turn(b)): t for (a, b), t in g.pattern.creases.items()}
    inv = _QUARTER.inverse()
    faces = {}
    for (row, col), iso in g.face_squares.items():
        u, v = _turn((2 * col + 1, 2 * row + 1))
        faces[((v - 1) // 2, (u - 1) // 2)] = _QUARTER @ iso @ inv
    border = {edge_key(_turn(a), _turn(b)): t for (a, b), t in g.border.items()}
    return CubeGadget(CreasePattern(3, 5, creases), faces, (2, 1), border, ROTATED)


def gadget_for(orientation: str) -> CubeGadget:
    if orientation == NORMAL:
        return cube_gadget()
    if orientation == ROTATED:
        return rotated_gadget()
    raise GadgetError(f"unknown orientation {orientation!r}")


def _wrap(angle: int) -> int:
    if angle > 180:
        return angle - 360
    if angle < -180:
        return angle + 360
    return angle


@dataclass(frozen=True)
class Insertion:
    """Geometry of one insertion step: the pleat fold maps and where the block sits."""

    orientation: str
    row: int
    col: int
    fx: FoldMap1D
    fy: FoldMap1D

    @property
    def gadget(self) -> CubeGadget:
        return gadget_for(self.orientation)

    @property
    def origin(self) -> tuple[int, int]:
        return 2 * self.col, 2 * self.row

    def new_col(self, col: int) -> int:
        g = self.gadget
        if col < self.col:
            return col
        if col == self.col:
            return col + g.anchor[1]
        return col + g.width - 1

    def new_row(self, row: int) -> int:
        g = self.gadget
        if row < self.row:
            return row
        if row == self.row:
            return row + g.anchor[0]
        return row + g.height - 1


def plan_insertion(width: int, height: int, row: int, col: int, orientation: str) -> Insertion:
    g = gadget_for(orientation)
    # pleat piece length: unit accordions on the long side, half-unit pleats on the short
    ux = 2 if g.width == 5 else 1
    uy = 2 if g.height == 5 else 1
    fx = FoldMap1D.zigzag(2 * width, 2 * col, 2, ux, 2, 2)
    fy = FoldMap1D.zigzag(2 * height, 2 * row, 2, uy, 2, 2)
    return Insertion(orientation, row, col, fx, fy)


def apply_insertion(c: CreasePattern, fm: FaceMap, s: tuple[int, int], orientation: str = NORMAL):
    """Grow a cube out of seamless square ``s = (row, col)``.

    Returns the enlarged pattern and the updated face map.
    """
    row, col = s
    if not (0 <= row < c.height and 0 <= col < c.width):
        raise SquareOutOfBounds(f"square {s} outside {c.width}x{c.height} paper")
    if not c.square_is_uncreased(row, col):
        raise SquareNotSeamless(f"square {s} is creased")
    f = fm.face_at(row, col)
    if f is None:
        raise SquareNotMapped(f"square {s} is not the outer layer of any face")
    ins = plan_insertion(c.width, c.height, row, col, orientation)
    g = ins.gadget
    width, height = c.width + g.width - 1, c.height + g.height - 1
    u0, v0 = ins.origin
    u1, v1 = u0 + 2 * g.width, v0 + 2 * g.height
    ax, ay = 2 * (col + g.anchor[1]), 2 * (row + g.anchor[0])
    kinks = {("x", k): a for k, a in default_kink_angles(ins.fx, ax, ax + 2).items()}
    kinks.update({("y", k): a for k, a in default_kink_angles(ins.fy, ay, ay + 2).items()})
    new = pullback(c, width, height, ins.fx, ins.fy, kinks, skip=(u0, v0, u1, v1))
    new = overlay(new, g.pattern, (u0, v0))
    creases = dict(new.creases)
    adj = edge_adjacency(width, height)
    for e, ts in adj.items():
        if len(ts) != 2 or not _on_rect_border(e, u0, v0, u1, v1):
            continue
        outside = next(t for t in ts if not _inside(t, u0, v0, u1, v1))
        img, sigma = _map_triangle(outside, ins.fx, ins.fy)
        a, b = (tuple((ins.fx(p[0]), ins.fy(p[1]))) for p in e)
        local = edge_key((e[0][0] - u0, e[0][1] - v0), (e[1][0] - u0, e[1][1] - v0))
        theta = _wrap(sigma * c.angle(a, b) + g.border.get(local, 0))
        if theta:
            creases[e] = theta
    new = CreasePattern(width, height, creases)
    return new, _update_face_map(fm, f, ins)


def _inside(t, u0, v0, u1, v1) -> bool:
    col, r, _ = t
    return u0 <= 2 * col < u1 and v0 <= 2 * r < v1


def _on_rect_border(e: Edge, u0, v0, u1, v1) -> bool:
    (a, b) = e
    if a[0] == b[0] and a[0] in (u0, u1):
        return v0 <= min(a[1], b[1]) and max(a[1], b[1]) <= v1
    if a[1] == b[1] and a[1] in (v0, v1):
        return u0 <= min(a[0], b[0]) and max(a[0], b[0]) <= u1
    return False


def _update_face_map(fm: FaceMap, f: Face, ins: Insertion) -> FaceMap:
    g = ins.gadget
    base = fm.entries[f].iso
    out = fm.shifted(ins.new_col, ins.new_row)
    del out.entries[f]
    new_cell = step(f.cell, f.direction)
    cells = fm.cells | {new_cell}
    # local frame -> old paper: the anchor square lands on s
    ar, ac = g.anchor
    to_old = translation((2 * (ins.col - ac), 2 * (ins.row - ar), 0))
    from_new = translation((-2 * ins.col, -2 * ins.row, 0))
    for d in DIRECTIONS:
        nb = step(new_cell, d)
        if nb in fm.cells:
            out.entries.pop(Face(nb, _flip(d)), None)
    for (lr, lc), iso in g.face_squares.items():
        world = base @ to_old @ iso @ from_new
        r, cc = ins.row + lr, ins.col + lc
        face = face_from_placement(world, r, cc)
        if face is None or face.cell != new_cell:
            raise GadgetError(f"gadget square {(lr, lc)} does not land on the new cube")
        if step(new_cell, face.direction) in fm.cells:
            continue
        out.entries[face] = FaceEntry(r, cc, world)
    return FaceMap(cells, out.entries, out.seamed, out.reversed_faces, out.folded_over)


def _flip(d: str) -> str:
    return ("-" if d[0] == "+" else "+") + d[1]
