"""Bounded tetrakis crease patterns with exact fold-angle assignments.

All geometry lives in doubled integer coordinates: a paper of ``width x height``
units spans ``[0, 2*width] x [0, 2*height]``.  Only nontrivial creases are
stored, always as minimal tetrakis edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

Point = tuple[int, int]
Edge = tuple[Point, Point]

ANGLES = (-180, -90, 90, 180)


class PatternError(ValueError):
    pass


class CreaseCrossesCut(PatternError):
    pass


class AngleConflict(PatternError):
    def __init__(self, edge: Edge, old: int, new: int):
        super().__init__(f"edge {edge}: conflicting angles {old} and {new}")
        self.edge, self.old, self.new = edge, old, new


def edge_key(a: Point, b: Point) -> Edge:
    return (a, b) if a < b else (b, a)


def is_tetrakis_edge(a: Point, b: Point) -> bool:
    du, dv = abs(b[0] - a[0]), abs(b[1] - a[1])
    if (du, dv) in ((1, 0), (0, 1)):
        return True
    if (du, dv) == (1, 1):
        pa = (a[0] % 2, a[1] % 2)
        pb = (b[0] % 2, b[1] % 2)
        return {pa, pb} == {(0, 0), (1, 1)}
    return False


def split_segment(a: Point, b: Point) -> list[Edge]:
    """Break a horizontal, vertical or 45-degree segment into minimal edges."""
    du, dv = b[0] - a[0], b[1] - a[1]
    n = max(abs(du), abs(dv))
    if n == 0 or (du and dv and abs(du) != abs(dv)):
        raise PatternError(f"segment {a}-{b} is not axis-parallel or diagonal")
    su, sv = (du > 0) - (du < 0), (dv > 0) - (dv < 0)
    pts = [(a[0] + k * su, a[1] + k * sv) for k in range(n + 1)]
    return [edge_key(p, q) for p, q in zip(pts, pts[1:])]


@dataclass
class ValidationReport:
    ok: bool
    offending: list[tuple[Edge, str]] = field(default_factory=list)


@dataclass(frozen=True)
class CreasePattern:
    """A ``width x height`` paper rectangle plus its nontrivial creases."""

    width: int
    height: int
    creases: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "creases", dict(sorted(self.creases.items())))

    # -- construction helpers -------------------------------------------------
    @classmethod
    def from_creases(cls, width: int, height: int, items: Iterable[tuple[Point, Point, int]]) -> CreasePattern:
        creases: dict[Edge, int] = {}
        for a, b, ang in items:
            for e in split_segment(a, b):
                _put(creases, e, ang)
        return cls(width, height, creases)

    def angle(self, a: Point, b: Point) -> int:
        return self.creases.get(edge_key(a, b), 0)

    def __iter__(self) -> Iterator[tuple[Edge, int]]:
        return iter(self.creases.items())

    def __len__(self) -> int:
        return len(self.creases)

    @property
    def extent(self) -> tuple[int, int]:
        return 2 * self.width, 2 * self.height

    def in_bounds(self, p: Point) -> bool:
        return 0 <= p[0] <= 2 * self.width and 0 <= p[1] <= 2 * self.height

    def square_is_uncreased(self, row: int, col: int) -> bool:
        """True when no nontrivial crease lies strictly inside unit square (row, col)."""
        creased = self.__dict__.get("_creased")
        if creased is None:
            creased = set()
            for a, b in self.creases:
                # an edge is inside a square unless it runs along a grid line of even coordinate
                if a[0] == b[0] and a[0] % 2 == 0 or a[1] == b[1] and a[1] % 2 == 0:
                    continue
                creased.add(((a[1] + b[1]) // 2 // 2, (a[0] + b[0]) // 2 // 2))
            object.__setattr__(self, "_creased", creased)
        return (row, col) not in creased

    def with_size(self, width: int, height: int) -> CreasePattern:
        return CreasePattern(width, height, self.creases)


def _put(creases: dict[Edge, int], e: Edge, ang: int) -> None:
    if ang == 0:
        return
    old = creases.get(e)
    if old is not None and old != ang:
        raise AngleConflict(e, old, ang)
    creases[e] = ang


def validate_tetrakis(c: CreasePattern) -> ValidationReport:
    bad: list[tuple[Edge, str]] = []
    for (a, b), ang in c.creases.items():
        if a == b or not a < b:
            bad.append(((a, b), "endpoints not canonical"))
        elif not is_tetrakis_edge(a, b):
            bad.append(((a, b), "not a minimal tetrakis edge"))
        elif not (c.in_bounds(a) and c.in_bounds(b)):
            bad.append(((a, b), "out of bounds"))
        elif ang not in ANGLES:
            bad.append(((a, b), f"angle {ang} not in {ANGLES}"))
        elif a[0] == b[0] and a[0] in (0, 2 * c.width) or a[1] == b[1] and a[1] in (0, 2 * c.height):
            bad.append(((a, b), "crease on the paper boundary"))
    return ValidationReport(not bad, bad)


def insert_band(c: CreasePattern, axis: str, at: int, count: int) -> tuple[CreasePattern, callable]:
    """Insert ``count`` blank unit rows/columns before index ``at``.

    Returns the new pattern and the index remapping for old rows/columns.
    Creases beyond the cut line (or lying on it) move by ``2*count``.
    """
    if axis not in ("row", "column"):
        raise PatternError(f"axis must be 'row' or 'column', got {axis!r}")
    extent = c.width if axis == "column" else c.height
    if not 0 <= at <= extent:
        raise PatternError(f"insertion index {at} outside 0..{extent}")
    k = 0 if axis == "column" else 1
    cut, shift = 2 * at, 2 * count
    # a crease line running straight through the cut would be torn apart
    arriving: dict[Point, set[Point]] = {}
    leaving: dict[Point, set[Point]] = {}
    for a, b in c.creases:
        for p, q in ((a, b), (b, a)):
            if p[k] == cut and q[k] != cut:
                d = (p[0] - q[0], p[1] - q[1]) if q[k] < cut else (q[0] - p[0], q[1] - p[1])
                (arriving if q[k] < cut else leaving).setdefault(p, set()).add(d)
    for p, dirs in arriving.items():
        if dirs & leaving.get(p, set()):
            raise CreaseCrossesCut(f"crease through {p} crosses the cut at {axis} {at}")
    out: dict[Edge, int] = {}
    for (a, b), ang in c.creases.items():
        # whole edges move; one lying on the cut line goes with the far side
        if max(a[k], b[k]) > cut or a[k] == b[k] == cut:
            a, b = _shift(a, k, cut, shift), _shift(b, k, cut, shift)
        out[edge_key(a, b)] = ang
    if axis == "column":
        res = CreasePattern(c.width + count, c.height, out)
    else:
        res = CreasePattern(c.width, c.height + count, out)

    def remap(index: int) -> int:
        return index + count if index >= at else index

    return res, remap


def _shift(p: Point, k: int, cut: int, shift: int) -> Point:
    if p[k] < cut:
        return p
    return (p[0] + shift, p[1]) if k == 0 else (p[0], p[1] + shift)


def delete_band(c: CreasePattern, axis: str, at: int, count: int) -> CreasePattern:
    """Inverse of :func:`insert_band` for an empty band."""
    k = 0 if axis == "column" else 1
    lo, hi = 2 * at, 2 * (at + count)
    out: dict[Edge, int] = {}
    for (a, b), ang in c.creases.items():
        if lo < max(a[k], b[k]) and min(a[k], b[k]) < hi or (a[k] == b[k] and lo < a[k] < hi):
            raise PatternError(f"band at {axis} {at} is not empty: {a}-{b}")
        a2 = _shift(a, k, hi, -(hi - lo))
        b2 = _shift(b, k, hi, -(hi - lo))
        out[edge_key(a2, b2)] = ang
    if axis == "column":
        return CreasePattern(c.width - count, c.height, out)
    return CreasePattern(c.width, c.height - count, out)


def overlay(c: CreasePattern, fragment: CreasePattern, offset: Point = (0, 0)) -> CreasePattern:
    du, dv = offset
    if du < 0 or dv < 0 or du + 2 * fragment.width > 2 * c.width or dv + 2 * fragment.height > 2 * c.height:
        raise PatternError(f"fragment {fragment.width}x{fragment.height} at {offset} leaves the paper")
    out = dict(c.creases)
    for (a, b), ang in fragment.creases.items():
        _put(out, edge_key((a[0] + du, a[1] + dv), (b[0] + du, b[1] + dv)), ang)
    return CreasePattern(c.width, c.height, out)


# -- tetrakis triangles ------------------------------------------------------

Triangle = tuple[int, int, int]  # (col, row, k): k-th of the 8 triangles in a unit square
_RING = ((0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1))


@lru_cache(maxsize=None)
def triangle_vertices(t: Triangle) -> tuple[Point, Point, Point]:
    col, row, k = t
    u0, v0 = 2 * col, 2 * row
    a, b = _RING[k], _RING[(k + 1) % 8]
    return (u0 + 1, v0 + 1), (u0 + a[0], v0 + a[1]), (u0 + b[0], v0 + b[1])


def triangles(width: int, height: int, cols: range | None = None, rows: range | None = None) -> list[Triangle]:
    cols = cols if cols is not None else range(width)
    rows = rows if rows is not None else range(height)
    return [(c, r, k) for r in rows for c in cols for k in range(8)]


def triangle_edges(t: Triangle) -> list[Edge]:
    p, q, r = triangle_vertices(t)
    return [edge_key(p, q), edge_key(q, r), edge_key(p, r)]


@lru_cache(maxsize=64)
def edge_adjacency(width: int, height: int) -> dict[Edge, list[Triangle]]:
    adj: dict[Edge, list[Triangle]] = {}
    for t in triangles(width, height):
        for e in triangle_edges(t):
            adj.setdefault(e, []).append(t)
    return adj


@lru_cache(maxsize=None)
def triangle_at(p: Point, q: Point, r: Point) -> Triangle:
    """Identify the tetrakis triangle with the given vertex set."""
    center = next(v for v in (p, q, r) if v[0] % 2 == 1 and v[1] % 2 == 1)
    col, row = (center[0] - 1) // 2, (center[1] - 1) // 2
    ring = {(v[0] - 2 * col, v[1] - 2 * row) for v in (p, q, r) if v != center}
    for k in range(8):
        if {_RING[k], _RING[(k + 1) % 8]} == ring:
            return (col, row, k)
    raise PatternError(f"{p},{q},{r} is not a tetrakis triangle")


# -- pleats and crease reflection ---------------------------------------------


class FoldMap1D:
    """A piecewise isometric fold of one axis of the paper.

    ``pieces`` holds ``(lo, hi, sign, offset)`` in doubled coordinates, sending
    ``x in [lo, hi]`` to ``sign * x + offset``.  Neighbouring pieces with
    opposite signs meet at a kink, which becomes a 180-degree pleat crease.
    """

    def __init__(self, pieces: list[tuple[int, int, int, int]]):
        self.pieces = sorted(pieces)
        for (lo0, hi0, s0, o0), (lo1, _, s1, o1) in zip(self.pieces, self.pieces[1:]):
            if hi0 != lo1 or s0 * hi0 + o0 != s1 * lo1 + o1:
                raise PatternError(f"fold map is not continuous at {hi0}")

    @classmethod
    def identity(cls, extent: int) -> FoldMap1D:
        return cls([(0, extent, 1, 0)])

    @classmethod
    def zigzag(cls, extent: int, start: int, length: int, unit: int, before: int, after: int) -> FoldMap1D:
        """Accordion pleats folding inserted material back onto ``[start, start+length]``.

        ``before`` and ``after`` pieces of length ``unit`` (both even counts)
        are inserted on either side of the source interval of the old axis
        ``[0, extent]``.  The result maps the enlarged axis onto the old one.
        """
        if before % 2 or after % 2:
            raise PatternError("pleats need an even number of pieces on each side")
        src0 = start + before * unit
        # breakpoints of the new axis with their images
        pts: list[tuple[int, int]] = [(0, 0)] if start > 0 else []
        for p in range(before + 1):
            x = start + p * unit
            pts.append((x, start if (before - p) % 2 == 0 else start + unit))
        end = start + length
        for p in range(after + 1):
            x = src0 + length + p * unit
            pts.append((x, end if p % 2 == 0 else end - unit))
        total = (before + after) * unit
        if end < extent:
            pts.append((extent + total, extent))
        pieces = []
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 == x1:
                continue
            s = (y1 - y0) // (x1 - x0)
            pieces.append((x0, x1, s, y0 - s * x0))
        return cls(pieces)

    @property
    def lo(self) -> int:
        return self.pieces[0][0]

    @property
    def hi(self) -> int:
        return self.pieces[-1][1]

    def kinks(self) -> list[int]:
        return [hi for (_, hi, s0, _), (_, _, s1, _) in zip(self.pieces, self.pieces[1:]) if s0 != s1]

    def piece(self, lo: int, hi: int) -> tuple[int, int]:
        """(sign, offset) of the piece containing ``[lo, hi]``."""
        for plo, phi, s, o in self.pieces:
            if plo <= lo and hi <= phi:
                return s, o
        raise PatternError(f"interval [{lo}, {hi}] straddles a kink")

    def __call__(self, x: int) -> int:
        for plo, phi, s, o in self.pieces:
            if plo <= x <= phi:
                return s * x + o
        raise PatternError(f"{x} outside fold map domain")


def _map_triangle(t: Triangle, fx: FoldMap1D, fy: FoldMap1D) -> tuple[Triangle, int]:
    verts = triangle_vertices(t)
    us = [v[0] for v in verts]
    vs = [v[1] for v in verts]
    sx, ox = fx.piece(min(us), max(us))
    sy, oy = fy.piece(min(vs), max(vs))
    img = [(sx * u + ox, sy * v + oy) for u, v in verts]
    return triangle_at(*img), sx * sy


def pullback(
    old: CreasePattern,
    width: int,
    height: int,
    fx: FoldMap1D,
    fy: FoldMap1D,
    kink_angles: Mapping[tuple[str, int], int],
    skip: tuple[int, int, int, int] | None = None,
) -> CreasePattern:
    """Creases of a ``width x height`` sheet that pleats flat onto ``old``.

    The sheet folds onto ``old`` by ``(fx, fy)``; every crease of ``old`` is
    mirrored into each layer (mountain/valley swapped on reversed layers) and
    kink lines become pleat creases with angles ``kink_angles[("x"|"y", c)]``.
    Edges touching the interior of ``skip = (u0, v0, u1, v1)`` are left out,
    as are edges on its border.
    """
    out: dict[Edge, int] = {}
    images: dict[Triangle, tuple[Triangle, int]] = {}

    def image(t):
        if t not in images:
            images[t] = _map_triangle(t, fx, fy)
        return images[t]

    for e, tris in edge_adjacency(width, height).items():
        if len(tris) < 2:
            continue
        if skip is not None and all(skip[0] <= p[0] <= skip[2] and skip[1] <= p[1] <= skip[3] for p in e):
            continue
        (t1, s1), (t2, _) = image(tris[0]), image(tris[1])
        if t1 == t2:
            axis = "x" if e[0][0] == e[1][0] else "y"
            ang = kink_angles[(axis, e[0][0] if axis == "x" else e[0][1])]
        else:
            shared = set(triangle_vertices(t1)) & set(triangle_vertices(t2))
            a, b = sorted(shared)
            ang = s1 * old.angle(a, b)
        if ang:
            out[e] = ang
    return CreasePattern(width, height, out)


def reflect_band_creases(
    c: CreasePattern,
    axis: str,
    source: int,
    before: int,
    after: int,
    kink_angles: Mapping[int, int] | None = None,
    piece: int = 2,
) -> tuple[CreasePattern, FoldMap1D]:
    """Insert pleated bands around unit row/column ``source`` and mirror its creases into them.

    ``before`` unit bands go below/left of the source and ``after`` above/right.
    Inserted bands pleat back onto the source, so each source crease appears
    mirrored in every band, with mountain and valley swapped on reversed
    layers.  Pleat lines default to alternating +180/-180 starting from the
    source's own edges.  ``piece`` is the pleat piece length in doubled
    units: 2 gives unit accordion folds, 1 gives half-unit pleats (needed to
    hide a single inserted unit).  Returns the new pattern and the fold map.
    """
    if axis not in ("row", "column"):
        raise PatternError(f"axis must be 'row' or 'column', got {axis!r}")
    extent = 2 * (c.width if axis == "column" else c.height)
    if (2 * before) % piece or (2 * after) % piece:
        raise PatternError(f"band widths {before}/{after} not divisible into pleat pieces of {piece}")
    fold = FoldMap1D.zigzag(extent, 2 * source, 2, piece, 2 * before // piece, 2 * after // piece)
    kinks = default_kink_angles(fold, 2 * (source + before), 2 * (source + before + 1))
    if kink_angles:
        kinks.update(kink_angles)
    if axis == "column":
        new = pullback(c, c.width + before + after, c.height, fold, FoldMap1D.identity(2 * c.height),
                       {("x", k): a for k, a in kinks.items()})
    else:
        new = pullback(c, c.width, c.height + before + after, FoldMap1D.identity(2 * c.width), fold,
                       {("y", k): a for k, a in kinks.items()})
    return new, fold


def default_kink_angles(fold: FoldMap1D, src_lo: int, src_hi: int) -> dict[int, int]:
    """Pleat angles: +180 on the kinks bounding the source, alternating outward.

    The pleat layers then tuck behind the source band's top side.
    """
    out: dict[int, int] = {}
    below = sorted((k for k in fold.kinks() if k <= src_lo), reverse=True)
    above = sorted(k for k in fold.kinks() if k >= src_hi)
    for seq in (below, above):
        for n, k in enumerate(seq):
            out[k] = 180 if n % 2 == 0 else -180
    return out
