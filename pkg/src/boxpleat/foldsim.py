"""Exact folded-state evaluation and verification.

A crease pattern is cut into maximal uncreased regions; each region gets a
lattice isometry by walking across creases from the bottom-left corner.  All
arithmetic is integer (doubled coordinates), so agreement checks are exact.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .facemap import FaceMap, face_from_placement
from .isometry import IDENTITY, Isometry, NonLatticeFold, crease_rotation
from .pattern import (
    CreasePattern,
    Edge,
    Point,
    Triangle,
    edge_adjacency,
    triangle_vertices,
    triangles,
)
from .polycube import Face, Polycube, boundary_faces, target_squares

# (plane axis 0/1/2, plane coordinate, lower corner along the other two axes) in paper units
SquareKey = tuple[int, int, int, int]


class InconsistentAssignment(ValueError):
    """Two crease paths disagree on a face placement (a vertex fails to close)."""

    def __init__(self, message: str, face: int, edge: Edge | None = None):
        super().__init__(message)
        self.face = face
        self.edge = edge


@dataclass
class SubdivisionFace:
    id: int
    triangles: list[Triangle]
    neighbors: list[tuple[int, Edge]] = field(default_factory=list)

    @property
    def area(self) -> Fraction:
        return Fraction(len(self.triangles), 8)

    def polygon(self) -> list[Point] | None:
        """Outline as a closed vertex loop, or None if the region is not a simple disc."""
        count: dict[Edge, int] = {}
        for t in self.triangles:
            p, q, r = triangle_vertices(t)
            for a, b in ((p, q), (q, r), (r, p)):
                k = (a, b) if a < b else (b, a)
                count[k] = count.get(k, 0) + 1
        # orient boundary edges counter-clockwise using triangle winding
        nxt: dict[Point, Point] = {}
        for t in self.triangles:
            p, q, r = _ccw(triangle_vertices(t))
            for a, b in ((p, q), (q, r), (r, p)):
                k = (a, b) if a < b else (b, a)
                if count[k] == 1:
                    if a in nxt:
                        return None
                    nxt[a] = b
        start = min(nxt)
        loop = [start]
        cur = nxt[start]
        while cur != start:
            loop.append(cur)
            cur = nxt[cur]
            if len(loop) > len(nxt):
                return None
        if len(loop) != len(nxt):
            return None
        return _drop_collinear(loop)


def _ccw(tri: tuple[Point, Point, Point]) -> tuple[Point, Point, Point]:
    p, q, r = tri
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (p, q, r) if cross > 0 else (p, r, q)


def _drop_collinear(loop: list[Point]) -> list[Point]:
    out = []
    n = len(loop)
    for i, p in enumerate(loop):
        a, b = loop[i - 1], loop[(i + 1) % n]
        if (p[0] - a[0]) * (b[1] - p[1]) != (p[1] - a[1]) * (b[0] - p[0]):
            out.append(p)
    return out


def subdivide(c: CreasePattern) -> tuple[list[SubdivisionFace], dict[Triangle, int]]:
    """Merge tetrakis triangles across trivial edges into maximal faces."""
    tris = triangles(c.width, c.height)
    parent = {t: t for t in tris}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    adj = edge_adjacency(c.width, c.height)
    for e, ts in adj.items():
        if len(ts) == 2 and e not in c.creases:
            ra, rb = find(ts[0]), find(ts[1])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(t) for t in tris})
    index = {r: i for i, r in enumerate(roots)}
    faces = [SubdivisionFace(i, []) for i in range(len(roots))]
    owner: dict[Triangle, int] = {}
    for t in tris:
        f = index[find(t)]
        faces[f].triangles.append(t)
        owner[t] = f
    for e in c.creases:
        ts = adj.get(e, [])
        if len(ts) == 2:
            fa, fb = owner[ts[0]], owner[ts[1]]
            faces[fa].neighbors.append((fb, e))
            if fb != fa:
                faces[fb].neighbors.append((fa, e))
    return faces, owner


@dataclass
class FoldedState:
    pattern: CreasePattern
    faces: list[SubdivisionFace]
    owner: dict[Triangle, int]
    placements: dict[int, Isometry]

    def triangle_placement(self, t: Triangle) -> Isometry:
        return self.placements[self.owner[t]]

    def square_placement(self, row: int, col: int) -> Isometry:
        return self.triangle_placement((col, row, 0))

    def placed_triangles(self):
        for t, f in self.owner.items():
            iso = self.placements[f]
            yield t, tuple(iso.apply2(*p) for p in triangle_vertices(t))

    @property
    def covered(self) -> dict[SquareKey, Fraction]:
        return layer_accounting(self)


def _far_point(t: Triangle, e: Edge) -> Point:
    return next(p for p in triangle_vertices(t) if p not in e)


def evaluate(c: CreasePattern, order: str = "bfs", raw: bool = False) -> FoldedState:
    """Place every face of ``c`` in 3D by composing crease rotations.

    ``order`` chooses breadth-first ("bfs") or depth-first ("dfs", reversed
    neighbour order) traversal; results must not depend on it.  ``raw``
    skips face merging so every tetrakis triangle is placed separately.
    """
    if raw:
        tris = triangles(c.width, c.height)
        faces = [SubdivisionFace(i, [t]) for i, t in enumerate(tris)]
        owner = {t: i for i, t in enumerate(tris)}
        for e, ts in edge_adjacency(c.width, c.height).items():
            if len(ts) == 2:
                a, b = owner[ts[0]], owner[ts[1]]
                faces[a].neighbors.append((b, e))
                faces[b].neighbors.append((a, e))
    else:
        faces, owner = subdivide(c)
    adj = edge_adjacency(c.width, c.height)

    def side_triangle(face: int, e: Edge) -> Triangle:
        return next(t for t in adj[e] if owner[t] == face)

    start = owner[(0, 0, 0)]
    placements: dict[int, Isometry] = {start: IDENTITY}
    frontier: deque[int] = deque([start])
    while frontier:
        fa = frontier.popleft() if order == "bfs" else frontier.pop()
        nbrs = faces[fa].neighbors if order == "bfs" else list(reversed(faces[fa].neighbors))
        for fb, e in nbrs:
            ang = c.creases.get(e, 0)
            if fb == fa:
                raise InconsistentAssignment(f"crease {e} ({ang}) has the same face on both sides", fa, e)
            far = _far_point(side_triangle(fb, e), e)
            try:
                rel = crease_rotation(e[0], e[1], far, ang)
            except NonLatticeFold as exc:
                raise InconsistentAssignment(str(exc), fb, e) from exc
            pb = placements[fa] @ rel
            if fb in placements:
                if placements[fb] != pb:
                    raise InconsistentAssignment(
                        f"face {fb} reached with two placements via crease {e}", fb, e
                    )
            else:
                placements[fb] = pb
                frontier.append(fb)
    if len(placements) != len(faces):
        raise InconsistentAssignment("paper is disconnected", min(set(range(len(faces))) - set(placements)))
    return FoldedState(c, faces, owner, placements)


# -- coverage ----------------------------------------------------------------


def _triangle_pieces(pts) -> tuple[SquareKey | None, set[int]]:
    """Lattice square of a placed tetrakis triangle and the 2 of its 16 sub-pieces it covers.

    Returns ``(None, ...)`` when the triangle does not lie in a lattice plane.
    """
    axis = next((k for k in range(3) if pts[0][k] == pts[1][k] == pts[2][k]), None)
    if axis is None or pts[0][axis] % 2:
        return None, set()
    a, b = [k for k in range(3) if k != axis]
    us = [p[a] for p in pts]
    vs = [p[b] for p in pts]
    hu, hv = min(us), min(vs)
    key = (axis, pts[0][axis] // 2, hu // 2, hv // 2)
    # right-angle corner: the vertex shared by both legs
    corner = next(
        p for p in pts if sum(1 for q in pts if q is not p and (q[a] == p[a] or q[b] == p[b])) == 2
    )
    cu, cv = corner[a] - hu, corner[b] - hv
    half = (hu % 2) + 2 * (hv % 2)
    # sides of the half cell: 0 bottom, 1 right, 2 top, 3 left
    sides = {(0, 0): (0, 3), (1, 0): (0, 1), (1, 1): (1, 2), (0, 1): (2, 3)}[(cu, cv)]
    return key, {4 * half + s for s in sides}


def piece_coverage(fs: FoldedState) -> tuple[dict[SquareKey, list[int]], int]:
    """Per lattice square, how many layers cover each of its 16 sub-pieces."""
    cover: dict[SquareKey, list[int]] = {}
    off = 0
    for _, pts in fs.placed_triangles():
        key, pieces = _triangle_pieces(pts)
        if key is None:
            off += 1
            continue
        slot = cover.setdefault(key, [0] * 16)
        for p in pieces:
            slot[p] += 1
    return cover, off


def layer_accounting(fs: FoldedState) -> dict[SquareKey, Fraction]:
    """Area-weighted layer multiplicity of every touched lattice square."""
    cover, _ = piece_coverage(fs)
    return {k: Fraction(sum(v), 16) for k, v in sorted(cover.items())}


def folded_diameter_sq(fs: FoldedState) -> int:
    """Squared diameter (doubled units) of the folded vertex set."""
    pts = set()
    for _, tri in fs.placed_triangles():
        pts.update(tri)
    pts = sorted(pts)
    best = 0
    for p, q in combinations(pts, 2):
        d = sum((x - y) ** 2 for x, y in zip(p, q))
        best = max(best, d)
    return best


def flat_diameter_sq(c: CreasePattern) -> int:
    return (2 * c.width) ** 2 + (2 * c.height) ** 2


# -- verification against a polycube -----------------------------------------


@dataclass
class VerificationReport:
    coverage_ok: bool
    loop_closure_ok: bool
    seam_census: dict[Face, str]
    seam_census_ok: bool
    one_sided_ok: bool
    diameter_ok: bool
    details: list[str] = field(default_factory=list)
    max_layers: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.coverage_ok
            and self.loop_closure_ok
            and self.seam_census_ok
            and self.one_sided_ok
            and self.diameter_ok
        )

    @property
    def seamed_faces(self) -> list[Face]:
        return sorted(f for f, s in self.seam_census.items() if s == "seamed")


def alignment(fs: FoldedState, fm: FaceMap) -> Isometry:
    """Rigid motion taking the evaluator's frame to polycube coordinates.

    Derived from the first face-map entry; every other entry is checked
    against it by ``verify``.
    """
    if not fm.entries:
        return IDENTITY
    f = min(fm.entries)
    e = fm.entries[f]
    return e.iso @ fs.square_placement(e.row, e.col).inverse()


def check_loop_closure(fs: FoldedState) -> list[str]:
    """Every edge of the tetrakis grid must hinge its two sides by its own fold angle."""
    c = fs.pattern
    bad = []
    for e, ts in edge_adjacency(c.width, c.height).items():
        if len(ts) != 2:
            continue
        a, b = fs.triangle_placement(ts[0]), fs.triangle_placement(ts[1])
        far = _far_point(ts[1], e)
        try:
            rel = crease_rotation(e[0], e[1], far, c.creases.get(e, 0))
        except NonLatticeFold:
            bad.append(f"edge {e}: non-lattice fold")
            continue
        if a @ rel != b:
            bad.append(f"edge {e}: sides disagree with angle {c.creases.get(e, 0)}")
    return bad


def verify(fs: FoldedState, p: Polycube, fm: FaceMap, mode: str = "rect_seam") -> VerificationReport:
    details: list[str] = []
    c = fs.pattern
    align = alignment(fs, fm)
    aligned = FoldedState(c, fs.faces, fs.owner, {k: align @ v for k, v in fs.placements.items()})

    cover, off = piece_coverage(aligned)
    target = target_squares(p)
    coverage_ok = off == 0 and set(cover) == target and all(min(v) >= 1 for v in cover.values())
    if off:
        details.append(f"{off} triangles off the lattice")
    if set(cover) - target:
        details.append(f"covers squares outside the polycube: {sorted(set(cover) - target)[:5]}")
    if target - set(cover):
        details.append(f"misses target squares: {sorted(target - set(cover))[:5]}")
    holes = [k for k, v in cover.items() if min(v) == 0]
    if holes:
        details.append(f"partially covered squares: {sorted(holes)[:5]}")

    loops = check_loop_closure(fs)
    details.extend(loops[:5])

    census: dict[Face, str] = {}
    one_sided = True
    for f in sorted(boundary_faces(p.cells)):
        e = fm.entries.get(f)
        if e is None or not (0 <= e.row < c.height and 0 <= e.col < c.width):
            census[f] = "seamed"
            continue
        placed = aligned.square_placement(e.row, e.col)
        if not c.square_is_uncreased(e.row, e.col) or placed != e.iso:
            census[f] = "seamed"
            details.append(f"{f}: square ({e.row}, {e.col}) is not where the face map claims")
            continue
        if face_from_placement(placed, e.row, e.col) == f:
            census[f] = "seamless"
        elif _lands_reversed(placed, e.row, e.col, f):
            census[f] = "seamless"
            # fold-over patches necessarily show the back of the paper
            if f not in fm.reversed_faces:
                one_sided = False
                details.append(f"{f}: outer square shows the back of the paper")
        else:
            census[f] = "seamed"
            details.append(f"{f}: square ({e.row}, {e.col}) does not land on the face")
    seamed = {f for f, s in census.items() if s == "seamed"}
    expected = {fm.seamed} if mode == "rect_seam" and fm.seamed is not None else set()
    census_ok = seamed == expected
    if not census_ok:
        details.append(f"seamed faces {sorted(seamed)}, expected {sorted(expected)}")

    diameter_ok = folded_diameter_sq(fs) <= flat_diameter_sq(c)
    if not diameter_ok:
        details.append("folded diameter exceeds the flat diagonal")
    max_layers = max((max(v) for v in cover.values()), default=0)
    return VerificationReport(
        coverage_ok, not loops, census, census_ok, one_sided, diameter_ok, details, max_layers
    )


def _lands_reversed(iso: Isometry, row: int, col: int, f: Face) -> bool:
    """Square lies on face ``f`` but shows the back of the paper outward."""
    p = iso.apply2(2 * col + 1, 2 * row + 1)
    n = iso.normal
    out = f.outward
    if tuple(-x for x in n) != out:
        return False
    centre = tuple(p[k] - out[k] for k in range(3))
    return all(v % 2 == 1 for v in centre) and tuple((v - 1) // 2 for v in centre) == f.cell
