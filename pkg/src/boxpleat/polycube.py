"""Polycubes: parsing, dual graphs, build plans and target surfaces."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

log = logging.getLogger(__name__)

Cell = tuple[int, int, int]

# neighbour visiting order for the spanning tree
DIRECTIONS = ("-x", "+x", "-y", "+y", "-z", "+z")
_VEC = {
    "-x": (-1, 0, 0),
    "+x": (1, 0, 0),
    "-y": (0, -1, 0),
    "+y": (0, 1, 0),
    "-z": (0, 0, -1),
    "+z": (0, 0, 1),
}
_OPPOSITE = {"-x": "+x", "+x": "-x", "-y": "+y", "+y": "-y", "-z": "+z", "+z": "-z"}


class PolycubeError(ValueError):
    pass


class PolycubeSyntaxError(PolycubeError):
    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: expected three integers, got {line!r}")
        self.lineno = lineno


class EmptyInput(PolycubeError):
    pass


class Disconnected(PolycubeError):
    def __init__(self, a: Cell, b: Cell):
        super().__init__(f"polycube is not face-connected: {a} cannot reach {b}")
        self.components = (a, b)


class FaceNotOnPolycube(PolycubeError):
    pass


class FaceInterior(PolycubeError):
    pass


def step(c: Cell, direction: str) -> Cell:
    d = _VEC[direction]
    return (c[0] + d[0], c[1] + d[1], c[2] + d[2])


class Face(NamedTuple):
    """One side of a unit cube: ``cell`` plus an axis direction like ``"+x"``."""

    cell: Cell
    direction: str

    @property
    def axis(self) -> int:
        return "xyz".index(self.direction[1])

    @property
    def sign(self) -> int:
        return 1 if self.direction[0] == "+" else -1

    @property
    def outward(self) -> tuple[int, int, int]:
        return _VEC[self.direction]

    def square(self) -> tuple[int, int, int, int]:
        """Lattice square ``(axis, plane, lo_a, lo_b)`` in paper units."""
        k = self.axis
        plane = self.cell[k] + (1 if self.sign > 0 else 0)
        a, b = [i for i in range(3) if i != k]
        return (k, plane, self.cell[a], self.cell[b])

    def flipped(self) -> Face:
        return Face(step(self.cell, self.direction), _OPPOSITE[self.direction])

    def canonical(self) -> Face:
        """Shared squares are keyed to the smaller cell with a positive direction."""
        if self.sign < 0:
            return self.flipped()
        return self


def parse_face(text: str) -> Face:
    """Parse ``"x y z dir"`` such as ``"0 0 0 -z"``."""
    parts = text.replace(",", " ").split()
    if len(parts) != 4 or parts[3] not in _VEC:
        raise PolycubeError(f"bad face spec {text!r}; expected 'x y z +x|-x|+y|-y|+z|-z'")
    try:
        cell = tuple(int(p) for p in parts[:3])
    except ValueError:
        raise PolycubeError(f"bad face spec {text!r}") from None
    return Face(cell, parts[3])  # type: ignore[arg-type]


@dataclass(frozen=True)
class Polycube:
    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        if not self.cells:
            raise EmptyInput("polycube has no cells")
        comp = _component(self.cells, min(self.cells))
        if len(comp) != len(self.cells):
            other = min(self.cells - comp)
            raise Disconnected(min(self.cells), other)

    @classmethod
    def of(cls, cells) -> Polycube:
        return cls(frozenset(tuple(int(v) for v in c) for c in cells))

    @property
    def n(self) -> int:
        return len(self.cells)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def is_boundary(self, f: Face) -> bool:
        return f.cell in self.cells and step(f.cell, f.direction) not in self.cells

    def default_seam_face(self) -> Face:
        for c in self.sorted_cells():
            f = Face(c, "-z")
            if self.is_boundary(f):
                return f
        raise AssertionError("a finite polycube always has an exposed -z face")


def _component(cells, start: Cell) -> set[Cell]:
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for d in DIRECTIONS:
            nb = step(c, d)
            if nb in cells and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen


def parse_polycube(text: str) -> Polycube:
    cells: list[Cell] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise PolycubeSyntaxError(lineno, raw)
        try:
            cells.append((int(parts[0]), int(parts[1]), int(parts[2])))
        except ValueError:
            raise PolycubeSyntaxError(lineno, raw) from None
    if not cells:
        raise EmptyInput("no cells in input")
    unique = set(cells)
    if len(unique) != len(cells):
        log.warning("ignoring %d duplicate cell(s)", len(cells) - len(unique))
    return Polycube(frozenset(unique))


def format_polycube(p: Polycube) -> str:
    return "".join(f"{x} {y} {z}\n" for x, y, z in p.sorted_cells())


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[Cell, ...]
    edges: tuple[tuple[Cell, Cell], ...]


def dual_graph(p: Polycube) -> DualGraph:
    edges = []
    for c in p.sorted_cells():
        for d in ("+x", "+y", "+z"):
            nb = step(c, d)
            if nb in p.cells:
                edges.append((c, nb))
    return DualGraph(tuple(p.sorted_cells()), tuple(sorted(edges)))


@dataclass(frozen=True)
class BuildStep:
    cell: Cell
    attach: Face | None  # face of an earlier cell that this cube grows from


@dataclass(frozen=True)
class BuildPlan:
    base: Cell
    seam: Face
    insertion_order: tuple[BuildStep, ...]


def build_plan(p: Polycube, g: Face) -> BuildPlan:
    """Insertion order for the inductive construction.

    Spanning tree: BFS from the seam cube, neighbours in ``DIRECTIONS`` order.
    Cubes are peeled off as the lexicographically largest leaf other than the
    base; the insertion order is the reverse.
    """
    if g.cell not in p.cells:
        raise FaceNotOnPolycube(f"{g} does not belong to the polycube")
    if not p.is_boundary(g):
        raise FaceInterior(f"{g} is shared by two cubes")
    base = g.cell
    parent: dict[Cell, tuple[Cell, str] | None] = {base: None}
    queue = deque([base])
    while queue:
        c = queue.popleft()
        for d in DIRECTIONS:
            nb = step(c, d)
            if nb in p.cells and nb not in parent:
                parent[nb] = (c, d)
                queue.append(nb)
    children: dict[Cell, set[Cell]] = {c: set() for c in p.cells}
    for c, pd in parent.items():
        if pd is not None:
            children[pd[0]].add(c)
    remaining = set(p.cells)
    removal: list[Cell] = []
    while len(remaining) > 1:
        leaves = [c for c in remaining if c != base and not (children[c] & remaining)]
        leaf = max(leaves)
        removal.append(leaf)
        remaining.remove(leaf)
    steps = [BuildStep(base, None)]
    for c in reversed(removal):
        t, d = parent[c]  # type: ignore[misc]
        steps.append(BuildStep(c, Face(t, d)))
    return BuildPlan(base, g, tuple(steps))


def boundary_faces(cells) -> set[Face]:
    out = set()
    for c in cells:
        for d in DIRECTIONS:
            if step(c, d) not in cells:
                out.add(Face(c, d))
    return out


def surface_and_interior(p: Polycube) -> tuple[set[Face], set[Face]]:
    faces = boundary_faces(p.cells)
    interior = {Face(c, d) for c in p.cells for d in ("+x", "+y", "+z") if step(c, d) in p.cells}
    return faces, interior


def target_squares(p: Polycube) -> set[tuple[int, int, int, int]]:
    faces, interior = surface_and_interior(p)
    return {f.square() for f in faces | interior}
