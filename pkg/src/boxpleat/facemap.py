"""Bookkeeping of which paper square forms the outer layer of each cube face."""
from __future__ import annotations

from dataclasses import dataclass, field

from .isometry import Isometry, translation
from .pattern import CreasePattern
from .polycube import DIRECTIONS, Cell, Face, _VEC, boundary_faces


@dataclass(frozen=True)
class FaceEntry:
    row: int
    col: int
    # placement of that paper square in polycube coordinates (doubled units)
    iso: Isometry


@dataclass
class FaceMap:
    cells: frozenset[Cell]
    entries: dict[Face, FaceEntry] = field(default_factory=dict)
    seamed: Face | None = None
    # faces whose outer square shows the back of the paper (fold-over patches)
    reversed_faces: set[Face] = field(default_factory=set)
    # face covered by a folded-over strip instead of a gadget square
    folded_over: Face | None = None

    def square(self, f: Face) -> tuple[int, int]:
        e = self.entries[f]
        return e.row, e.col

    def face_at(self, row: int, col: int) -> Face | None:
        for f, e in self.entries.items():
            if (e.row, e.col) == (row, col):
                return f
        return None

    def health(self, c: CreasePattern) -> list[str]:
        """Problems with the map relative to pattern ``c`` (empty when healthy)."""
        problems = []
        want = boundary_faces(self.cells) - ({self.seamed} if self.seamed else set())
        have = set(self.entries)
        if want != have:
            problems.append(f"domain mismatch: missing {sorted(want - have)}, extra {sorted(have - want)}")
        seen: dict[tuple[int, int], Face] = {}
        for f, e in sorted(self.entries.items()):
            sq = (e.row, e.col)
            if sq in seen:
                problems.append(f"{f} and {seen[sq]} share square {sq}")
            seen[sq] = f
            if not (0 <= e.row < c.height and 0 <= e.col < c.width):
                problems.append(f"{f} maps outside the paper")
            elif not c.square_is_uncreased(e.row, e.col):
                problems.append(f"{f} maps to creased square {sq}")
            elif face_from_placement(e.iso, e.row, e.col) != f and f not in self.reversed_faces:
                problems.append(f"{f} placement lands elsewhere")
        return problems

    def shifted(self, col_map, row_map) -> FaceMap:
        """Re-index squares after bands were inserted into the paper."""
        out = {}
        for f, e in self.entries.items():
            r, c = row_map(e.row), col_map(e.col)
            iso = e.iso @ translation((2 * (e.col - c), 2 * (e.row - r), 0))
            out[f] = FaceEntry(r, c, iso)
        return FaceMap(self.cells, out, self.seamed, set(self.reversed_faces), self.folded_over)


def face_from_placement(iso: Isometry, row: int, col: int) -> Face | None:
    """The cube face that paper square (row, col) lands on with its top side out."""
    p = iso.apply2(2 * col + 1, 2 * row + 1)
    n = iso.normal
    centre = tuple(p[k] - n[k] for k in range(3))
    if any(v % 2 != 1 for v in centre):
        return None
    cell = tuple((v - 1) // 2 for v in centre)
    direction = next(d for d in DIRECTIONS if _VEC[d] == n)
    return Face(cell, direction)  # type: ignore[arg-type]
