from collections import deque
from fractions import Fraction

import pytest

from boxpleat import foldsim
from boxpleat.construct import base_state, fold_rect_seam
from boxpleat.gadgets import cube_gadget
from boxpleat.isometry import IDENTITY, translation
from boxpleat.pattern import CreasePattern, edge_adjacency, triangles
from boxpleat.polycube import Face, Polycube


def flood_fill_regions(c):
    """Count uncreased regions by BFS over tetrakis triangles."""
    adj = edge_adjacency(c.width, c.height)
    nbrs = {t: [] for t in triangles(c.width, c.height)}
    for e, ts in adj.items():
        if len(ts) == 2 and e not in c.creases:
            nbrs[ts[0]].append(ts[1])
            nbrs[ts[1]].append(ts[0])
    seen, regions = set(), 0
    for t in nbrs:
        if t in seen:
            continue
        regions += 1
        queue = deque([t])
        seen.add(t)
        while queue:
            for s in nbrs[queue.popleft()]:
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
    return regions


def test_subdivide_empty():
    faces, _ = foldsim.subdivide(CreasePattern(5, 3))
    assert len(faces) == 1 and faces[0].area == 15
    assert len(faces[0].polygon()) == 4


def test_subdivide_one_crease():
    c = CreasePattern.from_creases(2, 2, [((0, 2), (4, 2), 180)])
    faces, _ = foldsim.subdivide(c)
    assert sorted(f.area for f in faces) == [2, 2]


def test_subdivide_gadget_matches_flood_fill():
    g = cube_gadget().pattern
    faces, _ = foldsim.subdivide(g)
    assert len(faces) == flood_fill_regions(g)
    assert sum(f.area for f in faces) == 15


def test_flat_sheet():
    fs = foldsim.evaluate(CreasePattern(5, 3))
    assert set(fs.placements.values()) == {IDENTITY}
    acc = foldsim.layer_accounting(fs)
    assert len(acc) == 15 and set(acc.values()) == {1}


def test_single_half_fold():
    c = CreasePattern.from_creases(2, 1, [((2, 0), (2, 2), 180)])
    fs = foldsim.evaluate(c)
    assert foldsim.layer_accounting(fs) == {(2, 0, 0, 0): Fraction(2)}


def test_lone_quarter_fold_does_not_close():
    c = CreasePattern.from_creases(2, 2, [((2, 0), (2, 2), 90)])
    with pytest.raises(foldsim.InconsistentAssignment) as info:
        foldsim.evaluate(c)
    assert info.value.edge is not None


@pytest.mark.parametrize("pattern", [cube_gadget().pattern, fold_rect_seam(Polycube.of([(0, 0, 0), (1, 0, 0)])).pattern],
                         ids=["gadget", "domino"])
def test_path_independence(pattern):
    bfs = foldsim.evaluate(pattern, "bfs")
    dfs = foldsim.evaluate(pattern, "dfs")
    raw = foldsim.evaluate(pattern, raw=True)
    for t in bfs.owner:
        assert bfs.triangle_placement(t) == dfs.triangle_placement(t) == raw.triangle_placement(t)
    assert foldsim.check_loop_closure(bfs) == []


def test_loop_closure_detects_tampering():
    fs = foldsim.evaluate(cube_gadget().pattern)
    fs.placements[1] = translation((0, 0, 2)) @ fs.placements[1]
    assert foldsim.check_loop_closure(fs)


def test_verify_unit_cube():
    g = Face((0, 0, 0), "-z")
    c, fm = base_state(g)
    rep = foldsim.verify(foldsim.evaluate(c), Polycube.of([(0, 0, 0)]), fm, "rect_seam")
    assert rep.ok, rep.details
    assert rep.seamed_faces == [g]
    assert sum(1 for s in rep.seam_census.values() if s == "seamless") == 5


def test_verify_rejects_wrong_polycube():
    c, fm = base_state(Face((0, 0, 0), "-z"))
    rep = foldsim.verify(foldsim.evaluate(c), Polycube.of([(0, 0, 0), (1, 0, 0)]), fm, "rect_seam")
    assert not rep.coverage_ok and not rep.ok


def test_tower_diameter():
    tower = Polycube.of([(0, 0, 0), (0, 0, 1), (0, 0, 2)])
    res = fold_rect_seam(tower)
    fs = foldsim.evaluate(res.pattern)
    folded = foldsim.folded_diameter_sq(fs)
    assert folded <= foldsim.flat_diameter_sq(res.pattern)
    # doubled units: the tower is 3 long, so its diameter is at least 6 steps
    assert folded >= 6 ** 2
