import pytest
from hypothesis import given, settings, strategies as st

from boxpleat.gadgets import cube_gadget
from boxpleat.pattern import (
    AngleConflict,
    CreaseCrossesCut,
    CreasePattern,
    FoldMap1D,
    PatternError,
    delete_band,
    edge_adjacency,
    insert_band,
    is_tetrakis_edge,
    overlay,
    reflect_band_creases,
    split_segment,
    triangle_at,
    triangle_vertices,
    triangles,
    validate_tetrakis,
)

EMPTY = CreasePattern(5, 3)


def test_empty_is_valid():
    assert validate_tetrakis(EMPTY).ok


def test_diagonal_parity():
    assert validate_tetrakis(CreasePattern(1, 1, {((0, 0), (1, 1)): 180})).ok
    rep = validate_tetrakis(CreasePattern(2, 2, {((1, 0), (2, 1)): 180}))
    assert not rep.ok
    assert rep.offending[0][0] == ((1, 0), (2, 1))


def test_validate_flags_bad_angle_and_bounds():
    assert not validate_tetrakis(CreasePattern(2, 2, {((1, 1), (1, 2)): 45})).ok
    assert not validate_tetrakis(CreasePattern(1, 1, {((1, 2), (1, 3)): 90})).ok


def test_tetrakis_edge_count():
    # each unit square: 4 centre spokes to corners, 4 to edge midpoints; plus 8 half-edges on its border
    edges = edge_adjacency(3, 2)
    assert all(is_tetrakis_edge(*e) for e in edges)
    interior = sum(1 for ts in edges.values() if len(ts) == 2)
    boundary = sum(1 for ts in edges.values() if len(ts) == 1)
    assert boundary == 2 * 2 * (3 + 2)
    assert interior + boundary == len(edges)


def test_from_creases_splits_long_segments():
    c = CreasePattern.from_creases(2, 2, [((0, 2), (4, 2), 180)])
    assert len(c) == 4
    assert split_segment((0, 0), (2, 2)) == [((0, 0), (1, 1)), ((1, 1), (2, 2))]
    with pytest.raises(PatternError):
        split_segment((0, 0), (2, 1))


def test_triangle_roundtrip():
    for t in triangles(2, 2):
        assert triangle_at(*triangle_vertices(t)) == t


def test_insert_columns_into_empty():
    c, remap = insert_band(EMPTY, "column", 0, 2)
    assert (c.width, c.height, len(c)) == (7, 3, 0)
    assert remap(0) == 2


def test_insert_shifts_crease():
    c = CreasePattern(5, 3, {((4, 0), (4, 1)): 90})
    out, _ = insert_band(c, "column", 1, 2)
    assert out.creases == {((8, 0), (8, 1)): 90}


def test_insert_through_crease_line():
    c = CreasePattern.from_creases(5, 3, [((0, 3), (10, 3), 180)])
    with pytest.raises(CreaseCrossesCut):
        insert_band(c, "column", 2, 1)
    # a crease ending exactly on the cut is fine
    d = CreasePattern.from_creases(5, 3, [((0, 3), (4, 3), 180)])
    assert insert_band(d, "column", 2, 1)[0].creases == d.creases


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.integers(1, 3), st.sampled_from(["row", "column"]))
def test_insert_delete_roundtrip(at, count, axis):
    g = cube_gadget().pattern
    extent = g.width if axis == "column" else g.height
    at = min(at, extent)
    # the gadget is full of crease lines, so cut only at the borders
    at = 0 if at < extent / 2 else extent
    out, _ = insert_band(g, axis, at, count)
    assert delete_band(out, axis, at, count) == g


def test_overlay_identities():
    g = cube_gadget().pattern
    assert overlay(EMPTY, CreasePattern(1, 1)) == EMPTY
    once = overlay(EMPTY, g, (0, 0))
    assert once == g
    assert overlay(once, g, (0, 0)) == g


def test_overlay_conflict():
    a = CreasePattern(2, 2, {((1, 1), (1, 2)): 90})
    b = CreasePattern(2, 2, {((1, 1), (1, 2)): -90})
    with pytest.raises(AngleConflict) as info:
        overlay(a, b)
    assert (info.value.old, info.value.new) == (90, -90)


def test_zigzag_maps():
    f = FoldMap1D.zigzag(10, 4, 2, 2, 2, 2)
    assert [f(x) for x in range(0, 19, 2)] == [0, 2, 4, 6, 4, 6, 4, 6, 8, 10]
    assert f.kinks() == [6, 8, 10, 12]
    h = FoldMap1D.zigzag(6, 2, 2, 1, 2, 2)
    assert [h(x) for x in range(0, 11)] == [0, 1, 2, 3, 2, 3, 4, 3, 4, 5, 6]
    with pytest.raises(PatternError):
        FoldMap1D.zigzag(6, 2, 2, 1, 1, 2)


@given(st.integers(1, 6), st.integers(0, 5), st.sampled_from([1, 2]), st.integers(0, 2), st.integers(0, 2))
def test_zigzag_is_continuous_and_onto(n, src, unit, b, a):
    src = min(src, n - 1)
    f = FoldMap1D.zigzag(2 * n, 2 * src, 2, unit, 2 * b, 2 * a)
    assert f.lo == 0 and f.hi == 2 * n + 2 * (b + a) * unit
    xs = range(f.lo, f.hi + 1)
    assert all(abs(f(x + 1) - f(x)) == 1 for x in xs[:-1])
    assert {f(x) for x in xs} == set(range(0, 2 * n + 1))


def test_reflect_blank_source():
    c, _ = reflect_band_creases(EMPTY, "row", 1, 1, 1, piece=1)
    assert (c.width, c.height) == (5, 5)
    # only the pleat lines themselves
    assert {a[1] for a, b in c.creases} | {b[1] for a, b in c.creases} <= {3, 4, 6, 7}
    assert all(a[1] == b[1] for a, b in c.creases)


def test_reflect_vertical_crease_in_source_row():
    c = CreasePattern.from_creases(5, 3, [((4, 2), (4, 4), 90)])
    out, _ = reflect_band_creases(c, "row", 1, 1, 1, piece=1)
    vertical = {a[1]: ang for (a, b), ang in out.creases.items() if a[0] == b[0] == 4}
    # mirrored layers swap mountain and valley
    assert vertical == {2: 90, 3: -90, 4: 90, 5: 90, 6: -90, 7: 90}
