"""Search for a 5x3 tetrakis crease pattern folding to a unit cube on a pleated sheet.

Development tool (run from this directory): the resulting table is frozen
into ``boxpleat.gadgets`` by ``freeze_gadget.py``.
Each tetrakis triangle gets a lattice placement; constraints are edge
continuity, landing on the cube surface, pinned seamless faces, and the
block border following the accordion/half pleat maps of the insertion step.
"""
from __future__ import annotations

import itertools
import sys

from boxpleat.isometry import Isometry, angle_between, crease_rotation, det3
from boxpleat.pattern import FoldMap1D, triangle_vertices, triangles, edge_adjacency, CreasePattern

W, H = 5, 3
PX = FoldMap1D.zigzag(2, 0, 2, 2, 2, 2)
PY = FoldMap1D.zigzag(2, 0, 2, 1, 2, 2)
CUBE_LO = (4, 2, 0)
FACES = []  # (axis, coord, lo_a, lo_b)
for axis in range(3):
    for off in (0, 2):
        lo = list(CUBE_LO)
        c = lo[axis] + off
        a, b = [k for k in range(3) if k != axis]
        FACES.append((axis, c, lo[a], lo[b]))

ROTS = []
for perm in itertools.permutations(range(3)):
    for signs in itertools.product((1, -1), repeat=3):
        m = [[0] * 3 for _ in range(3)]
        for r in range(3):
            m[r][perm[r]] = signs[r]
        m = tuple(tuple(r) for r in m)
        if det3(m) == 1:
            ROTS.append(m)


def candidates(t):
    verts = [(u, v, 0) for u, v in triangle_vertices(t)]
    out = []
    for R in ROTS:
        iso0 = Isometry(R, (0, 0, 0))
        rv = [iso0.apply(p) for p in verts]
        for axis, c, la, lb in FACES:
            if len({p[axis] for p in rv}) != 1:
                continue
            a, b = [k for k in range(3) if k != axis]
            ta_rng = range(la - min(p[a] for p in rv), la + 2 - max(p[a] for p in rv) + 1)
            tb_rng = range(lb - min(p[b] for p in rv), lb + 2 - max(p[b] for p in rv) + 1)
            for ta in ta_rng:
                for tb in tb_rng:
                    tr = [0, 0, 0]
                    tr[axis] = c - rv[0][axis]
                    tr[a], tr[b] = ta, tb
                    out.append(Isometry(R, tuple(tr)))
    return out


def border_ok(t, iso):
    """Edges on the block border must follow the pleat maps."""
    vs = triangle_vertices(t)
    for p, q in itertools.combinations(vs, 2):
        on = (p[0] == q[0] and p[0] in (0, 2 * W)) or (p[1] == q[1] and p[1] in (0, 2 * H))
        if on:
            for r in (p, q):
                want = (PX(r[0]) + 4, PY(r[1]) + 2, 0)
                if iso.apply2(*r) != want:
                    return False
    return True


def pinned():
    top = Isometry(((1, 0, 0), (0, 1, 0), (0, 0, 1)), (0, 0, 2))
    pins = {}
    sq = {(2, 1): top}
    # walls: mountain 90 from top along each edge of the centre square
    sq[(3, 1)] = top @ crease_rotation((6, 2), (6, 4), (7, 3), 90)
    sq[(1, 1)] = top @ crease_rotation((4, 2), (4, 4), (3, 3), 90)
    sq[(2, 2)] = top @ crease_rotation((4, 4), (6, 4), (5, 5), 90)
    sq[(2, 0)] = top @ crease_rotation((4, 2), (6, 2), (5, 1), 90)
    for (col, row), iso in sq.items():
        for k in range(8):
            pins[(col, row, k)] = iso
    return pins


def main(limit=200):
    tris = triangles(W, H)
    adj = edge_adjacency(W, H)
    nbrs = {t: [] for t in tris}
    for e, ts in adj.items():
        if len(ts) == 2:
            nbrs[ts[0]].append((ts[1], e))
            nbrs[ts[1]].append((ts[0], e))
    pins = pinned()
    dom = {}
    for t in tris:
        if t in pins:
            dom[t] = [pins[t]]
        else:
            dom[t] = [c for c in candidates(t) if border_ok(t, c)]
    for t in pins:
        assert border_ok(t, pins[t]), t

    def compat(t1, i1, t2, i2, e):
        return all(i1.apply2(*p) == i2.apply2(*p) for p in e)

    # arc consistency
    changed = True
    while changed:
        changed = False
        for t in tris:
            keep = [c for c in dom[t] if all(any(compat(t, c, t2, c2, e) for c2 in dom[t2]) for t2, e in nbrs[t])]
            if len(keep) != len(dom[t]):
                dom[t] = keep
                changed = True
    print("domain sizes", sorted(len(d) for d in dom.values())[-20:], file=sys.stderr)
    if any(not d for d in dom.values()):
        print("infeasible", file=sys.stderr)
        return []
    sols = []
    assign = {}

    def bottom_covered():
        from boxpleat.foldsim import _triangle_pieces
        cover = set()
        for t, iso in assign.items():
            pts = tuple(iso.apply2(*p) for p in triangle_vertices(t))
            key, pieces = _triangle_pieces(pts)
            if key == (2, 0, 2, 1):
                cover |= pieces
        return len(cover) == 16

    def rec():
        if len(sols) >= limit:
            return
        free = [t for t in tris if t not in assign]
        if not free:
            if bottom_covered():
                sols.append(dict(assign))
            return
        def opts(t):
            return [c for c in dom[t] if all(compat(t, c, t2, assign[t2], e) for t2, e in nbrs[t] if t2 in assign)]
        t = min(free, key=lambda t: (len(opts(t)), t))
        for c in opts(t):
            assign[t] = c
            rec()
            del assign[t]

    rec()
    return sols


def to_pattern(sol):
    adj = edge_adjacency(W, H)
    creases = {}
    for e, ts in adj.items():
        if len(ts) != 2:
            continue
        a, b = sol[ts[0]], sol[ts[1]]
        far = next(p for p in triangle_vertices(ts[1]) if p not in e)
        ang = angle_between(e[0], e[1], far, a.inverse() @ b)
        assert ang is not None
        if ang:
            creases[e] = ang
    return CreasePattern(W, H, creases)


if __name__ == "__main__":
    sols = main(int(sys.argv[1]) if len(sys.argv) > 1 else 50)
    print(len(sols), "solutions")
    pats = sorted((len(to_pattern(s).creases), i) for i, s in enumerate(sols))
    print(pats[:10])
