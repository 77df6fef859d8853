"""Print the frozen cube-gadget table for ``boxpleat.gadgets``.

Runs the constraint search, keeps the smallest solution that is symmetric
under both mirror axes, assigns signs to half-turn creases (outer layer keeps
its top side facing out of the cube), and emits the creases, the placements
of the five visible face squares, and the fold angle of every block-border
edge relative to the flat pleat continuation.
"""
from __future__ import annotations

from collections import deque

from boxpleat.isometry import Isometry, angle_between
from boxpleat.pattern import edge_adjacency, triangle_vertices, triangles

import search_gadget as sg

W, H = sg.W, sg.H
FACE_SQUARES = [(2, 1), (1, 1), (3, 1), (2, 2), (2, 0)]


def outward(iso_pts):
    axis = next(k for k in range(3) if len({p[k] for p in iso_pts}) == 1)
    lo, hi = sg.CUBE_LO[axis], sg.CUBE_LO[axis] + 2
    v = [0, 0, 0]
    v[axis] = 1 if iso_pts[0][axis] == hi else -1
    return tuple(v)


def faces_out(t, iso):
    pts = [iso.apply2(*p) for p in triangle_vertices(t)]
    n = outward(pts)
    return sum(a * b for a, b in zip(n, iso.normal)) > 0


def continuation(e, far):
    """Flat pleat placement of the triangle just outside the block border."""
    (u0, v0), (u1, v1) = e
    us, vs = (u0, u1, far[0]), (v0, v1, far[1])
    if max(us) <= 2 * W and min(us) >= 0:
        sx, ox = sg.PX.piece(min(us), max(us))
        ox += 4
    elif min(us) < 0:
        sx, ox = 1, 4
    else:
        sx, ox = 1, -4
    if max(vs) <= 2 * H and min(vs) >= 0:
        sy, oy = sg.PY.piece(min(vs), max(vs))
        oy += 2
    elif min(vs) < 0:
        sy, oy = 1, 2
    else:
        sy, oy = 1, -2
    return Isometry(((sx, 0, 0), (0, sy, 0), (0, 0, sx * sy)), (ox, oy, 0))


def main():
    sols = sg.main(50)
    ranked = sorted((len(sg.to_pattern(s).creases), i) for i, s in enumerate(sols))
    sol = sols[ranked[0][1]]
    pat = sg.to_pattern(sol)
    pins = sg.pinned()
    adj = edge_adjacency(W, H)
    dist = {t: 0 for t in pins}
    queue = deque(pins)
    nbrs = {t: [] for t in triangles(W, H)}
    for e, ts in adj.items():
        if len(ts) == 2:
            nbrs[ts[0]].append(ts[1])
            nbrs[ts[1]].append(ts[0])
    while queue:
        t = queue.popleft()
        for s in nbrs[t]:
            if s not in dist:
                dist[s] = dist[t] + 1
                queue.append(s)
    creases = []
    for e, ang in sorted(pat.creases.items()):
        if abs(ang) == 180:
            a, b = adj[e]
            outer = min((a, b), key=lambda t: (dist[t], t))
            ang = 180 if faces_out(outer, sol[outer]) else -180
        creases.append((e[0], e[1], ang))
    print("CREASES = [")
    for a, b, ang in creases:
        print(f"    ({a}, {b}, {ang}),")
    print("]")
    print("FACE_SQUARES = {")
    for col, row in FACE_SQUARES:
        iso = sol[(col, row, 0)]
        print(f"    ({col}, {row}): ({iso.rotation}, {iso.translation}),")
    print("}")
    print("BORDER = {")
    for e, ts in sorted(adj.items()):
        if len(ts) != 1:
            continue
        (u0, v0), (u1, v1) = e
        if u0 == u1 and u0 in (0, 2 * W):
            far = (u0 - 1 if u0 == 0 else u0 + 1, min(v0, v1) + (1 if (min(v0, v1) + u0) % 2 == 0 else 0))
        else:
            far = (min(u0, u1) + (1 if (min(u0, u1) + v0) % 2 == 0 else 0), v0 - 1 if v0 == 0 else v0 + 1)
        t = ts[0]
        phi = continuation(e, far)
        c = angle_between(e[0], e[1], far, sol[t].inverse() @ phi)
        assert c is not None, e
        if c == 180:
            c = 180 if faces_out(t, sol[t]) else -180
        if c:
            print(f"    ({e[0]}, {e[1]}): {c},")
    print("}")


if __name__ == "__main__":
    main()
