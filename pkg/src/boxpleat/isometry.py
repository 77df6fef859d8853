"""Exact rigid motions on the doubled integer lattice.

Every point is an integer triple in doubled coordinates (one paper unit is two
steps).  Rotations are signed permutation matrices, so composition never
leaves the integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Vec3 = tuple[int, int, int]
Matrix3 = tuple[Vec3, Vec3, Vec3]

_EYE: Matrix3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class NonLatticeFold(ValueError):
    """A fold whose rotation is not a signed axis permutation (e.g. 90 deg about a diagonal)."""


def mat_mul(a: Matrix3, b: Matrix3) -> Matrix3:
    (b00, b01, b02), (b10, b11, b12), (b20, b21, b22) = b
    r0, r1, r2 = a
    return (
        (r0[0] * b00 + r0[1] * b10 + r0[2] * b20, r0[0] * b01 + r0[1] * b11 + r0[2] * b21,
         r0[0] * b02 + r0[1] * b12 + r0[2] * b22),
        (r1[0] * b00 + r1[1] * b10 + r1[2] * b20, r1[0] * b01 + r1[1] * b11 + r1[2] * b21,
         r1[0] * b02 + r1[1] * b12 + r1[2] * b22),
        (r2[0] * b00 + r2[1] * b10 + r2[2] * b20, r2[0] * b01 + r2[1] * b11 + r2[2] * b21,
         r2[0] * b02 + r2[1] * b12 + r2[2] * b22),
    )


def mat_vec(m: Matrix3, v: Vec3) -> Vec3:
    return (
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    )


def transpose(m: Matrix3) -> Matrix3:
    return tuple(tuple(m[c][r] for c in range(3)) for r in range(3))  # type: ignore[return-value]


def det3(m: Matrix3) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def is_signed_permutation(m: Matrix3) -> bool:
    for row in m:
        if sorted(abs(x) for x in row) != [0, 0, 1]:
            return False
    for c in range(3):
        if sorted(abs(m[r][c]) for r in range(3)) != [0, 0, 1]:
            return False
    return True


@dataclass(frozen=True, order=True)
class Isometry:
    """``p -> rotation @ p + translation`` with integer entries (doubled coordinates)."""

    rotation: Matrix3 = _EYE
    translation: Vec3 = (0, 0, 0)

    def __post_init__(self) -> None:
        if not is_signed_permutation(self.rotation):
            raise NonLatticeFold(f"rotation is not a signed permutation: {self.rotation}")

    def apply(self, p: Vec3) -> Vec3:
        x, y, z = mat_vec(self.rotation, p)
        tx, ty, tz = self.translation
        return (x + tx, y + ty, z + tz)

    def apply2(self, u: int, v: int) -> Vec3:
        """Image of the paper point ``(u, v, 0)``."""
        return self.apply((u, v, 0))

    def linear(self, v: Vec3) -> Vec3:
        return mat_vec(self.rotation, v)

    def __matmul__(self, other: Isometry) -> Isometry:
        """Composition ``self ∘ other`` (apply ``other`` first)."""
        rot = mat_mul(self.rotation, other.rotation)
        return _trusted(rot, self.apply(other.translation))

    def inverse(self) -> Isometry:
        rt = transpose(self.rotation)
        x, y, z = mat_vec(rt, self.translation)
        return _trusted(rt, (-x, -y, -z))

    @property
    def normal(self) -> Vec3:
        """Where the paper's top side (+z) ends up pointing."""
        return self.linear((0, 0, 1))

    @property
    def proper(self) -> bool:
        return det3(self.rotation) == 1


IDENTITY = Isometry()


def _trusted(rotation: Matrix3, translation: Vec3) -> Isometry:
    # products and inverses of signed permutations need no re-check
    iso = object.__new__(Isometry)
    object.__setattr__(iso, "rotation", rotation)
    object.__setattr__(iso, "translation", translation)
    return iso


def translation(t: Vec3) -> Isometry:
    return Isometry(_EYE, t)


def _cross(a: Vec3, b: Vec3) -> Vec3:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _rodrigues(axis: Vec3, cos: int, sin: int) -> Matrix3:
    """Rotation about a unit axis-aligned ``axis`` by the angle with given cos/sin."""
    rows = []
    for basis in _EYE:
        dot = sum(a * b for a, b in zip(axis, basis))
        cr = _cross(axis, basis)
        rows.append(tuple(cos * basis[k] + sin * cr[k] + (1 - cos) * dot * axis[k] for k in range(3)))
    # rows holds images of basis vectors; the matrix has them as columns
    return transpose(tuple(rows))  # type: ignore[arg-type]


_COS_SIN = {0: (1, 0), 90: (0, 1), -90: (0, -1), 180: (-1, 0), -180: (-1, 0)}


@lru_cache(maxsize=65536)
def crease_rotation(a: tuple[int, int], b: tuple[int, int], far: tuple[int, int], angle: int) -> Isometry:
    """Rotation of paper space about the crease line ``a``-``b`` by ``angle`` degrees.

    ``far`` is any paper point strictly on the side being folded.  A positive
    (mountain) angle sends that side toward ``-z``.
    """
    if angle == 0:
        return IDENTITY
    du, dv = b[0] - a[0], b[1] - a[1]
    diagonal = du != 0 and dv != 0
    if abs(angle) == 180:
        if diagonal:
            s = 1 if du * dv > 0 else -1
            rot: Matrix3 = ((0, s, 0), (s, 0, 0), (0, 0, -1))
        elif du != 0:
            rot = ((1, 0, 0), (0, -1, 0), (0, 0, -1))
        else:
            rot = ((-1, 0, 0), (0, 1, 0), (0, 0, -1))
    else:
        if diagonal:
            raise NonLatticeFold(f"{angle} deg fold about diagonal crease {a}-{b}")
        axis: Vec3 = (1 if du > 0 else -1 if du < 0 else 0, 1 if dv > 0 else -1 if dv < 0 else 0, 0)
        # in-plane direction from the crease toward the folded side
        side = (far[0] - a[0]) * dv - (far[1] - a[1]) * du
        n_far: Vec3 = (dv, -du, 0) if side > 0 else (-dv, du, 0)
        n_far = tuple(1 if c > 0 else -1 if c < 0 else 0 for c in n_far)  # type: ignore[assignment]
        cz = _cross(axis, n_far)[2]
        cos, sin = _COS_SIN[angle]
        # positive angle must send n_far to -z
        rot = _rodrigues(axis, cos, -cz * sin)
    ax, ay = a
    rx, ry, rz = mat_vec(rot, (ax, ay, 0))
    return Isometry(rot, (ax - rx, ay - ry, -rz))


def angle_between(a: tuple[int, int], b: tuple[int, int], far: tuple[int, int], rel: Isometry) -> int | None:
    """Fold angle ``t`` with ``crease_rotation(a, b, far, t) == rel``, or None.

    180 is reported for a half turn (its sign is a layer-order matter).
    """
    for t in (0, 90, -90, 180):
        try:
            if crease_rotation(a, b, far, t) == rel:
                return t
        except NonLatticeFold:
            continue
    return None
