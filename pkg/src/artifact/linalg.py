"""Division-free 3x3 linear algebra over a FieldSpec.

Matrices are row-major tuples of nine field elements, vectors are 3-tuples.
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec

Vec = tuple
Mat = tuple


def identity(F: FieldSpec) -> Mat:
    z, o = F.zero, F.one
    return (o, z, z, z, o, z, z, z, o)


def mat_mul(A: Mat, B: Mat) -> Mat:
    out = []
    for i in range(3):
        a0, a1, a2 = A[3 * i], A[3 * i + 1], A[3 * i + 2]
        for j in range(3):
            out.append(a0 * B[j] + a1 * B[3 + j] + a2 * B[6 + j])
    return tuple(out)


def mat_vec(A: Mat, x: Vec) -> Vec:
    return tuple(A[3 * i] * x[0] + A[3 * i + 1] * x[1] + A[3 * i + 2] * x[2] for i in range(3))


def transpose(A: Mat) -> Mat:
    return (A[0], A[3], A[6], A[1], A[4], A[7], A[2], A[5], A[8])


def mat_sub(A: Mat, B: Mat) -> Mat:
    return tuple(a - b for a, b in zip(A, B))


def mat_add(A: Mat, B: Mat) -> Mat:
    return tuple(a + b for a, b in zip(A, B))


def det3(A: Mat) -> FieldElement:
    return (
        A[0] * (A[4] * A[8] - A[5] * A[7])
        - A[1] * (A[3] * A[8] - A[5] * A[6])
        + A[2] * (A[3] * A[7] - A[4] * A[6])
    )


def rows(A: Mat) -> list[Vec]:
    return [A[0:3], A[3:6], A[6:9]]


def cols(A: Mat) -> list[Vec]:
    return [(A[j], A[3 + j], A[6 + j]) for j in range(3)]


def cross(u: Vec, v: Vec) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Vec, v: Vec) -> FieldElement:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def is_zero_vec(u: Vec) -> bool:
    return all(x.is_zero() for x in u)


def scale(c, u: Vec) -> Vec:
    return tuple(c * x for x in u)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def rank3(A: Mat) -> int:
    if all(x.is_zero() for x in A):
        return 0
    if not det3(A).is_zero():
        return 3
    r = rows(A)
    for i in range(3):
        for j in range(i + 1, 3):
            if not is_zero_vec(cross(r[i], r[j])):
                return 2
    return 1


def kernel_rank2(A: Mat) -> Vec:
    """Spanning vector of the kernel of a rank-2 matrix."""
    r = rows(A)
    for i in range(3):
        for j in range(i + 1, 3):
            c = cross(r[i], r[j])
            if not is_zero_vec(c):
                return c
    raise ValueError("matrix does not have rank 2")


def nonzero_column(A: Mat) -> Vec:
    for c in cols(A):
        if not is_zero_vec(c):
            return c
    raise ValueError("zero matrix")


def parallel(u: Vec, v: Vec) -> bool:
    return is_zero_vec(cross(u, v))


def inverse(A: Mat) -> Mat:
    d = det3(A)
    adj = (
        A[4] * A[8] - A[5] * A[7],
        A[2] * A[7] - A[1] * A[8],
        A[1] * A[5] - A[2] * A[4],
        A[5] * A[6] - A[3] * A[8],
        A[0] * A[8] - A[2] * A[6],
        A[2] * A[3] - A[0] * A[5],
        A[3] * A[7] - A[4] * A[6],
        A[1] * A[6] - A[0] * A[7],
        A[0] * A[4] - A[1] * A[3],
    )
    inv = d.inverse()
    return tuple(x * inv for x in adj)


def primitive(u: Vec) -> Vec:
    """Rescale by a positive rational so the vector has small integer data (for display/caching)."""
    import math

    dens = [x.den for x in u]
    L = math.lcm(*dens)
    nums = [c * (L // x.den) for x in u for c in x.num]
    g = math.gcd(*nums) if any(nums) else 1
    if g == 0:
        return u
    return tuple(x * L / g for x in u)
