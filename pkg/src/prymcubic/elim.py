"""Resultant of three ternary quadrics via Macaulay's construction, and the
plane-cubic smoothness test built on it (the degree-12 discriminant-type
invariant as the resultant of the three partial derivatives).
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from . import linalg
from .poly import HomogPoly, PolyError

W3 = ("w0", "w1", "w2")

_DEG4 = sorted({tuple(sorted_exps) for sorted_exps in (
    _e for _e in (
        tuple(m.count(i) for i in range(3))
        for m in combinations_with_replacement(range(3), 4)
    )
)}, reverse=True)

_DEG2 = [tuple(m.count(i) for i in range(3))
         for m in combinations_with_replacement(range(3), 2)]


def _macaulay_rows(quadrics):
    """Row data (monomial index, shifted quadric) of the 15x15 Macaulay matrix."""
    field = quadrics[0].field
    rows = []
    for mono in _DEG4:
        # smallest i with w_i^2 dividing the monomial picks the block
        for i in range(3):
            if mono[i] >= 2:
                block = i
                break
        shift = list(mono)
        shift[block] -= 2
        shifted = {}
        for e, c in quadrics[block].terms.items():
            ne = tuple(a + b for a, b in zip(e, shift))
            shifted[ne] = c
        rows.append((mono, block, shifted))
    idx = {m: k for k, m in enumerate(_DEG4)}
    mat = []
    for mono, block, shifted in rows:
        row = [field.zero()] * 15
        for e, c in shifted.items():
            row[idx[e]] = c
        mat.append(row)
    return mat, idx


_NON_REDUCED = [(2, 2, 0), (2, 0, 2), (0, 2, 2)]

_SHEARS = [
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 1), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
    ((1, 0, 1), (0, 1, 1), (0, 0, 1)),
    ((1, 0, 2), (0, 1, 1), (0, 0, 1)),
    ((1, 1, 1), (0, 1, 2), (0, 0, 1)),
    ((1, 0, 3), (0, 1, 2), (1, 0, 1)),
    ((1, 2, 1), (1, 1, 0), (0, 1, 1)),
    ((2, 1, 3), (1, 3, 2), (3, 2, 1)),
    ((1, 4, 2), (0, 1, 5), (2, 0, 1)),
]


def _apply_linear(f, T):
    field = f.field
    images = []
    for j in range(3):
        images.append(HomogPoly.linear(field, f.vars, [field.element(T[i][j]) for i in range(3)]))
    return f.substitute(tuple(images))


def resultant3_quadrics(quadrics):
    """Macaulay resultant of three ternary quadrics, zero iff they share a
    projective zero over the algebraic closure.

    The numerator/denominator determinant ratio is computed in sheared
    coordinates when the denominator minor degenerates; vanishing is
    coordinate-independent so only the zero/nonzero answer is exposed.
    """
    if len(quadrics) != 3 or any(q.degree != 2 or len(q.vars) != 3 for q in quadrics):
        raise PolyError("need three ternary quadrics")
    field = quadrics[0].field
    for T in _SHEARS:
        qs = [_apply_linear(q, T) for q in quadrics]
        mat, idx = _macaulay_rows(qs)
        bad = [idx[m] for m in _NON_REDUCED]
        minor = [[mat[i][j] for j in bad] for i in bad]
        dden = linalg.det(minor)
        if not dden:
            continue
        dnum = linalg.det(mat)
        return dnum / dden
    raise PolyError("no usable coordinate frame for the Macaulay resultant")


def plane_cubic_is_smooth(cubic):
    """Jacobian-criterion smoothness of a plane cubic over the closure.

    Computed exactly as nonvanishing of the resultant of the three partials;
    valid away from characteristic three.
    """
    if cubic.degree != 3 or len(cubic.vars) != 3:
        raise PolyError("need a ternary cubic")
    if cubic.field.characteristic() == 3:
        raise PolyError("characteristic three not supported here")
    if not cubic:
        return False
    return bool(resultant3_quadrics(list(cubic.gradient())))
