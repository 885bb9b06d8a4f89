"""Scalar quadratic-form utilities shared by the symmetroid classifier, the
genus-3 constructions and the tritangent machinery: congruence
diagonalization and exact factorization of rank <= 2 symmetric forms into
linear forms (with at most one quadratic extension for the square root).
"""

from __future__ import annotations

from . import linalg
from .poly import HomogPoly


def congruence_diagonalize(mat, field):
    """P with P^T M P diagonal; returns (P, diagonal entries).

    Needs characteristic != 2 for the off-diagonal pivot trick.
    """
    n = mat.n
    m = [row[:] for row in mat.rows()]
    p = linalg.identity(n, field)

    def add_col(dst, src, c):
        for r in range(n):
            m[r][dst] = m[r][dst] + m[r][src] * c
        for r in range(n):
            p[r][dst] = p[r][dst] + p[r][src] * c

    def add_row(dst, src, c):
        for r in range(n):
            m[dst][r] = m[dst][r] + m[src][r] * c

    def swap(i, j):
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        if not m[k][k]:
            pivot = None
            for i in range(k, n):
                if m[i][i]:
                    pivot = i
                    break
            if pivot is not None:
                swap(k, pivot)
            else:
                found = False
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if m[i][j]:
                            add_col(i, j, field.one())
                            add_row(i, j, field.one())
                            if i != k:
                                swap(k, i)
                            found = True
                            break
                    if found:
                        break
                if not found:
                    break
        if not m[k][k]:
            continue
        inv = m[k][k].inverse()
        for j in range(k + 1, n):
            if m[k][j]:
                c = -m[k][j] * inv
                add_col(j, k, c)
                add_row(j, k, c)
    return p, [m[i][i] for i in range(n)]


class PlanePair:
    """Factorization data of a rank <= 2 symmetric form.

    kind is 'pair' (two distinct linear forms with form = h1*h2),
    'double' (form = scalar * h1^2) or 'zero'.
    """

    __slots__ = ("kind", "h1", "h2", "scalar", "extended")

    def __init__(self, kind, h1=None, h2=None, scalar=None, extended=False):
        self.kind = kind
        self.h1 = h1
        self.h2 = h2
        self.scalar = scalar
        self.extended = extended


def factor_rank_le2(mat, field, vars, allow_extension=True):
    """Split the form of a rank <= 2 symmetric scalar matrix into linear forms.

    Returns a PlanePair, or None when rank > 2 or the needed square root is
    out of reach (nonsquare over a field already carrying an extension, or
    extensions disabled).
    """
    p, diag = congruence_diagonalize(mat, field)
    support = [i for i, d in enumerate(diag) if d]
    if len(support) > 2:
        return None
    pinv = linalg.inverse(p, field)

    def coord_form(i, f=field, rows=None):
        rows = pinv if rows is None else rows
        return HomogPoly.linear(f, vars, rows[i])

    if not support:
        return PlanePair("zero")
    if len(support) == 1:
        i = support[0]
        return PlanePair("double", coord_form(i), None, diag[i])
    i, j = support
    target = -diag[j] / diag[i]
    r = field.sqrt(target)
    work = field
    extended = False
    if r is None:
        if not allow_extension or field.kind == "QuadExt":
            return None
        work = field.quadratic_extension(target)
        r = work.sqrt_d()
        extended = True
    if extended:
        rows = [[work.element(x) for x in row] for row in pinv]
        yi = HomogPoly.linear(work, vars, rows[i])
        yj = HomogPoly.linear(work, vars, rows[j])
        di = work.element(diag[i])
    else:
        yi = coord_form(i)
        yj = coord_form(j)
        di = diag[i]
    h1 = (yi + yj * r) * di
    h2 = yi - yj * r
    return PlanePair("pair", h1, h2, None, extended)


def conic_contains_line(conic_matrix, line, field, vars):
    """If line | conic form, return the cofactor line; else None.

    Solved as a linear system on the cofactor's coefficients, no division.
    """
    n = conic_matrix.n
    lc = [line.terms.get(tuple(1 if k == i else 0 for k in range(n)), field.zero())
          for i in range(n)]
    # unknown cofactor g: M = (l g^T + g l^T)/2, giving linear conditions
    rows = []
    rhs = []
    for i in range(n):
        for j in range(i, n):
            row = [field.zero()] * n
            row[j] = row[j] + lc[i] / 2
            row[i] = row[i] + lc[j] / 2
            rows.append(row)
            rhs.append(conic_matrix.at(i, j))
    sol = linalg.solve(rows, rhs, field)
    if sol is None:
        return None
    return HomogPoly.linear(field, vars, sol)
