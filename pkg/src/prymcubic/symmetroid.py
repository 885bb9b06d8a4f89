"""Cubic symmetroids presented by a 3x3 symmetric matrix of linear forms in
four variables: determinant cubic, the cubic adjugation map, the quadric
Gauss-map vector, rank-one locus and type classification, Hankel and
trace-form models of Cayley cubics, cone projection, and the three
double-cover minors.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from . import linalg
from .binforms import BinaryForm, multiplicity_partition
from .elim import plane_cubic_is_smooth
from .poly import HomogPoly, SymMatrix, proportional
from .quadrics import conic_contains_line, factor_rank_le2

X4 = ("x0", "x1", "x2", "x3")
Z3 = ("z0", "z1", "z2")
W3 = ("w0", "w1", "w2")

CONIC_MONOMIALS = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


class SymmetroidType:
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"
    T8 = "T8"
    DEGENERATE_CONE = "DegenerateCone"
    DEGENERATE_SINGULAR = "DegenerateSingular"
    REDUCIBLE_UNCLASSIFIED = "ReducibleUnclassified"


IRREDUCIBLE_TYPES = (SymmetroidType.T1, SymmetroidType.T2, SymmetroidType.T3,
                     SymmetroidType.T4, SymmetroidType.T5)

PARTITION_TO_TYPE = {
    (1, 1, 1, 1): SymmetroidType.T1,
    (2, 1, 1): SymmetroidType.T2,
    (3, 1): SymmetroidType.T3,
    (2, 2): SymmetroidType.T4,
}


class SymmetroidError(ValueError):
    pass


class RankOneScheme:
    """The locus of double-line conics inside the web, cut out by two conics
    in the plane of lines."""

    __slots__ = ("conics", "positive_dimensional", "partition", "common_line",
                 "residual_point")

    def __init__(self, conics, positive_dimensional, partition=None,
                 common_line=None, residual_point=None):
        self.conics = conics
        self.positive_dimensional = positive_dimensional
        self.partition = partition
        self.common_line = common_line
        self.residual_point = residual_point


class PlaneCubicWithSym:
    __slots__ = ("kept_indices", "cubic", "sym", "smooth")

    def __init__(self, kept_indices, cubic, sym, smooth):
        self.kept_indices = kept_indices
        self.cubic = cubic
        self.sym = sym
        self.smooth = smooth


class Symmetrization:
    """The tensor behind a cubic symmetroid: a symmetric 3x3 matrix of linear
    forms in four variables, equivalently four constant symmetric matrices."""

    def __init__(self, field, matrix, xvars=X4, zvars=Z3):
        self.field = field
        self.matrix = matrix
        self.xvars = tuple(xvars)
        self.zvars = tuple(zvars)
        for e in matrix.upper.values():
            if not isinstance(e, HomogPoly) or e.degree != 1 or len(e.vars) != 4:
                raise SymmetroidError("entries must be linear forms in four variables")
        self._qvec = None
        self._det = None

    @staticmethod
    def from_entry_rows(field, rows, xvars=X4, zvars=Z3):
        """rows[i][j] is a length-4 coefficient list of the (i,j) entry."""
        built = [[HomogPoly.linear(field, xvars, [field.element(c) for c in rows[i][j]])
                  for j in range(3)] for i in range(3)]
        return Symmetrization(field, SymMatrix.from_rows(built), xvars, zvars)

    @staticmethod
    def from_quadric_vector(field, mats, xvars=X4, zvars=Z3):
        """Rebuild the matrix of forms from four constant symmetric matrices."""
        rows = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                coeffs = [mats[k].at(i, j) for k in range(4)]
                rows[i][j] = HomogPoly.linear(field, xvars, coeffs)
        return Symmetrization(field, SymMatrix.from_rows(rows), xvars, zvars)

    def change_field(self, new_field):
        return Symmetrization(new_field, self.matrix.map(lambda f: f.change_field(new_field)),
                              self.xvars, self.zvars)

    # -- the two tensor views ------------------------------------------------

    def quadric_vector(self):
        """Four constant symmetric 3x3 matrices, one per x-coordinate."""
        if self._qvec is None:
            mats = []
            for k in range(4):
                e = tuple(1 if i == k else 0 for i in range(4))
                upper = {}
                for (i, j), f in self.matrix.upper.items():
                    upper[(i, j)] = f.terms.get(e, self.field.zero())
                mats.append(SymMatrix(3, upper))
            self._qvec = tuple(mats)
            # reconstructing the matrix from the vector must reproduce it
            back = Symmetrization.from_quadric_vector(self.field, mats, self.xvars, self.zvars)
            if not all((back.matrix.upper[k] == self.matrix.upper[k]) for k in self.matrix.upper):
                raise SymmetroidError("tensor views disagree")
        return self._qvec

    def gauss_quadrics(self):
        """The four quadratic forms in z read off the tensor; substituting
        them into a dual linear form recovers that form's conic."""
        return tuple(m.quadratic_form(self.field, self.zvars) for m in self.quadric_vector())

    def determinant_cubic(self):
        if self._det is None:
            self._det = self.matrix.det()
        return self._det

    def contraction_at(self, point):
        """Scalar 3x3 matrix of the conic attached to a point of P^3."""
        point = [self.field.element(c) for c in point]
        return self.matrix.map(lambda f: f.evaluate(point))

    def coefficient_matrix(self):
        """6x4 matrix: columns are the four quadrics in conic coordinates."""
        qv = self.quadric_vector()
        cols = []
        for m in qv:
            form = m.quadratic_form(self.field, self.zvars)
            cols.append([form.terms.get(mon, self.field.zero()) for mon in CONIC_MONOMIALS])
        return linalg.transpose(cols)

    def contraction_kernel(self):
        """Kernel of the web map on the dual 4-space; empty iff non-degenerate."""
        return linalg.kernel_basis(self.coefficient_matrix(), self.field)

    def is_degenerate(self):
        return bool(self.contraction_kernel())

    # -- adjugation ----------------------------------------------------------

    def line_contraction(self):
        """3x4 matrix B(z): column j is the matrix of quadric j applied to z."""
        qv = self.quadric_vector()
        b = [[None] * 4 for _ in range(3)]
        for j, m in enumerate(qv):
            for i in range(3):
                coeffs = [m.at(i, k) for k in range(3)]
                b[i][j] = HomogPoly.linear(self.field, self.zvars, coeffs)
        return b

    def adjugate_cubics(self):
        """Signed maximal minors of B(z): the cubic map from the plane into
        the symmetroid, annihilated by B(z) as an exact identity."""
        b = self.line_contraction()
        cubics = []
        for j in range(4):
            minor = [[b[i][k] for k in range(4) if k != j] for i in range(3)]
            d = linalg.det(minor)
            if j % 2 == 1:
                d = -d
            cubics.append(d)
        if not any(cubics):
            raise SymmetroidError("adjugation map vanishes identically")
        return tuple(cubics)

    def annihilation_holds(self):
        b = self.line_contraction()
        c = self.adjugate_cubics()
        for i in range(3):
            acc = HomogPoly.zero(self.field, self.zvars, 4)
            for j in range(4):
                acc = acc + b[i][j] * c[j]
            if acc:
                return False
        return True

    # -- double cover minors ---------------------------------------------------

    def double_cover_minors(self):
        """The three 2x2-minor discriminants whose square roots all cut out
        the same double cover; the certificate is the exact syzygy tying the
        first and last of them to the determinant."""
        a = self.matrix.at
        m12 = a(0, 1) * a(0, 1) - a(0, 0) * a(1, 1)
        m13 = a(0, 2) * a(0, 2) - a(0, 0) * a(2, 2)
        m23 = a(1, 2) * a(1, 2) - a(1, 1) * a(2, 2)
        cross = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)
        cert = (m12 * m23 - cross * cross == a(1, 1) * self.determinant_cubic())
        return m12, m13, m23, cert

    # -- rank-one locus and classification -------------------------------------

    def rank_one_functional_conics(self):
        """Two conics in the line plane cutting out the double-line locus.

        Functionals are the reduced-row-echelon complement of the web's
        column space, applied to the square of a variable line.
        """
        mat = self.coefficient_matrix()
        functionals = linalg.kernel_basis(linalg.transpose(mat), self.field)
        if len(functionals) != 2:
            raise SymmetroidError("rank-one scheme needs a non-degenerate web")
        conics = []
        for f in functionals:
            # coefficients of (w.z)^2 in conic coordinates:
            #   z_i^2 -> w_i^2, z_i z_j -> 2 w_i w_j
            terms = {}
            for coef, mon in zip(f, CONIC_MONOMIALS):
                if not coef:
                    continue
                exps = tuple(mon)
                scale = 1 if max(mon) == 2 else 2
                terms[exps] = coef * scale
            conics.append(HomogPoly(self.field, W3, 2, terms))
        return conics

    def rank_one_scheme(self):
        if self.is_degenerate():
            raise SymmetroidError("rank-one scheme is only computed for non-degenerate webs")
        k1, k2 = self.rank_one_functional_conics()
        common = _common_rational_line(k1, k2, self.field)
        if common is not None:
            line, res1, res2 = common
            pt = _line_intersection(res1, res2, self.field)
            return RankOneScheme((k1, k2), True, common_line=line, residual_point=pt)
        partition = _conic_intersection_partition(k1, k2, self.field)
        return RankOneScheme((k1, k2), False, partition=partition)

    def classify(self):
        det = self.determinant_cubic()
        if not det:
            return SymmetroidType.REDUCIBLE_UNCLASSIFIED
        kernel = self.contraction_kernel()
        if kernel:
            if len(kernel) > 1:
                return SymmetroidType.DEGENERATE_SINGULAR
            projected = self.project_from_vertex()
            return (SymmetroidType.DEGENERATE_CONE if projected.smooth
                    else SymmetroidType.DEGENERATE_SINGULAR)
        scheme = self.rank_one_scheme()
        if scheme.positive_dimensional:
            structural = self._classify_on_line(scheme)
            checked = self._crosscheck_reducible(structural)
            return checked
        part = tuple(scheme.partition)
        if part in PARTITION_TO_TYPE:
            return PARTITION_TO_TYPE[part]
        if part == (4,):
            try:
                structural = (SymmetroidType.T6 if self._adjugate_image_in_quadric()
                              else SymmetroidType.T5)
            except SymmetroidError:
                return SymmetroidType.REDUCIBLE_UNCLASSIFIED
            return self._crosscheck_reducible(structural)
        raise SymmetroidError("impossible rank-one partition %r" % (part,))

    def _classify_on_line(self, scheme):
        if scheme.residual_point is None:
            return SymmetroidType.REDUCIBLE_UNCLASSIFIED
        value = scheme.common_line.evaluate(scheme.residual_point)
        return SymmetroidType.T7 if value else SymmetroidType.T8

    def _adjugate_image_in_quadric(self):
        cubics = self.adjugate_cubics()
        quad_monomials = [tuple(m.count(i) for i in range(4))
                          for m in combinations_with_replacement(range(4), 2)]
        sextics = {}
        for mon in quad_monomials:
            prod = None
            for i, e in enumerate(mon):
                for _ in range(e):
                    prod = cubics[i] if prod is None else prod * cubics[i]
            sextics[mon] = prod
        target_monos = sorted({e for f in sextics.values() for e in f.terms})
        rows = []
        for tm in target_monos:
            rows.append([sextics[mon].terms.get(tm, self.field.zero())
                         for mon in quad_monomials])
        return bool(linalg.kernel_basis(rows, self.field))

    def _crosscheck_reducible(self, structural):
        """Over a prime field, compare with exhaustive plane-divisibility;
        disagreement is surfaced instead of guessed."""
        if self.field.kind != "Fp":
            return structural
        det = self.determinant_cubic()
        factors = _linear_factors_exhaustive(det, self.field)
        if structural in (SymmetroidType.T1, SymmetroidType.T2, SymmetroidType.T3,
                          SymmetroidType.T4, SymmetroidType.T5):
            return structural if not factors else SymmetroidType.REDUCIBLE_UNCLASSIFIED
        if not factors:
            return SymmetroidType.REDUCIBLE_UNCLASSIFIED
        bytype = _reducible_type_from_factors(det, factors, self.field)
        return structural if bytype == structural else SymmetroidType.REDUCIBLE_UNCLASSIFIED

    # -- cones ----------------------------------------------------------------

    def project_from_vertex(self):
        """Plane cubic under the cone's vertex projection, with its inherited
        3-variable symmetrization; only for one-dimensional kernels."""
        kernel = self.contraction_kernel()
        if len(kernel) != 1:
            raise SymmetroidError("projection needs a one-dimensional kernel")
        kappa = kernel[0]
        drop = max(i for i, c in enumerate(kappa) if c)
        kept = [i for i in range(4) if i != drop]
        qv = self.quadric_vector()
        rows = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                coeffs = [qv[k].at(i, j) for k in kept]
                rows[i][j] = HomogPoly.linear(self.field, W3, coeffs)
        sym = SymMatrix.from_rows(rows)
        cubic = linalg.det(sym.rows())
        smooth = bool(cubic) and plane_cubic_is_smooth(cubic)
        return PlaneCubicWithSym(tuple(kept), cubic, sym, smooth)

    # -- pointwise inverse ------------------------------------------------------

    def prym_canonical_point(self, point):
        """Singular point of the rank-2 conic attached to a symmetroid point:
        the plane image of that point under the inverse of adjugation."""
        point = [self.field.element(c) for c in point]
        if self.determinant_cubic().evaluate(point):
            raise SymmetroidError("point is not on the symmetroid")
        m = self.contraction_at(point)
        rows = m.rows()
        if linalg.rank(rows) != 2:
            raise SymmetroidError("conic at the point must have rank exactly two")
        ker = linalg.kernel_basis(rows, self.field)
        return _normalize_point(ker[0], self.field)


def _normalize_point(vec, field):
    for c in vec:
        if c:
            inv = c.inverse()
            return tuple(v * inv for v in vec)
    raise SymmetroidError("zero vector is not a projective point")


def _line_intersection(l1, l2, field):
    """Meet of two distinct plane lines via the cross product."""
    a = [l1.terms.get(tuple(1 if k == i else 0 for k in range(3)), field.zero())
         for i in range(3)]
    b = [l2.terms.get(tuple(1 if k == i else 0 for k in range(3)), field.zero())
         for i in range(3)]
    cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    if not any(cross):
        return None
    return _normalize_point(cross, field)


def _common_rational_line(k1, k2, field):
    """Common linear factor of two plane conics, with their cofactors.

    The common component of the double-line locus is unique, hence rational;
    it is found through rank <= 2 factorizations without extensions.
    """
    if proportional(k1, k2):
        raise SymmetroidError("rank-one conics cannot be proportional")
    m1 = SymMatrix.from_quadratic_form(k1)
    m2 = SymMatrix.from_quadratic_form(k2)
    if m1.rank() == 3 or m2.rank() == 3:
        return None
    pair = factor_rank_le2(m1, field, W3, allow_extension=False)
    candidates = []
    if pair is not None:
        if pair.kind == "double":
            candidates = [pair.h1]
        elif pair.kind == "pair":
            candidates = [pair.h1, pair.h2]
    for line in candidates:
        res2 = conic_contains_line(m2, line, field, W3)
        if res2 is not None:
            res1 = conic_contains_line(m1, line, field, W3)
            return line, res1, res2
    return None


_SHEARS3 = [
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    ((1, 0, 0), (0, 1, 0), (1, 0, 1)),
    ((1, 0, 0), (0, 1, 0), (0, 1, 1)),
    ((1, 0, 0), (0, 1, 0), (1, 1, 1)),
    ((1, 0, 0), (0, 1, 0), (2, 1, 1)),
    ((1, 0, 0), (0, 1, 0), (1, 2, 1)),
    ((1, 0, 0), (0, 1, 0), (3, 1, 1)),
    ((1, 0, 0), (0, 1, 0), (1, 3, 1)),
    ((1, 0, 0), (0, 1, 0), (2, 3, 1)),
    ((1, 0, 0), (0, 1, 0), (4, 1, 1)),
    ((1, 0, 0), (0, 1, 0), (3, 4, 1)),
    ((1, 0, 0), (0, 1, 0), (5, 2, 1)),
    ((1, 1, 0), (0, 1, 1), (1, 0, 1)),
    ((1, 2, 0), (0, 1, 2), (2, 0, 1)),
]


def _linear_change3(f, T, field):
    images = tuple(HomogPoly.linear(field, f.vars, [field.element(T[i][j]) for i in range(3)])
                   for j in range(3))
    return f.substitute(images)


def _resultant_in_last_var(a, b, field):
    """Sylvester resultant eliminating w2 from two ternary conics; the result
    is a binary quartic in (w0, w1)."""
    bin_vars = ("w0", "w1")

    def coeff(f, k):
        terms = {}
        for (e0, e1, e2), c in f.terms.items():
            if e2 == k:
                terms[(e0, e1)] = c
        return HomogPoly(field, bin_vars, 2 - k, terms)

    a0, a1, a2 = coeff(a, 0), coeff(a, 1), coeff(a, 2)
    b0, b1, b2 = coeff(b, 0), coeff(b, 1), coeff(b, 2)

    def zero(d):
        return HomogPoly.zero(field, bin_vars, d)

    r1 = [a2, a1, a0, zero(3)]
    r2 = [zero(1), a2, a1, a0]
    r3 = [b2, b1, b0, zero(3)]
    r4 = [zero(1), b2, b1, b0]
    return _det4_poly([r1, r2, r3, r4])


def _det4_poly(rows):
    total = None
    n = 4
    for j in range(n):
        entry = rows[0][j]
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        d3 = (minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
              - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
              + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]))
        term = entry * d3
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    return total


def _conic_intersection_partition(k1, k2, field):
    """Multiplicity partition of the four intersection points of two conics
    with no common component, via resultants in sheared frames.

    A frame is usable when the projection center avoids both conics; merges
    from accidental collinearity only coarsen the partition, so the finest
    answer over the deterministic frame family is the true one.
    """
    best = None
    for T in _SHEARS3:
        a = _linear_change3(k1, T, field)
        b = _linear_change3(k2, T, field)
        if not a.terms.get((0, 0, 2)) or not b.terms.get((0, 0, 2)):
            continue
        res = _resultant_in_last_var(a, b, field)
        if not res:
            continue
        part = multiplicity_partition(BinaryForm.from_poly(res))
        if sum(part) != 4:
            continue
        if best is None or len(part) > len(best):
            best = part
    if best is None:
        raise SymmetroidError("no usable projection frame for the rank-one scheme")
    return best


def _plane_points(field):
    """Normalized points of P^2 over a finite prime field."""
    p = field.p
    pts = []
    for a in range(p):
        for b in range(p):
            pts.append((field.one(), field.element(a), field.element(b)))
    for b in range(p):
        pts.append((field.zero(), field.one(), field.element(b)))
    pts.append((field.zero(), field.zero(), field.one()))
    return pts


def _space_dual_forms_int(p):
    for a in range(p):
        for b in range(p):
            for c in range(p):
                yield (1, a, b, c)
    for a in range(p):
        for b in range(p):
            yield (0, 1, a, b)
    for a in range(p):
        yield (0, 0, 1, a)
    yield (0, 0, 0, 1)


def _divide_by_plane(form, line_coeffs, field):
    """Exact quotient of a form of degree >= 1 by a linear form, or None."""
    if not form or form.degree < 1:
        return None
    nv = len(form.vars)
    lower = [tuple(m.count(i) for i in range(nv))
             for m in combinations_with_replacement(range(nv), form.degree - 1)]
    higher = sorted({tuple(m.count(i) for i in range(nv))
                     for m in combinations_with_replacement(range(nv), form.degree)})
    rows = []
    rhs = []
    for cm in higher:
        row = []
        for qm in lower:
            c = field.zero()
            for i, lc in enumerate(line_coeffs):
                if lc and all(qm[j] + (1 if j == i else 0) == cm[j] for j in range(nv)):
                    c = c + lc
            row.append(c)
        rows.append(row)
        rhs.append(form.terms.get(cm, field.zero()))
    sol = linalg.solve(rows, rhs, field)
    if sol is None:
        return None
    terms = {qm: c for qm, c in zip(lower, sol)}
    return HomogPoly(field, form.vars, form.degree - 1, terms)


def _linear_factors_exhaustive(cubic, field):
    """All normalized rational linear factors of a space cubic over F_p,
    with cofactor quadrics.

    The scan over all p^3 + p^2 + p + 1 candidate planes is done with raw
    integer arithmetic and a seven-point vanishing filter; exact division
    confirms the survivors.
    """
    p = field.p
    terms = [(c.val, e) for e, c in cubic.terms.items()]

    def ev(pt):
        tot = 0
        for cv, e in terms:
            v = cv
            for x, k in zip(pt, e):
                if k:
                    if not x:
                        v = 0
                        break
                    v = v * (x if k == 1 else pow(x, k, p))
            tot += v
        return tot % p

    out = []
    for ell in _space_dual_forms_int(p):
        k = next(i for i, c in enumerate(ell) if c)
        basis = []
        for i in range(4):
            if i == k:
                continue
            b = [0, 0, 0, 0]
            b[i] = 1
            b[k] = (-ell[i]) % p
            basis.append(tuple(b))
        b1, b2, b3 = basis
        probes = [b1, b2, b3,
                  tuple((a + b) % p for a, b in zip(b1, b2)),
                  tuple((a + b) % p for a, b in zip(b1, b3)),
                  tuple((a + b) % p for a, b in zip(b2, b3)),
                  tuple((a + b + c) % p for a, b, c in zip(b1, b2, b3))]
        if any(ev(pt) for pt in probes):
            continue
        coeffs = [field.element(c) for c in ell]
        quad = _divide_by_plane(cubic, coeffs, field)
        if quad is not None:
            out.append((tuple(coeffs), quad))
    return out


def _reducible_type_from_factors(cubic, factors, field):
    for coeffs, quad in factors:
        if quad and _divide_by_plane(quad, list(coeffs), field) is not None:
            return SymmetroidType.T8
    if len(factors) == 1:
        coeffs, quad = factors[0]
        r = SymMatrix.from_quadratic_form(quad).rank()
        if r == 4:
            return SymmetroidType.T6
        if r == 3:
            return SymmetroidType.T7
    return SymmetroidType.REDUCIBLE_UNCLASSIFIED


def hankel_symmetroid(field, quartic_coeffs, xvars=X4, zvars=Z3):
    """Symmetroid model carved from the rank-deficient locus of catalecticant
    matrices by the hyperplane of a monic quartic a0 + a1 t + a2 t^2 + a3 t^3 + t^4.

    For separable input this is a four-nodal cubic with singular points at
    (1 : t : t^2 : t^3) for each root t.
    """
    a = [field.element(c) for c in quartic_coeffs]
    if len(a) != 4:
        raise SymmetroidError("need the four non-leading coefficients of a monic quartic")
    last = HomogPoly.linear(field, xvars, [-c for c in a])
    u = [HomogPoly.linear(field, xvars, [1 if j == i else 0 for j in range(4)])
         for i in range(4)]
    rows = [[u[0], u[1], u[2]],
            [u[1], u[2], u[3]],
            [u[2], u[3], last]]
    return Symmetrization(field, SymMatrix.from_rows(rows), xvars, zvars)


def _poly_mod_quartic(coeffs, modulus, field):
    """Reduce a coefficient list mod the monic quartic t^4 + m3 t^3 + ... + m0."""
    cs = [field.element(c) for c in coeffs]
    while len(cs) > 4:
        top = cs.pop()
        k = len(cs) - 4
        for i in range(4):
            cs[k + i] = cs[k + i] - top * modulus[i]
    while len(cs) < 4:
        cs.append(field.zero())
    return cs


def cayley_normal_form(field, quartic_coeffs, h_coeffs, xvars=X4):
    """Cubic surface carved out by the trace form of a separable quartic
    algebra: the sum of the products of any three conjugates of the linear
    form h.

    h_coeffs[j] lists the four algebra coordinates of the x_j coefficient.
    Computed as the trace of the adjugate of the multiplication-by-h matrix,
    entirely inside the quotient ring.
    """
    a = [field.element(c) for c in quartic_coeffs]
    if not _quartic_separable(a, field):
        raise SymmetroidError("the quartic must be separable")
    # multiplication matrix of h over k[x]: columns indexed by basis powers
    basis_cols = []
    for k in range(4):
        col = [HomogPoly.zero(field, xvars, 1) for _ in range(4)]
        for j in range(4):
            # h_j(alpha) * alpha^k reduced mod the quartic
            hj = list(h_coeffs[j]) + [0] * (4 - len(h_coeffs[j]))
            shifted = [field.zero()] * k + [field.element(c) for c in hj]
            red = _poly_mod_quartic(shifted, a, field)
            xj = HomogPoly.linear(field, xvars, [1 if t == j else 0 for t in range(4)])
            for i in range(4):
                if red[i]:
                    col[i] = col[i] + xj * red[i]
        basis_cols.append(col)
    mh = [[basis_cols[k][i] for k in range(4)] for i in range(4)]
    total = None
    for k in range(4):
        minor = [[mh[i][j] for j in range(4) if j != k] for i in range(4) if i != k]
        d = linalg.det(minor)
        total = d if total is None else total + d
    return total


def _quartic_separable(a, field):
    from .binforms import _gcd_poly, _derivative, _deg
    f = [a[0], a[1], a[2], a[3], field.one()]
    df = _derivative(f, field)
    if not any(df):
        return False
    return _deg(_gcd_poly(f, df, field)) == 0


def quotient_plane_form(field, quartic_coeffs):
    """Algebra-coefficient linear form whose conjugate planes each pass
    through three of the four points (1 : t : t^2 : t^3).

    The x_k coefficient is the T^k coefficient of f(T)/(T - alpha); feeding
    this into cayley_normal_form puts the four singular points on the
    rational normal curve at the roots of f.
    """
    a0, a1, a2, a3 = [field.element(c) for c in quartic_coeffs]
    one = field.one()
    zero = field.zero()
    return [
        [a1, a2, a3, one],
        [a2, a3, one, zero],
        [a3, one, zero, zero],
        [one, zero, zero, zero],
    ]
