"""Forward construction from a symmetroid-plus-quadric pair to a genus-3
curve with its pair of degree-4 pencils, and the reverse construction from a
plane quartic with compatible conic data back to the space pair.
"""

from __future__ import annotations

from . import linalg
from .binforms import BinaryForm, multiplicity_partition
from .poly import HomogPoly, SymMatrix, proportional
from .quadrics import congruence_diagonalize
from .symmetroid import Symmetrization, SymmetroidType, _normalize_point

Y4 = ("y0", "y1", "y2", "y3")
RV4 = ("y00", "y01", "y10", "y11")
Z3 = ("z0", "z1", "z2")


class PrymError(ValueError):
    pass


class UnsupportedTower(PrymError):
    """A splitting would need a second quadratic extension."""


class DualQuadric:
    """Dual data of a quadric surface of rank 4 or 3.

    Rank 4: the adjugate matrix.  Rank 3: the vertex, the dual plane's linear
    form, the kept coordinate positions parametrizing that plane, and the
    conic of enveloping planes in those coordinates.
    """

    __slots__ = ("rank", "matrix", "vertex", "plane_form", "kept", "plane_conic")

    def __init__(self, rank, matrix=None, vertex=None, plane_form=None,
                 kept=None, plane_conic=None):
        self.rank = rank
        self.matrix = matrix
        self.vertex = vertex
        self.plane_form = plane_form
        self.kept = kept
        self.plane_conic = plane_conic


def dual_quadric(q, field, yvars=Y4):
    """Dual of a scalar symmetric 4x4 quadric; rank must be 3 or 4."""
    r = q.rank()
    if r <= 2:
        raise PrymError("dual data needs rank 3 or 4, got %d" % r)
    if r == 4:
        return DualQuadric(4, matrix=q.adjugate())
    kernel = linalg.kernel_basis(q.rows(), field)
    vertex = _normalize_point(kernel[0], field)
    drop = max(i for i, c in enumerate(vertex) if c)
    kept = tuple(i for i in range(4) if i != drop)
    reduced = SymMatrix.from_rows([[q.at(i, j) for j in kept] for i in kept])
    plane_conic = reduced.adjugate().quadratic_form(field, ("p0", "p1", "p2"))
    plane_form = HomogPoly.linear(field, yvars, list(vertex))
    return DualQuadric(3, vertex=vertex, plane_form=plane_form, kept=kept,
                       plane_conic=plane_conic)


_REDUCEDNESS_LINES = [
    ((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1)),
    ((1, 1, 0), (0, 1, 1)), ((1, 2, 0), (0, 1, 3)), ((1, 0, 2), (2, 1, 0)),
    ((1, 1, 1), (1, 2, 4)), ((1, 3, 2), (0, 1, 5)), ((2, 1, 3), (1, 0, 1)),
]


def _reducedness_certificate(quartic, field):
    """Squarefree restrictions to three lines certify that the quartic has no
    multiple component."""
    good = 0
    for p0, p1 in _REDUCEDNESS_LINES:
        pa = [field.element(c) for c in p0]
        pb = [field.element(c) for c in p1]
        rest = quartic.restrict_to_line(pa, pb)
        if not rest:
            continue
        if all(m == 1 for m in multiplicity_partition(BinaryForm.from_poly(rest))):
            good += 1
            if good == 3:
                return True
    return False


class PlaneQuarticModel:
    """Canonical model of a non-hyperelliptic genus-3 output."""

    __slots__ = ("quartic", "reduced", "raw_scale")

    def __init__(self, quartic, reduced, raw_scale=None):
        self.quartic = quartic
        self.reduced = reduced
        self.raw_scale = raw_scale


class HyperellipticModel:
    """Genus-3 output in the even case: a smooth conic with an eight-point
    branch scheme, plus a binary octic chart when the conic has a point."""

    __slots__ = ("conic", "branch_quartic", "octic", "parametrization",
                 "branch_reduced", "twist_scaled")

    def __init__(self, conic, branch_quartic, octic, parametrization,
                 branch_reduced, twist_scaled):
        self.conic = conic
        self.branch_quartic = branch_quartic
        self.octic = octic
        self.parametrization = parametrization
        self.branch_reduced = branch_reduced
        self.twist_scaled = twist_scaled


def _forward_type_check(a):
    tag = a.classify()
    if tag in (SymmetroidType.T7, SymmetroidType.DEGENERATE_SINGULAR,
               SymmetroidType.REDUCIBLE_UNCLASSIFIED):
        raise PrymError("construction is undefined for symmetroid type %s" % tag)
    return tag


def forward_general(a, q):
    """Quartic model of the genus-3 partner: the dual-quadric form pulled
    back through the four symmetrization quadrics.  Needs rank-4 q."""
    field = a.field
    _forward_type_check(a)
    dual = dual_quadric(q, field)
    if dual.rank != 4:
        raise PrymError("rank-4 quadric required; use the rank-3 branch instead")
    dual_form = dual.matrix.quadratic_form(field, Y4)
    raw = dual_form.substitute(a.gauss_quadrics())
    if not raw:
        raise PrymError("the pullback quartic vanishes identically")
    quartic = raw.content_normalized()
    reduced = _reducedness_certificate(quartic, field)
    lead = max(raw.terms)
    scale = raw.terms[lead] / quartic.terms[lead]
    return PlaneQuarticModel(quartic, reduced, raw_scale=scale)


def parametrize_conic(conic, point, field):
    """Degree-2 parametrization of a smooth plane conic through one of its
    points; the three coordinates are binary quadratics in (s, t)."""
    m = SymMatrix.from_quadratic_form(conic)
    p = [field.element(c) for c in point]
    if conic.evaluate(p):
        raise PrymError("base point is not on the conic")
    # complete p to a basis deterministically
    pivot = max(i for i, c in enumerate(p) if c)
    others = [i for i in range(3) if i != pivot]
    d1 = [field.one() if i == others[0] else field.zero() for i in range(3)]
    d2 = [field.one() if i == others[1] else field.zero() for i in range(3)]
    rows = m.rows()

    def bilinear(u, v):
        return linalg.sum_entries([u[i] * rows[i][j] * v[j]
                                   for i in range(3) for j in range(3)])

    st = ("s", "t")
    out = []
    # line p + tau (s d1 + t d2); second intersection at
    # tau = -2 B(p, d) / B(d, d), cleared of denominators
    bpd1 = bilinear(p, d1)
    bpd2 = bilinear(p, d2)
    b11 = bilinear(d1, d1)
    b12 = bilinear(d1, d2)
    b22 = bilinear(d2, d2)
    # x(s,t) = B(d,d) p - 2 B(p,d) d with d = s d1 + t d2
    for i in range(3):
        terms = {}
        coeffs = {
            (2, 0): b11 * p[i] - bpd1 * d1[i] * 2,
            (1, 1): b12 * p[i] * 2 - (bpd1 * d2[i] + bpd2 * d1[i]) * 2,
            (0, 2): b22 * p[i] - bpd2 * d2[i] * 2,
        }
        for e, c in coeffs.items():
            if c:
                terms[e] = c
        out.append(HomogPoly(field, st, 2, terms))
    if not any(out):
        raise PrymError("degenerate parametrization; conic is singular")
    return tuple(out)


def conic_rational_point(conic, field, search_bound=12):
    """A point on a plane conic: full scan over finite fields, a small box
    search over the rationals (None when the box misses)."""
    if field.is_finite():
        if field.kind != "Fp":
            raise PrymError("conic point search runs over prime fields")
        p = field.p
        for a in range(p):
            for b in range(p):
                pt = (field.one(), field.element(a), field.element(b))
                if not conic.evaluate(pt):
                    return pt
        for b in range(p):
            pt = (field.zero(), field.one(), field.element(b))
            if not conic.evaluate(pt):
                return pt
        pt = (field.zero(), field.zero(), field.one())
        if not conic.evaluate(pt):
            return pt
        return None
    rng = range(-search_bound, search_bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                if a == b == c == 0:
                    continue
                pt = (field.element(a), field.element(b), field.element(c))
                if not conic.evaluate(pt):
                    return _normalize_point(list(pt), field)
    return None


def _canonical_square_class_scale(octic, field):
    """Scale a binary octic by squares only: leading class becomes 1 when it
    is a square, else the smallest representative of its class."""
    lead = next(c for c in octic.coeffs if c)
    if field.kind == "Q":
        fr = lead.val
        num = fr.numerator
        den = fr.denominator
        sqfree = 1
        n = abs(num * den)
        d = 2
        while d * d <= n:
            while n % (d * d) == 0:
                n //= d * d
            d += 1
        sqfree = n if num * den > 0 else -n
        target = field.element(sqfree)
    elif field.kind == "Fp":
        p = field.p
        cls = [lead.val * s * s % p for s in range(1, p)]
        target = field.element(min(cls))
    else:
        target = field.one() if field.sqrt(lead) is not None else lead
    scale = target / lead
    # the scale is a square by construction; fold its root into the chart
    return octic * scale


def forward_even(a, q):
    """Even branch: rank-3 quadric.  The output conic is the pullback of the
    dual plane; the branch scheme is its intersection with the pullback of
    the envelope conic; the octic chart is twisted so the associated space
    quadric has split rulings."""
    field = a.field
    _forward_type_check(a)
    dual = dual_quadric(q, field)
    if dual.rank != 3:
        raise PrymError("rank-3 quadric required")
    gamma = a.determinant_cubic()
    if not gamma.evaluate(list(dual.vertex)):
        raise PrymError("vertex of the quadric lies on the symmetroid")
    quadrics = a.gauss_quadrics()
    conic = None
    for c, qq in zip(dual.vertex, quadrics):
        if c:
            t = qq * c
            conic = t if conic is None else conic + t
    conic = conic.content_normalized()
    if SymMatrix.from_quadratic_form(conic).rank() != 3:
        raise PrymError("pullback conic is singular")
    # the branch form is twist data: it may only ever be scaled by squares
    branch_exact = dual.plane_conic.substitute(tuple(quadrics[i] for i in dual.kept))
    octic = None
    param = None
    branch_reduced = None
    point = conic_rational_point(conic, field) if field.kind in ("Q", "Fp") else None
    if point is not None:
        param = parametrize_conic(conic, point, field)
        restricted = (-branch_exact).substitute(param)
        octic_form = BinaryForm.from_poly(restricted)
        if not octic_form:
            raise PrymError("branch scheme contains the conic")
        branch_reduced = all(m == 1 for m in multiplicity_partition(octic_form))
        octic = _canonical_square_class_scale(octic_form, field)
    else:
        branch_reduced = _branch_reduced_by_resultant(conic, branch_exact, field)
    return HyperellipticModel(conic, branch_exact, octic, param, branch_reduced,
                              twist_scaled=True)


_BRANCH_SHEARS = [
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 1), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
    ((1, 0, 2), (0, 1, 1), (0, 0, 1)),
    ((1, 1, 1), (0, 1, 2), (0, 0, 1)),
    ((1, 0, 3), (0, 1, 5), (0, 0, 1)),
    ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
]


def _branch_reduced_by_resultant(conic, branch, field):
    """Reducedness of the eight-point scheme without a conic point: in a
    frame whose projection center misses both curves and separates the
    intersection points, the degree-eight resultant is squarefree."""
    from .symmetroid import _linear_change3, _resultant_in_last_var
    for T in _BRANCH_SHEARS:
        a = _linear_change3(conic, T, field)
        b = _linear_change3(branch, T, field)
        if not a.terms.get((0, 0, 2)) or not b.terms.get((0, 0, 4)):
            continue
        res = _resultant_last_var_deg(a, b, field)
        if not res:
            return False
        form = BinaryForm.from_poly(res)
        if form.degree != 8:
            continue
        if all(m == 1 for m in multiplicity_partition(form)):
            return True
    return None


def _resultant_last_var_deg(a, b, field):
    """Sylvester resultant in the last variable of a conic against a quartic."""
    bin_vars = (a.vars[0], a.vars[1])

    def coeff(f, k, total):
        terms = {}
        for e, c in f.terms.items():
            if e[2] == k:
                terms[(e[0], e[1])] = c
        return HomogPoly(field, bin_vars, total - k, terms)

    a0, a1, a2 = (coeff(a, k, 2) for k in range(3))
    b0, b1, b2, b3, b4 = (coeff(b, k, 4) for k in range(5))

    def zero(d):
        return HomogPoly.zero(field, bin_vars, d)

    rows = [
        [a2, a1, a0, zero(3), zero(4), zero(5)],
        [zero(1), a2, a1, a0, zero(4), zero(5)],
        [zero(2), zero(2), a2, a1, a0, zero(5)],
        [zero(3), zero(3), zero(3), a2, a1, a0],
        [b4, b3, b2, b1, b0, zero(5)],
        [zero(1), b4, b3, b2, b1, b0],
    ]
    return linalg.det(rows)


SEGRE_INDEX = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}


def segre_matrix(field):
    """Matrix of y0 y3 - y1 y2."""
    h = field.element(1) / field.element(2)
    z = field.zero()
    return SymMatrix.from_rows([
        [z, z, z, h], [z, z, -h, z], [z, -h, z, z], [h, z, z, z]])


class SplitQuadricResult:
    __slots__ = ("transform", "field", "scale", "extended")

    def __init__(self, transform, field, scale, extended):
        self.transform = transform
        self.field = field
        self.scale = scale
        self.extended = extended


def _matching_fast_path(q, field):
    """Permutation-with-one-scale transform when the matrix is a perfect
    matching of two off-diagonal pairs."""
    nz = []
    for i in range(4):
        if q.at(i, i):
            return None
        for j in range(i + 1, 4):
            if q.at(i, j):
                nz.append((i, j))
    if len(nz) != 2 or set(nz[0]) & set(nz[1]):
        return None
    (i, j), (k, l) = nz
    a = q.at(i, j)
    b = q.at(k, l)
    zero = field.zero()
    n = [[zero] * 4 for _ in range(4)]
    n[i][0] = field.one()
    n[j][3] = field.one()
    n[k][1] = field.one()
    n[l][2] = -a / b
    return n, a * 2


def split_quadric(q, field):
    """Transform a rank-4 symmetric matrix to the two-ruling normal form:
    returns N with N^T q N = scale * (y0 y3 - y1 y2 matrix), over the base
    field or one quadratic extension (the stepwise pairing roots decide).
    """
    if q.rank() != 4:
        raise PrymError("splitting needs rank 4")
    fast = _matching_fast_path(q, field)
    if fast is not None:
        n, scale = fast
        _assert_split(n, q, field, scale)
        return SplitQuadricResult(n, field, scale, False)
    p, diag = congruence_diagonalize(q, field)
    d = diag
    t1 = -d[1] / d[0]
    t2 = -d[3] / d[2]
    r1 = field.sqrt(t1)
    r2 = field.sqrt(t2)
    work = field
    extended = False
    if r1 is None or r2 is None:
        if field.kind == "QuadExt":
            raise UnsupportedTower("splitting needs a second quadratic extension")
        first_missing = t1 if r1 is None else t2
        work = field.quadratic_extension(first_missing)
        extended = True
        r1 = work.sqrt(work.element(t1))
        r2 = work.sqrt(work.element(t2))
        if r1 is None or r2 is None:
            raise UnsupportedTower("pairing roots generate distinct extensions")
    wd = [work.element(x) for x in d]
    half = work.element(1) / work.element(2)
    zero = work.zero()
    # columns: y written in the split coordinates c
    y_of_c = [
        [half, zero, zero, half],
        [half / r1, zero, zero, -half / r1],
        [zero, half, -wd[0] / wd[2] * half, zero],
        [zero, half / r2, wd[0] / wd[2] * half / r2, zero],
    ]
    pw = [[work.element(x) for x in row] for row in p]
    n = linalg.mat_mul(pw, y_of_c)
    scale = wd[0]
    _assert_split(n, q if not extended else q.map(lambda v: work.element(v)), work, scale)
    return SplitQuadricResult(n, work, scale, extended)


def _assert_split(n, q, field, scale):
    nt = linalg.transpose(n)
    prod = linalg.mat_mul(nt, linalg.mat_mul(q.rows(), n))
    target = segre_matrix(field).scale(scale)
    got = SymMatrix.from_rows(prod)
    if not all(got.upper[k] == target.upper[k] for k in got.upper):
        raise PrymError("split transform verification failed")


class KummerPencil:
    """Four conics presenting the two degree-4 pencils: the 2x2 determinant
    of the conic square reproduces the quartic up to a scalar."""

    __slots__ = ("c00", "c01", "c10", "c11", "quartic", "scale", "field",
                 "change_to_x", "extended")

    def __init__(self, c00, c01, c10, c11, quartic, scale, field, change_to_x, extended):
        self.c00 = c00
        self.c01 = c01
        self.c10 = c10
        self.c11 = c11
        self.quartic = quartic
        self.scale = scale
        self.field = field
        self.change_to_x = change_to_x
        self.extended = extended

    def conics(self):
        return (self.c00, self.c01, self.c10, self.c11)


def pencil_conics(a, q):
    """Split the dual quadric and read off the four ruled coordinates of the
    symmetrization quadrics."""
    field = a.field
    dual = dual_quadric(q, field)
    if dual.rank != 4:
        raise PrymError("pencil data needs a rank-4 quadric")
    split = split_quadric(dual.matrix, field)
    work = split.field
    ninv = linalg.inverse(split.transform, work)
    quadrics = a.gauss_quadrics()
    if split.extended:
        quadrics = tuple(f.change_field(work) for f in quadrics)
    cs = []
    for m in range(4):
        acc = None
        for k in range(4):
            if ninv[m][k]:
                t = quadrics[k] * ninv[m][k]
                acc = t if acc is None else acc + t
        if acc is None:
            acc = HomogPoly.zero(work, Z3, 2)
        cs.append(acc)
    forward = forward_general(a, q)
    prod = cs[0] * cs[3] - cs[1] * cs[2]
    quart = forward.quartic if not split.extended else forward.quartic.change_field(work)
    if not proportional(prod, quart):
        raise PrymError("pencil compatibility identity failed")
    lead = max(prod.terms)
    scale = prod.terms[lead] / quart.terms[lead]
    change = linalg.transpose(ninv)
    return KummerPencil(cs[0], cs[1], cs[2], cs[3], forward.quartic, scale,
                        work, change, split.extended)


class ReverseResult:
    __slots__ = ("symmetrization", "cubic", "quadric_form", "quadric",
                 "conic_matrices", "kernel_relation", "scale")

    def __init__(self, symmetrization, cubic, quadric_form, quadric,
                 conic_matrices, kernel_relation, scale):
        self.symmetrization = symmetrization
        self.cubic = cubic
        self.quadric_form = quadric_form
        self.quadric = quadric
        self.conic_matrices = conic_matrices
        self.kernel_relation = kernel_relation
        self.scale = scale


def reverse_construct(quartic, conics, field=None):
    """Rebuild the space pair from a plane quartic and four compatible
    conics: the four conic matrices span the new web, the determinant of the
    rebuilt pencil is the cubic, and the 2x2 rank condition on coordinates is
    the quadric.

    The four conics may satisfy one linear relation (self-residual input);
    the relation direction then becomes the cone kernel of the output.
    """
    field = field or quartic.field
    cs = list(conics)
    if len(cs) != 4:
        raise PrymError("need four conics")
    prod = cs[0] * cs[3] - cs[1] * cs[2]
    if not prod or not proportional(prod, quartic):
        raise PrymError("conics are incompatible with the quartic")
    lead = max(prod.terms)
    scale = prod.terms[lead] / quartic.terms[lead]
    mats = [SymMatrix.from_quadratic_form(c) for c in cs]
    stack = []
    for m in mats:
        form = m.quadratic_form(field, Z3)
        stack.append([form.terms.get(mon, field.zero())
                      for mon in _CONIC_MONOMIALS])
    r = linalg.rank(stack)
    kernel_relation = None
    if r < 3:
        raise PrymError("conic span has dimension %d < 3" % r)
    if r == 3:
        # the single relation among the four conics becomes the cone kernel
        kernel_relation = linalg.kernel_basis(linalg.transpose(stack), field)[0]
    sym = Symmetrization.from_quadric_vector(field, mats, xvars=RV4, zvars=Z3)
    cubic = sym.determinant_cubic()
    qform = HomogPoly(field, RV4, 2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
    qmat = SymMatrix.from_quadratic_form(qform)
    return ReverseResult(sym, cubic, qform, qmat, mats, kernel_relation, scale)


_CONIC_MONOMIALS = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def roundtrip_change_matches(a, q, pencil, rebuilt):
    """Exact roundtrip identity: the rebuilt web equals the original one
    composed with the recorded coordinate change (a scaled permutation
    whenever the dual quadric had the two-term shape), and the Segre quadric
    pulls back proportionally to the original quadric."""
    work = pencil.field
    change = pencil.change_to_x  # x_k = sum_m change[k][m] y_m
    xs = [HomogPoly.linear(work, RV4, [change[k][m] for m in range(4)])
          for k in range(4)]
    amat = a.matrix if work == a.field else a.change_field(work).matrix
    for (i, j), entry in amat.upper.items():
        rebuilt_entry = rebuilt.symmetrization.matrix.at(i, j)
        if work != rebuilt_entry.field:
            rebuilt_entry = rebuilt_entry.change_field(work)
        composed = entry.substitute(tuple(xs))
        if composed != rebuilt_entry:
            return False
    qwork = [[work.element(v) for v in row] for row in q.rows()]
    acc = None
    for i in range(4):
        for j in range(4):
            t = xs[i] * xs[j] * qwork[i][j]
            acc = t if acc is None else acc + t
    target = rebuilt.quadric_form
    if target.field != work:
        target = target.change_field(work)
    return proportional(acc, target)
