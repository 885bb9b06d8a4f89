"""From bitangents of the plane quartic to pairs of tritangent planes of the
space curve: enveloping cones over lines, the reducible member of a pencil of
quadrics, tritangency certificates, the twisted cubic through the contact
points, and the unique-cubic reconstruction.
"""

from __future__ import annotations

from . import linalg
from .binforms import (BinaryForm, binary_gcd, perfect_square_root, resultant)
from .poly import HomogPoly, SymMatrix, proportional
from .quadrics import factor_rank_le2

X4 = ("x0", "x1", "x2", "x3")
ST = ("s", "t")
U3 = ("u0", "u1", "u2")


class MilneError(ValueError):
    pass


class Line2:
    """A line in the source plane, carried as a spanning pair of points."""

    __slots__ = ("p0", "p1", "field")

    def __init__(self, field, p0, p1):
        self.field = field
        self.p0 = tuple(field.element(c) for c in p0)
        self.p1 = tuple(field.element(c) for c in p1)
        rows = [list(self.p0), list(self.p1)]
        if linalg.rank(rows) != 2:
            raise MilneError("the two points do not span a line")

    @staticmethod
    def from_dual(field, dual):
        rows = [[field.element(c) for c in dual]]
        basis = linalg.kernel_basis(rows, field)
        return Line2(field, basis[0], basis[1])

    def parametrization(self, nvars=3):
        images = []
        for i in range(nvars):
            images.append(HomogPoly.linear(self.field, ST, [self.p0[i], self.p1[i]]))
        return tuple(images)


class EnvelopingCone:
    __slots__ = ("matrix", "form", "rank", "plane_rank", "generic")

    def __init__(self, matrix, form, rank, plane_rank, generic):
        self.matrix = matrix
        self.form = form
        self.rank = rank
        self.plane_rank = plane_rank
        self.generic = generic


def line_is_generic(a, line):
    """The line avoids the base locus of the cubic map: the four restricted
    cubics have no common projective root."""
    cubics = a.adjugate_cubics()
    param = line.parametrization()
    restricted = [c.substitute(param) for c in cubics]
    forms = [BinaryForm.from_poly(r) for r in restricted if r]
    if not forms:
        return False
    g = forms[0]
    for f in forms[1:]:
        g = binary_gcd(g, f)
    if len(forms) < 4:
        # a vanishing restriction means the whole line maps into a plane;
        # any common root of the others is still a base point
        return g.degree == 0 and len([r for r in restricted if r]) == 4
    return g.degree == 0


def enveloping_cone(a, line):
    """Quadric enveloped by the image conic of a plane line: the binary
    discriminant of the line's pencil of conic values."""
    field = a.field
    quadrics = a.gauss_quadrics()
    p0 = list(line.p0)
    p1 = list(line.p1)
    psum = [x + y for x, y in zip(p0, p1)]
    acoef = [qf.evaluate(p0) for qf in quadrics]
    ccoef = [qf.evaluate(p1) for qf in quadrics]
    bcoef = [qf.evaluate(psum) - av - cv
             for qf, av, cv in zip(quadrics, acoef, ccoef)]
    # the image of the line degenerates when the three coefficient vectors
    # span less than a plane of the dual space
    plane_rank = linalg.rank([acoef, bcoef, ccoef])
    if plane_rank <= 2:
        raise MilneError("line maps two-to-one onto a line of the dual space")
    cubics = a.adjugate_cubics()
    param = line.parametrization()
    if not any(c.substitute(param) for c in cubics):
        raise MilneError("line lies in the base locus of the cubic map")
    af = HomogPoly.linear(field, X4, acoef)
    bf = HomogPoly.linear(field, X4, bcoef)
    cf = HomogPoly.linear(field, X4, ccoef)
    form = bf * bf - af * cf * 4
    if not form:
        raise MilneError("envelope degenerates to the zero quadric")
    mat = SymMatrix.from_quadratic_form(form)
    rank = mat.rank()
    if rank == 4:
        raise MilneError("envelope of a plane conic must be singular")
    return EnvelopingCone(mat, form, rank, plane_rank, True)


class ReducibleMember:
    """Rank <= 2 quadric in the pencil spanned by the envelope and the fixed
    quadric.  kind is 'pair' or 'double'; planes live over `field`, which may
    be one quadratic extension up from the input."""

    __slots__ = ("kind", "h1", "h2", "field", "root", "root_extended",
                 "planes_unrepresentable")

    def __init__(self, kind, h1, h2, field, root, root_extended,
                 planes_unrepresentable=False):
        self.kind = kind
        self.h1 = h1
        self.h2 = h2
        self.field = field
        self.root = root
        self.root_extended = root_extended
        self.planes_unrepresentable = planes_unrepresentable


def _pencil_det(lam, q, field):
    lv = ("l", "m")
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            row.append(HomogPoly.linear(field, lv, [lam.at(i, j), q.at(i, j)]))
        rows.append(row)
    return linalg.det(rows)


def _roots_with_multiplicity_ge2(g, field):
    """Roots of multiple factors of a binary quartic, each over the base
    field or one quadratic extension: (s0, t0, work_field, extended)."""
    out = []
    form = BinaryForm.from_poly(g)
    s_mult, t_mult, core = form.strip_st()
    # the factor s^k vanishes at (0 : 1), the factor t^k at (1 : 0)
    if s_mult >= 2:
        out.append((field.zero(), field.one(), field, False))
    if t_mult >= 2:
        out.append((field.one(), field.zero(), field, False))
    from .binforms import _trim, squarefree_decomposition, _deg
    poly = _trim(list(reversed(core)), field)
    if _deg(poly) > 0:
        for mult, fac in squarefree_decomposition(poly, field):
            if mult < 2:
                continue
            d = _deg(fac)
            if d == 1:
                # fac = c0 + c1 u with u = s/t ... roots in the (s : t) chart
                out.append((-fac[0] / fac[1], field.one(), field, False))
            elif d == 2:
                c0, c1, c2 = fac[0], fac[1], fac[2]
                disc = c1 * c1 - c0 * c2 * 4
                r = field.sqrt(disc)
                if r is not None:
                    for sign in (r, -r):
                        out.append(((-c1 + sign) / (c2 * 2), field.one(), field, False))
                else:
                    if field.kind == "QuadExt":
                        continue
                    ext = field.quadratic_extension(disc)
                    r = ext.sqrt_d()
                    c1e = ext.element(c1)
                    c2e = ext.element(c2)
                    for sign in (r, -r):
                        out.append(((-c1e + sign) / (c2e * 2), ext.one(), ext, True))
            else:
                # a factor of degree >= 3 with multiplicity >= 2 cannot fit in
                # a quartic unless it is a perfect power already caught above
                continue
    return out


def reducible_member(lam, q, field):
    """The reduced rank <= 2 member of the pencil, or a double-plane flag, or
    None; only multiple roots of the degree-four determinant can carry one.
    """
    lform = lam.quadratic_form(field, X4)
    qform = q.quadratic_form(field, X4)
    if proportional(lform, qform):
        raise MilneError("pencil is degenerate")
    g = _pencil_det(lam, q, field)
    if not g:
        raise MilneError("pencil determinant vanishes identically")
    found = None
    for s0, t0, work, extended in _roots_with_multiplicity_ge2(g, field):
        mw = SymMatrix(4, {k: work.element(lam.upper[k]) * s0 + work.element(q.upper[k]) * t0
                           for k in lam.upper})
        r = mw.rank()
        if r > 2:
            continue
        if r == 1:
            pair = factor_rank_le2(mw, work, X4, allow_extension=False)
            return ReducibleMember("double", pair.h1, pair.h1, work, (s0, t0), extended)
        pair = factor_rank_le2(mw, work, X4,
                               allow_extension=(work.kind != "QuadExt"))
        if pair is None:
            return ReducibleMember("pair", None, None, work, (s0, t0), extended,
                                   planes_unrepresentable=True)
        planes_field = pair.h1.field
        member = ReducibleMember("pair", pair.h1, pair.h2, planes_field,
                                 (s0, t0), extended or pair.extended)
        if found is None or (found.planes_unrepresentable and not member.planes_unrepresentable):
            found = member
    return found


class TritangentCert:
    __slots__ = ("passed", "plane", "contact", "field", "reducible_conic",
                 "extended", "plane_basis", "conic_param")

    def __init__(self, passed, plane, contact, field, reducible_conic, extended,
                 plane_basis=None, conic_param=None):
        self.passed = passed
        self.plane = plane
        self.contact = contact
        self.field = field
        self.reducible_conic = reducible_conic
        self.extended = extended
        self.plane_basis = plane_basis
        self.conic_param = conic_param


def _plane_basis(h, field):
    coeffs = [h.terms.get(tuple(1 if j == i else 0 for j in range(4)), field.zero())
              for i in range(4)]
    basis = linalg.kernel_basis([coeffs], field)
    if len(basis) != 3:
        raise MilneError("not a plane")
    return basis


def tritangent_verify(q, gamma, h):
    """Even-contact certificate for a plane against the space curve: the
    restricted conic is parametrized and the restricted cubic pulled back to
    a sextic whose divisor must be even."""
    field = h.field
    qw = q if _entry_field(q) == field else q.map(lambda v: field.element(v))
    gw = gamma if gamma.field == field else gamma.change_field(field)
    basis = _plane_basis(h, field)
    images = tuple(HomogPoly.linear(field, U3, [basis[k][i] for k in range(3)])
                   for i in range(4))
    conic = qw.quadratic_form(field, X4).substitute(images)
    cubic = gw.substitute(images)
    cm = SymMatrix.from_quadratic_form(conic)
    rank = cm.rank()
    if rank == 3:
        from .prym import conic_rational_point, parametrize_conic
        pt = conic_rational_point(conic, field) if field.kind in ("Q", "Fp") else _scan_ext_point(conic, field)
        if pt is None:
            return TritangentCert(False, h, None, field, False, False)
        param = parametrize_conic(conic, pt, field)
        sextic = cubic.substitute(param)
        if not sextic:
            return TritangentCert(False, h, None, field, False, False)
        cert = perfect_square_root(BinaryForm.from_poly(sextic),
                                   allow_extension=(field.kind != "QuadExt"))
        if cert is None:
            return TritangentCert(False, h, None, field, False, False,
                                  plane_basis=basis, conic_param=param)
        return TritangentCert(True, h, cert.root, cert.root.field, False,
                              cert.extended, plane_basis=basis, conic_param=param)
    if rank == 2:
        pair = factor_rank_le2(cm, field, U3, allow_extension=(field.kind != "QuadExt"))
        if pair is None:
            return TritangentCert(False, h, None, field, True, False)
        ok = _even_on_line_pair(pair, cubic, field)
        return TritangentCert(ok, h, None, field, True, pair.extended)
    return TritangentCert(False, h, None, field, True, False)


def _entry_field(m):
    return m.at(0, 0).field


def _scan_ext_point(conic, field):
    p = field.base.p
    for a in range(p):
        for b in range(p):
            for c0 in range(p):
                for c1 in range(p):
                    pt = (field.one(), field.element((a, b)), field.element((c0, c1)))
                    if not conic.evaluate(pt):
                        return pt
    return None


def _line_param_from_form(line_form, field):
    basis = linalg.kernel_basis([[line_form.terms.get(
        tuple(1 if j == i else 0 for j in range(3)), field.zero()) for i in range(3)]], field)
    return tuple(HomogPoly.linear(field, ST, [basis[0][i], basis[1][i]])
                 for i in range(3))


def _even_on_line_pair(pair, cubic, field):
    """Tangent-plane case: the conic breaks into two rulings; the contact
    divisor is even iff on each ruling all odd multiplicities sit at the
    crossing point, with even total there."""
    work = pair.h1.field
    cw = cubic if cubic.field == work else cubic.change_field(work)
    crossing_mults = []
    for lf in (pair.h1, pair.h2):
        param = _line_param_from_form(lf, work)
        other = pair.h2 if lf is pair.h1 else pair.h1
        cross = other.substitute(param)  # vanishes at the crossing parameter
        restricted = cw.substitute(param)
        if not restricted:
            return False
        rform = BinaryForm.from_poly(restricted)
        xform = BinaryForm.from_poly(cross)
        odd_at_cross = 0
        from .binforms import _trim, squarefree_decomposition, _deg
        s_mult, t_mult, core = rform.strip_st()
        checks = []
        if s_mult % 2:
            checks.append((work.zero(), work.one(), s_mult))
        if t_mult % 2:
            checks.append((work.one(), work.zero(), t_mult))
        poly = _trim(list(reversed(core)), work)
        if _deg(poly) > 0:
            for mult, fac in squarefree_decomposition(poly, work):
                if mult % 2 == 0:
                    continue
                if _deg(fac) != 1:
                    return False
                checks.append((-fac[0] / fac[1], work.one(), mult))
        for s0, t0, mult in checks:
            if xform.evaluate(s0, t0):
                return False
            odd_at_cross += mult
        crossing_mults.append(odd_at_cross)
    return (crossing_mults[0] + crossing_mults[1]) % 2 == 0


class TwistedCubic:
    __slots__ = ("components", "line", "honest")

    def __init__(self, components, line, honest):
        self.components = components
        self.line = line
        self.honest = honest


def twisted_cubic(a, line, strict=False):
    """Image of a plane line under the cubic adjugation map, as four binary
    cubics; lies on the symmetroid identically.

    Lines through base points of the map give a lower-degree image; the
    result is flagged, or rejected when strict."""
    param = line.parametrization()
    comps = tuple(c.substitute(param) for c in a.adjugate_cubics())
    if not any(comps):
        raise MilneError("line lies in the base locus of the cubic map")
    det = a.determinant_cubic()
    if det.substitute(comps):
        raise MilneError("twisted cubic left the symmetroid; internal error")
    forms = [BinaryForm.from_poly(c) for c in comps if c]
    g = forms[0]
    for f in forms[1:]:
        g = binary_gcd(g, f)
    honest = (len(forms) == 4 and g.degree == 0)
    if strict and not honest:
        raise MilneError("line meets the base locus; image drops degree")
    return TwistedCubic(comps, line, honest)


def contact_points_match(h, cubic_T, contact_root, conic_param, plane_basis_vectors):
    """Resultant cross-ratios: the divisor cut on the twisted cubic by the
    plane equals the contact divisor living on the plane's conic."""
    field = contact_root.field
    comps = [c if c.field == field else c.change_field(field) for c in cubic_T.components]
    hw = h if h.field == field else h.change_field(field)
    hT = BinaryForm.from_poly(_compose_linear(hw, comps, field))
    if not hT:
        return False
    # the plane's points under the conic parametrization, in space coordinates
    lifted = []
    for i in range(4):
        acc = None
        for k in range(3):
            pk = conic_param[k] if conic_param[k].field == field else conic_param[k].change_field(field)
            coef = field.element(plane_basis_vectors[k][i])
            if coef:
                t = pk * coef
                acc = t if acc is None else acc + t
        lifted.append(acc if acc is not None else HomogPoly.zero(field, ST, 2))
    probes = [
        [field.one(), field.zero(), field.zero(), field.zero()],
        [field.zero(), field.one(), field.zero(), field.zero()],
        [field.zero(), field.zero(), field.one(), field.zero()],
        [field.zero(), field.zero(), field.zero(), field.one()],
        [field.element(1), field.element(2), field.element(3), field.element(5)],
    ]
    rs = []
    for coeffs in probes:
        phi = HomogPoly.linear(field, X4, coeffs)
        r = resultant(hT, BinaryForm.from_poly(_compose_linear(phi, comps, field)))
        s = resultant(contact_root, BinaryForm.from_poly(_compose_linear(phi, lifted, field)))
        rs.append((r, s))
    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            if rs[i][0] * rs[j][1] != rs[j][0] * rs[i][1]:
                return False
    return True


def _compose_linear(phi, comps, field):
    acc = None
    for i in range(4):
        e = tuple(1 if j == i else 0 for j in range(4))
        c = phi.terms.get(e)
        if c:
            t = comps[i] * c
            acc = t if acc is None else acc + t
    if acc is None:
        deg = comps[0].degree
        return HomogPoly.zero(field, comps[0].vars, deg)
    return acc


_SAMPLE_PARAMS = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (1, 4),
                  (2, 3), (1, 5), (3, 2), (1, 6)]


def cubic_through_curve_and_twisted(q, gamma, tw, field):
    """The cubic surfaces through the space curve form the span of the fixed
    cubic and the plane multiples of the quadric; four general points of the
    twisted cubic cut that five-dimensional space down to one line, which
    must be the fixed cubic itself."""
    qf = q.quadratic_form(field, X4)
    rows = []
    used = []
    for (s0, t0) in _SAMPLE_PARAMS:
        se = field.element(s0)
        te = field.element(t0)
        pt = [c.evaluate([se, te]) for c in tw.components]
        if not any(pt):
            continue
        qv = qf.evaluate(pt)
        row = [gamma.evaluate(pt)] + [qv * pt[i] for i in range(4)]
        cand = rows + [row]
        if linalg.rank(cand) > len(rows):
            rows = cand
            used.append((s0, t0))
        if len(rows) == 4:
            break
    if len(rows) < 4:
        raise MilneError("could not find four independent conditions on the twisted cubic")
    kernel = linalg.kernel_basis(rows, field)
    if len(kernel) != 1:
        raise MilneError("solution space has dimension %d, expected 1" % len(kernel))
    sol = kernel[0]
    lin = HomogPoly.linear(field, X4, sol[1:])
    out = gamma * sol[0] + lin * qf
    return out, sol
