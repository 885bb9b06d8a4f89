import random
from fractions import Fraction

import pytest

from prymcubic import linalg
from prymcubic.binforms import BinaryForm, binary_gcd
from prymcubic.fields import Field, QQ, legendre
from prymcubic.fixtures import FIXTURES, fix_a, fix_q, fix_x
from prymcubic.poly import HomogPoly, SymMatrix, proportional
from prymcubic.prym import (PrymError, UnsupportedTower, conic_rational_point,
                            dual_quadric, forward_even, forward_general,
                            parametrize_conic, pencil_conics, reverse_construct,
                            roundtrip_change_matches, split_quadric)
from prymcubic.quadrics import factor_rank_le2

F11 = Field.prime(11)
F13 = Field.prime(13)
X4 = ("x0", "x1", "x2", "x3")
Y4 = ("y0", "y1", "y2", "y3")
Z3 = ("z0", "z1", "z2")


def quad(field, terms):
    return SymMatrix.from_quadratic_form(HomogPoly(field, X4, 2, terms))


def test_dual_quadric_rank4():
    d = dual_quadric(fix_q(QQ), QQ)
    assert d.rank == 4
    target = HomogPoly(QQ, Y4, 2, {(1, 1, 0, 0): 1, (0, 0, 1, 1): -1})
    assert proportional(d.matrix.quadratic_form(QQ, Y4), target)


def test_dual_quadric_rank3():
    q = quad(QQ, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1})
    d = dual_quadric(q, QQ)
    assert d.rank == 3
    assert d.vertex == (QQ.zero(), QQ.zero(), QQ.zero(), QQ.one())
    assert d.plane_form == HomogPoly.linear(QQ, Y4, [0, 0, 0, 1])
    target = HomogPoly(QQ, ("p0", "p1", "p2"), 2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
    assert proportional(d.plane_conic, target)


def test_dual_quadric_rank2_rejected():
    q = quad(QQ, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1})
    with pytest.raises(PrymError):
        dual_quadric(q, QQ)


def test_forward_general_seed_exact():
    fwd = forward_general(fix_a(QQ), fix_q(QQ))
    assert fwd.quartic == fix_x(QQ)
    assert fwd.reduced
    # second substitution path: contraction of the tensor against the dual form
    a = fix_a(QQ)
    dual_form = dual_quadric(fix_q(QQ), QQ).matrix.quadratic_form(QQ, Y4)
    again = dual_form.substitute(a.gauss_quadrics()).content_normalized()
    assert again == fwd.quartic


def test_forward_rejects_type7():
    E0, E1, E2, E3, Z = [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]
    from prymcubic.symmetroid import Symmetrization
    t7 = Symmetrization.from_entry_rows(QQ, [[E0, Z, Z], [Z, E1, E3], [Z, E3, E2]])
    with pytest.raises(PrymError):
        forward_general(t7, fix_q(QQ))


def test_forward_even_seed():
    a = fix_a(QQ)
    q = quad(QQ, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1})
    model = forward_even(a, q)
    conic_target = HomogPoly(QQ, Z3, 2, {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    assert proportional(model.conic, conic_target)
    branch_target = HomogPoly(QQ, Z3, 4, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})
    assert proportional(model.branch_quartic, branch_target)


def test_forward_even_vertex_on_surface_rejected():
    # kernel direction of the quadric meets the cubic: det(A) vanishes at e3
    # for the catalecticant of t^4 - 1
    from prymcubic.fixtures import fix_h
    a = fix_h(QQ)
    q = quad(QQ, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1})
    with pytest.raises(PrymError):
        forward_even(a, q)


def test_split_quadric_fast_path_permutation():
    sp = split_quadric(dual_quadric(fix_q(QQ), QQ).matrix, QQ)
    assert not sp.extended
    # permutation transforms have exactly one nonzero entry per column
    for col in range(4):
        nonzeros = [sp.transform[row][col] for row in range(4) if sp.transform[row][col]]
        assert len(nonzeros) == 1


def test_split_quadric_diagonal_pairs():
    q = quad(QQ, {(2, 0, 0, 0): 1, (0, 2, 0, 0): -1, (0, 0, 2, 0): 1, (0, 0, 0, 2): -4})
    sp = split_quadric(q, QQ)
    assert not sp.extended and sp.field == QQ


def test_split_quadric_needs_extension():
    # diag(1,1,1,1) over F_11: the stepwise pairing wants sqrt(-1), which
    # lives in F_121 (11 = 3 mod 4)
    q = quad(F11, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})
    sp = split_quadric(q, F11)
    assert sp.extended and sp.field.order() == 121


def test_split_quadric_unsupported_tower_over_q():
    q = quad(QQ, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 3})
    with pytest.raises(UnsupportedTower):
        split_quadric(q, QQ)


def test_pencil_conics_seed_is_documented_permutation():
    a = fix_a(QQ)
    pen = pencil_conics(a, fix_q(QQ))
    qs = a.gauss_quadrics()
    assert pen.c00 == qs[0]
    assert pen.c01 == qs[2]
    assert pen.c10 == qs[3]
    assert pen.c11 == qs[1]
    assert pen.scale == QQ.one()
    prod = pen.c00 * pen.c11 - pen.c01 * pen.c10
    assert prod == pen.quartic


def test_pencil_compatibility_random_fixtures():
    for name in ("t1", "t2", "t3", "biell"):
        fx = FIXTURES[name]
        for field in (QQ, F11):
            a = fx.symmetrization(field)
            q = fx.quadric(field)
            pen = pencil_conics(a, q)
            prod = pen.c00 * pen.c11 - pen.c01 * pen.c10
            quart = pen.quartic if not pen.extended else pen.quartic.change_field(pen.field)
            assert prod == quart * pen.scale


def test_reverse_roundtrip_all_fixture_types():
    for name in ("t1", "t2", "t3", "biell"):
        fx = FIXTURES[name]
        for field in (QQ, F13):
            a = fx.symmetrization(field)
            q = fx.quadric(field)
            fwd = forward_general(a, q)
            pen = pencil_conics(a, q)
            assert not pen.extended
            rev = reverse_construct(fwd.quartic, pen.conics(), pen.field)
            assert roundtrip_change_matches(a, q, pen, rev)
            if name == "biell":
                assert rev.kernel_relation is not None
                assert rev.symmetrization.classify() == "DegenerateCone"
            else:
                assert rev.kernel_relation is None


def test_reverse_scaled_conics_same_output():
    # rescaling a section of the first pencil scales its whole row of conics;
    # the rebuilt surfaces only move by the dual diagonal substitution
    fx = FIXTURES["t1"]
    a = fx.symmetrization(QQ)
    q = fx.quadric(QQ)
    fwd = forward_general(a, q)
    pen = pencil_conics(a, q)
    lam = QQ.element(Fraction(3, 2))
    scaled = (pen.c00 * lam, pen.c01 * lam, pen.c10, pen.c11)
    rev1 = reverse_construct(fwd.quartic, pen.conics(), QQ)
    rev2 = reverse_construct(fwd.quartic, scaled, QQ)
    change = _diag_change(QQ, [lam, lam, QQ.one(), QQ.one()])
    assert proportional(rev2.cubic, rev1.cubic.substitute(change))
    # the rank condition is the same Segre form in both presentations
    assert rev1.quadric_form == rev2.quadric_form
    assert proportional(rev2.quadric_form.substitute(change), rev1.quadric_form)


def _diag_change(field, scalars):
    RV4 = ("y00", "y01", "y10", "y11")
    return tuple(HomogPoly.linear(field, RV4,
                                  [scalars[i] if j == i else field.zero() for j in range(4)])
                 for i in range(4))


def test_reverse_rejects_incompatible():
    fx = FIXTURES["t1"]
    a = fx.symmetrization(QQ)
    q = fx.quadric(QQ)
    fwd = forward_general(a, q)
    pen = pencil_conics(a, q)
    bad = (pen.c00, pen.c01, pen.c10, pen.c11 + HomogPoly(QQ, Z3, 2, {(2, 0, 0): 1}))
    with pytest.raises(PrymError):
        reverse_construct(fwd.quartic, bad, QQ)


def test_parametrize_conic_and_points():
    conic = HomogPoly(F11, Z3, 2, {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    pt = conic_rational_point(conic, F11)
    assert pt is not None and not conic.evaluate(pt)
    param = parametrize_conic(conic, pt, F11)
    composed = conic.substitute(param)
    assert not composed
    # the parametrization hits q+1 distinct points
    seen = set()
    for s in range(11):
        vals = tuple(repr(c.evaluate([F11.element(s), F11.one()]).val) for c in param)
        seen.add(vals)
    vals = tuple(repr(c.evaluate([F11.one(), F11.zero()]).val) for c in param)
    seen.add(vals)
    assert len(seen) == 12


def test_partition_property_on_smooth_fixture():
    """A curve point's singular conic splits the two pencil fibers two-and-two."""
    fx = FIXTURES["t1"]
    checked = 0
    for prime in (11, 13, 17):
        field = Field.prime(prime)
        a = fx.symmetrization(field)
        q = fx.quadric(field)
        fwd = forward_general(a, q)
        gamma = a.determinant_cubic()
        qform = fx.quadric_form(field)
        dualm = dual_quadric(q, field).matrix
        checked += _partition_points(field, a, q, fwd, gamma, qform, dualm,
                                     25 - checked)
        if checked >= 25:
            break
    assert checked >= 25


def _partition_points(field, a, q, fwd, gamma, qform, dualm, want):
    Y4 = ("y0", "y1", "y2", "y3")
    checked = 0
    from prymcubic.oracle import projective_points
    for pt in projective_points(field, 3):
        if checked >= want:
            break
        p = list(pt)
        if qform.evaluate(p) or gamma.evaluate(p):
            continue
        conic_mat = a.contraction_at(p)
        if linalg.rank(conic_mat.rows()) != 2:
            continue
        pair = factor_rank_le2(conic_mat, field, Z3, allow_extension=False)
        if pair is None or pair.kind != "pair":
            continue  # tangent lines conjugate over the extension; skip
        # dual plane of p cut on the dual quadric: two ruling lines
        hplane = HomogPoly.linear(field, Y4, p)
        basis = linalg.kernel_basis([p], field)
        images = tuple(HomogPoly.linear(field, ("u0", "u1", "u2"),
                                        [basis[k][i] for k in range(3)])
                       for i in range(4))
        plane_conic = dualm.quadratic_form(field, Y4).substitute(images)
        ruling_pair = factor_rank_le2(SymMatrix.from_quadratic_form(plane_conic),
                                      field, ("u0", "u1", "u2"), allow_extension=False)
        if ruling_pair is None or ruling_pair.kind != "pair":
            continue
        fibers = []
        for lf in (ruling_pair.h1, ruling_pair.h2):
            # lift the dual line to space: points u with lf(u) = 0
            lcoeffs = [lf.terms.get(tuple(1 if k == i else 0 for k in range(3)),
                                    field.zero()) for i in range(3)]
            span = linalg.kernel_basis([lcoeffs], field)
            y_pts = []
            for vec in span:
                y = [linalg.sum_entries([basis[k][i] * vec[k] for k in range(3)])
                     for i in range(4)]
                y_pts.append(y)
            # two planes cutting the dual line
            ann = linalg.kernel_basis([y_pts[0], y_pts[1]], field)
            conics = []
            for phi in ann:
                acc = None
                for c, qq in zip(phi, a.gauss_quadrics()):
                    if c:
                        t = qq * c
                        acc = t if acc is None else acc + t
                conics.append(acc)
            fibers.append(conics)
        for line_form in (pair.h1, pair.h2):
            lc = [line_form.terms.get(tuple(1 if k == i else 0 for k in range(3)),
                                      field.zero()) for i in range(3)]
            span = linalg.kernel_basis([lc], field)
            quartic_restr = fwd.quartic.restrict_to_line(span[0], span[1])
            if not quartic_restr:
                continue
            total = BinaryForm.from_poly(quartic_restr)
            for fiber_conics in fibers:
                g = total
                for fc in fiber_conics:
                    restr = fc.restrict_to_line(span[0], span[1])
                    g = binary_gcd(g, BinaryForm.from_poly(restr))
                assert g.degree == 2
        checked += 1
    return checked


def test_even_octic_genus3_counts():
    fx = FIXTURES["even"]
    for p in (11, 13):
        F = Field.prime(p)
        model = forward_even(fx.symmetrization(F), fx.quadric(F))
        assert model.branch_reduced
        assert model.octic is not None and model.octic.degree == 8
        from prymcubic.oracle import count_hyperelliptic_octic
        rep = count_hyperelliptic_octic(model.octic, F)
        assert rep.weil_ok


def test_even_octic_twist_is_split_class():
    # the octic equals -(envelope pullback) up to squares: check the square
    # class of the ratio at a probe value
    fx = FIXTURES["even"]
    F = Field.prime(13)
    a = fx.symmetrization(F)
    q = fx.quadric(F)
    model = forward_even(a, q)
    raw = (-model.branch_quartic).substitute(model.parametrization)
    raw_form = BinaryForm.from_poly(raw)
    for s in range(13):
        v1 = raw_form.evaluate(F.element(s), F.one())
        v2 = model.octic.evaluate(F.element(s), F.one())
        if v1 and v2:
            assert legendre(v1 / v2) == 1
            break


def test_pullback_identity_second_evaluation_path():
    # sample points: the quartic value equals the dual form evaluated on the
    # conic values taken straight from the tensor contraction
    fx = FIXTURES["t2"]
    for field in (F11, F13):
        a = fx.symmetrization(field)
        q = fx.quadric(field)
        fwd = forward_general(a, q)
        dual = dual_quadric(q, field)
        dual_form = dual.matrix.quadratic_form(field, Y4)
        scale = fwd.raw_scale
        rng = random.Random(field.p)
        basis = [[field.element(1 if j == k else 0) for j in range(4)] for k in range(4)]
        for _ in range(20):
            z = [field.random(rng) for _ in range(3)]
            # conic values through the matrix-of-forms view of the tensor
            w = [a.contraction_at(basis[k]).qform(z) for k in range(4)]
            lhs = fwd.quartic.evaluate(z) * scale
            rhs = dual_form.evaluate(w)
            assert lhs == rhs


def test_random_roundtrips_over_f13():
    # random catalecticant webs with random two-term quadrics: whenever the
    # whole pipeline runs, the roundtrip identity must hold exactly
    from prymcubic.symmetroid import hankel_symmetroid
    rng = random.Random(2024)
    successes = 0
    for _ in range(40):
        if successes >= 8:
            break
        coeffs = [rng.randrange(13) for _ in range(4)]
        m = rng.randrange(1, 13)
        a = hankel_symmetroid(F13, coeffs)
        q = quad(F13, {(1, 1, 0, 0): 1, (0, 0, 1, 1): -m})
        try:
            fwd = forward_general(a, q)
            pen = pencil_conics(a, q)
            rev = reverse_construct(
                fwd.quartic if not pen.extended else fwd.quartic.change_field(pen.field),
                pen.conics(), pen.field)
        except PrymError:
            continue
        assert roundtrip_change_matches(a, q, pen, rev)
        successes += 1
    assert successes >= 8


def test_even_branch_reducedness_without_rational_point():
    # the even-bielliptic conic is pointless over the rationals; reducedness
    # of the branch scheme is still certified through a resultant frame
    fx = FIXTURES["even_biell"]
    model = forward_even(fx.symmetrization(QQ), fx.quadric(QQ))
    assert model.octic is None
    assert model.branch_reduced is True
    fx2 = FIXTURES["even"]
    model2 = forward_even(fx2.symmetrization(QQ), fx2.quadric(QQ))
    # this conic has rational points, so the chart path certifies instead
    assert model2.octic is not None and model2.branch_reduced


def test_random_general_webs_roundtrip():
    from prymcubic.symmetroid import Symmetrization
    rng = random.Random(515)
    successes = 0
    for _ in range(60):
        if successes >= 10:
            break
        rows = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                f = HomogPoly.linear(F13, ("x0", "x1", "x2", "x3"),
                                     [F13.random(rng) for _ in range(4)])
                rows[i][j] = rows[j][i] = f
        a = Symmetrization(F13, SymMatrix.from_rows(rows))
        q = quad(F13, {(1, 1, 0, 0): 1, (0, 0, 1, 1): -rng.randrange(1, 13)})
        try:
            fwd = forward_general(a, q)
            pen = pencil_conics(a, q)
            rev = reverse_construct(
                fwd.quartic if not pen.extended else fwd.quartic.change_field(pen.field),
                pen.conics(), pen.field)
        except PrymError:
            continue
        assert roundtrip_change_matches(a, q, pen, rev)
        successes += 1
    assert successes >= 10
