import random

import pytest

from prymcubic import linalg
from prymcubic.fields import Field, QQ
from prymcubic.poly import HomogPoly, SymMatrix, proportional
from prymcubic.symmetroid import (Symmetrization, SymmetroidError, SymmetroidType,
                                  cayley_normal_form, hankel_symmetroid,
                                  quotient_plane_form)

F11 = Field.prime(11)
F13 = Field.prime(13)
X4 = ("x0", "x1", "x2", "x3")
Z3 = ("z0", "z1", "z2")

E0 = [1, 0, 0, 0]
E1 = [0, 1, 0, 0]
E2 = [0, 0, 1, 0]
E3 = [0, 0, 0, 1]
ZERO = [0, 0, 0, 0]


def neg(v):
    return [-c for c in v]


NORMAL_FORMS = {
    SymmetroidType.T1: [[E0, E3, E3], [E3, E1, E3], [E3, E3, E2]],
    SymmetroidType.T2: [[E0, E3, neg(E3)], [E3, E1, ZERO], [neg(E3), ZERO, E2]],
    SymmetroidType.T3: [[E0, E2, ZERO], [E2, E1, E3], [ZERO, E3, neg(E2)]],
    SymmetroidType.T4: [[E0, neg(E3), E2], [neg(E3), E1, E3], [E2, E3, ZERO]],
    SymmetroidType.T5: [[ZERO, E2, E0], [E2, neg(E0), E3], [E0, E3, E1]],
    SymmetroidType.T6: [[ZERO, E1, E3], [E1, ZERO, E2], [E3, E2, E0]],
    SymmetroidType.T7: [[E0, ZERO, ZERO], [ZERO, E1, E3], [ZERO, E3, E2]],
    SymmetroidType.T8: [[ZERO, ZERO, E2], [ZERO, E0, E3], [E2, E3, E1]],
}


def build(field, rows):
    return Symmetrization.from_entry_rows(field, rows)


def fix_a(field):
    return build(field, NORMAL_FORMS[SymmetroidType.T1])


def diag_degenerate(field):
    return build(field, [[E0, ZERO, ZERO], [ZERO, E1, ZERO], [ZERO, ZERO, E2]])


def test_determinant_cubic_examples():
    a = fix_a(QQ)
    det = a.determinant_cubic()
    expected = HomogPoly(QQ, X4, 3, {(1, 1, 1, 0): 1, (0, 0, 0, 3): 2,
                                     (1, 0, 0, 2): -1, (0, 1, 0, 2): -1, (0, 0, 1, 2): -1})
    assert det == expected
    t7 = build(QQ, NORMAL_FORMS[SymmetroidType.T7])
    det7 = t7.determinant_cubic()
    blk = HomogPoly(QQ, X4, 3, {(1, 1, 1, 0): 1, (1, 0, 0, 2): -1})
    assert det7 == blk
    assert diag_degenerate(QQ).determinant_cubic() == HomogPoly(QQ, X4, 3, {(1, 1, 1, 0): 1})


def test_contraction_kernel():
    assert fix_a(QQ).contraction_kernel() == []
    k = diag_degenerate(QQ).contraction_kernel()
    assert len(k) == 1 and proportional(
        HomogPoly.linear(QQ, X4, k[0]), HomogPoly.linear(QQ, X4, [0, 0, 0, 1]))
    zero = build(QQ, [[ZERO] * 3] * 3)
    assert len(zero.contraction_kernel()) == 4
    # 6x4 coefficient matrix of the quadric vector has rank 4
    assert linalg.rank(fix_a(QQ).coefficient_matrix()) == 4


def test_gauss_quadrics_examples():
    qs = fix_a(QQ).gauss_quadrics()
    assert qs[0] == HomogPoly(QQ, Z3, 2, {(2, 0, 0): 1})
    assert qs[3] == HomogPoly(QQ, Z3, 2, {(1, 1, 0): 2, (1, 0, 1): 2, (0, 1, 1): 2})
    qs6 = build(QQ, NORMAL_FORMS[SymmetroidType.T6]).gauss_quadrics()
    assert qs6[0] == HomogPoly(QQ, Z3, 2, {(0, 0, 2): 1})
    assert qs6[1] == HomogPoly(QQ, Z3, 2, {(1, 1, 0): 2})
    assert qs6[2] == HomogPoly(QQ, Z3, 2, {(0, 1, 1): 2})
    assert qs6[3] == HomogPoly(QQ, Z3, 2, {(1, 0, 1): 2})
    # pullback of a dual form recovers the conic of its matrix
    a = fix_a(F11)
    v = [F11.element(c) for c in (3, 1, 4, 5)]
    conic = a.contraction_at(v).quadratic_form(F11, Z3)
    pullback = None
    for c, q in zip(v, a.gauss_quadrics()):
        t = q * c
        pullback = t if pullback is None else pullback + t
    assert pullback == conic


def test_annihilation_exact_random():
    rng = random.Random(23)
    for field, trials in ((F11, 60), (QQ, 10)):
        for _ in range(trials):
            rows = [[None] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(i, 3):
                    f = HomogPoly.linear(field, X4, [field.random(rng) for _ in range(4)])
                    rows[i][j] = rows[j][i] = f
            a = Symmetrization(field, SymMatrix.from_rows(rows))
            try:
                assert a.annihilation_holds()
            except SymmetroidError:
                pass  # identically-zero adjugate: nothing to check


def test_adjugate_lands_on_symmetroid():
    for field in (QQ, F11):
        a = fix_a(field)
        det = a.determinant_cubic()
        cub = a.adjugate_cubics()
        comp = det.substitute(cub)
        assert not comp


def test_gauss_identity_types_1_to_6():
    for tag in (SymmetroidType.T1, SymmetroidType.T2, SymmetroidType.T3,
                SymmetroidType.T4, SymmetroidType.T5, SymmetroidType.T6):
        a = build(F11, NORMAL_FORMS[tag])
        det = a.determinant_cubic()
        cub = a.adjugate_cubics()
        composed = [g.substitute(cub) for g in det.gradient()]
        qs = a.gauss_quadrics()
        for i in range(4):
            for j in range(i + 1, 4):
                assert composed[i] * qs[j] == composed[j] * qs[i]


def test_type7_adjugate_image_is_singular_conic():
    a = build(QQ, NORMAL_FORMS[SymmetroidType.T7])
    cub = a.adjugate_cubics()
    # singular locus of the block cubic: x0 = 0, x1 x2 = x3^2
    x0 = HomogPoly.linear(QQ, X4, [1, 0, 0, 0])
    q = HomogPoly(QQ, X4, 2, {(0, 1, 1, 0): 1, (0, 0, 0, 2): -1})
    assert not x0.substitute(cub)
    assert not q.substitute(cub)


def test_classification_normal_forms():
    for field in (F11, F13):
        for tag, rows in NORMAL_FORMS.items():
            assert build(field, rows).classify() == tag
    for tag in (SymmetroidType.T1, SymmetroidType.T2, SymmetroidType.T3,
                SymmetroidType.T4, SymmetroidType.T5):
        assert build(QQ, NORMAL_FORMS[tag]).classify() == tag
    # over Q the reducible answers may be refined or unclassified, never wrong
    for tag in (SymmetroidType.T6, SymmetroidType.T7, SymmetroidType.T8):
        got = build(QQ, NORMAL_FORMS[tag]).classify()
        assert got in (tag, SymmetroidType.REDUCIBLE_UNCLASSIFIED)


def test_rank_one_scheme_examples():
    assert fix_a(F11).rank_one_scheme().partition == [1, 1, 1, 1]
    s3 = build(F11, NORMAL_FORMS[SymmetroidType.T3]).rank_one_scheme()
    assert s3.partition == [3, 1]
    s7 = build(F11, NORMAL_FORMS[SymmetroidType.T7]).rank_one_scheme()
    assert s7.positive_dimensional
    with pytest.raises(SymmetroidError):
        diag_degenerate(QQ).rank_one_scheme()


def test_classify_degenerate():
    assert diag_degenerate(QQ).classify() == SymmetroidType.DEGENERATE_SINGULAR
    # generic three-conic pencil: smooth plane cubic base
    rows = [[E0, E2, ZERO], [E2, E1, E2], [ZERO, E2, [1, 1, 0, 0]]]
    a = build(QQ, rows)
    assert len(a.contraction_kernel()) == 1
    e = a.project_from_vertex()
    assert e.cubic.degree == 3 and len(e.cubic.vars) == 3
    got = a.classify()
    assert got in (SymmetroidType.DEGENERATE_CONE, SymmetroidType.DEGENERATE_SINGULAR)
    assert got == (SymmetroidType.DEGENERATE_CONE if e.smooth
                   else SymmetroidType.DEGENERATE_SINGULAR)
    with pytest.raises(SymmetroidError):
        fix_a(QQ).project_from_vertex()
    det_sym = linalg.det(e.sym.rows())
    assert proportional(det_sym, e.cubic)


def test_double_cover_minors():
    a = fix_a(QQ)
    m12, m13, m23, cert = a.double_cover_minors()
    assert cert
    assert m12 == HomogPoly(QQ, X4, 2, {(0, 0, 0, 2): 1, (1, 1, 0, 0): -1})
    assert m13 == HomogPoly(QQ, X4, 2, {(0, 0, 0, 2): 1, (1, 0, 1, 0): -1})
    assert m23 == HomogPoly(QQ, X4, 2, {(0, 0, 0, 2): 1, (0, 1, 1, 0): -1})
    d = diag_degenerate(QQ)
    n12, n13, n23, cert2 = d.double_cover_minors()
    assert cert2
    assert n12 == HomogPoly(QQ, X4, 2, {(1, 1, 0, 0): -1})
    # identity matrix times x0: cover split everywhere
    i0 = build(QQ, [[E0, ZERO, ZERO], [ZERO, E0, ZERO], [ZERO, ZERO, E0]])
    s12, s13, s23, cert3 = i0.double_cover_minors()
    assert cert3
    for m in (s12, s13, s23):
        assert m == HomogPoly(QQ, X4, 2, {(2, 0, 0, 0): -1})


def test_minor_relation_random():
    rng = random.Random(31)
    for _ in range(40):
        rows = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                f = HomogPoly.linear(F13, X4, [F13.random(rng) for _ in range(4)])
                rows[i][j] = rows[j][i] = f
        a = Symmetrization(F13, SymMatrix.from_rows(rows))
        assert a.double_cover_minors()[3]


def test_prym_canonical_point():
    a = fix_a(F11)
    det = a.determinant_cubic()
    # search a rank-2 point on the symmetroid over F_11
    found = None
    for x1 in range(11):
        for x2 in range(11):
            for x3 in range(11):
                p = [F11.one(), F11.element(x1), F11.element(x2), F11.element(x3)]
                if det.evaluate(p):
                    continue
                if linalg.rank(a.contraction_at(p).rows()) == 2:
                    found = p
                    break
            if found:
                break
        if found:
            break
    assert found is not None
    z = a.prym_canonical_point(found)
    cub = a.adjugate_cubics()
    image = [c.evaluate(z) for c in cub]
    assert proportional(HomogPoly.linear(F11, X4, image),
                        HomogPoly.linear(F11, X4, found))
    # a node has rank 1: rejected
    with pytest.raises(SymmetroidError):
        a.prym_canonical_point([F11.one(), F11.zero(), F11.zero(), F11.zero()])
    # off the surface: det = 1 + 16 - 12 = 5 mod 11, rejected
    with pytest.raises(SymmetroidError):
        a.prym_canonical_point([F11.one(), F11.one(), F11.one(), F11.element(2)])


def test_birationality_sample():
    rng = random.Random(91)
    for tag in (SymmetroidType.T1, SymmetroidType.T2, SymmetroidType.T3,
                SymmetroidType.T4, SymmetroidType.T5):
        a = build(F13, NORMAL_FORMS[tag])
        det = a.determinant_cubic()
        cub = a.adjugate_cubics()
        hits = 0
        tries = 0
        while hits < 20 and tries < 4000:
            tries += 1
            p = [F13.one()] + [F13.random(rng) for _ in range(3)]
            if det.evaluate(p):
                continue
            if linalg.rank(a.contraction_at(p).rows()) != 2:
                continue
            z = a.prym_canonical_point(p)
            image = [c.evaluate(z) for c in cub]
            if not any(image):
                continue  # base point of the cubic map; undefined there
            assert proportional(HomogPoly.linear(F13, X4, image),
                                HomogPoly.linear(F13, X4, p))
            hits += 1
        assert hits == 20


def test_hankel_fix_h():
    h = hankel_symmetroid(QQ, [-1, 0, 0, 0])
    m = h.matrix
    assert m.at(2, 2) == HomogPoly.linear(QQ, X4, [1, 0, 0, 0])
    assert m.at(0, 0) == HomogPoly.linear(QQ, X4, [1, 0, 0, 0])
    assert m.at(1, 2) == HomogPoly.linear(QQ, X4, [0, 0, 0, 1])
    det = h.determinant_cubic()
    grad = det.gradient()
    for t in (QQ.element(1), QQ.element(-1)):
        pt = [QQ.one(), t, t * t, t * t * t]
        assert all(not g.evaluate(pt) for g in grad)
    # over F_13, i = 5 is a 4th root of unity
    h13 = hankel_symmetroid(F13, [-1, 0, 0, 0])
    g13 = h13.determinant_cubic().gradient()
    for t in (F13.element(1), F13.element(12), F13.element(5), F13.element(8)):
        pt = [F13.one(), t, t * t, t * t * t]
        assert all(not g.evaluate(pt) for g in g13)


def test_hankel_classification_table():
    shapes = {
        SymmetroidType.T1: [-1, 0, 0, 0],            # t^4 - 1 separable
        SymmetroidType.T2: [0, 0, 1, 0],             # t^2 (t^2 + 1)
        SymmetroidType.T3: [0, 0, 0, -1],            # t^3 (t - 1)
        SymmetroidType.T4: [1, 0, 2, 0],             # (t^2 + 1)^2
        SymmetroidType.T5: [0, 0, 0, 0],             # t^4
    }
    for field in (F11, F13):
        for tag, coeffs in shapes.items():
            assert hankel_symmetroid(field, coeffs).classify() == tag
    assert hankel_symmetroid(QQ, [-1, 0, 0, 0]).classify() == SymmetroidType.T1
    assert hankel_symmetroid(F13, [-1, 0, 0, 0]).classify() == SymmetroidType.T1


def test_cayley_normal_form_standard_model():
    # roots {0, 1, -1, 2}: f = t^4 - 2t^3 - t^2 + 2t; Lagrange-style h gives
    # the standard four-term cubic
    f = [0, 2, -1, -2]

    def lagrange_h():
        import fractions
        roots = [0, 1, -1, 2]
        cols = []
        for j, rj in enumerate(roots):
            num = [fractions.Fraction(1)]
            den = fractions.Fraction(1)
            for i, ri in enumerate(roots):
                if i == j:
                    continue
                num = [c * fractions.Fraction(-ri) for c in num] + [fractions.Fraction(0)]
                num = [a + b for a, b in zip(num, [fractions.Fraction(0)] + num[:-1])] if False else num
                den *= (rj - ri)
            # multiply linear factors properly
            poly = [fractions.Fraction(1)]
            for i, ri in enumerate(roots):
                if i == j:
                    continue
                poly = [fractions.Fraction(0)] + poly
                poly = [a - fractions.Fraction(ri) * b
                        for a, b in zip(poly, poly[1:] + [fractions.Fraction(0)])] if False else poly
            # direct expansion
            poly = [fractions.Fraction(1)]
            for i, ri in enumerate(roots):
                if i == j:
                    continue
                poly = [fractions.Fraction(0)] + poly
                lower = [-fractions.Fraction(ri) * c for c in poly[1:]] + [fractions.Fraction(0)]
                poly = [a + b for a, b in zip(poly, lower)]
            cols.append([c / den for c in poly])
        return cols

    h = lagrange_h()
    cubic = cayley_normal_form(QQ, f, h)
    target = HomogPoly(QQ, X4, 3, {(1, 1, 1, 0): 1, (1, 1, 0, 1): 1,
                                   (1, 0, 1, 1): 1, (0, 1, 1, 1): 1})
    assert proportional(cubic, target)


def test_cayley_normal_form_singular_points():
    f = [0, 2, -1, -2]  # roots 0, 1, -1, 2
    h = quotient_plane_form(QQ, f)
    cubic = cayley_normal_form(QQ, f, h)
    grad = cubic.gradient()
    for t in (0, 1, -1, 2):
        te = QQ.element(t)
        pt = [QQ.one(), te, te * te, te * te * te]
        assert all(not g.evaluate(pt) for g in grad)


def test_cayley_normal_form_scaling_covariance():
    f = [0, 2, -1, -2]
    h = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    c1 = cayley_normal_form(QQ, f, h)
    h2 = [[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3]]
    c2 = cayley_normal_form(QQ, f, h2)
    assert proportional(c1, c2)
    with pytest.raises(SymmetroidError):
        cayley_normal_form(QQ, [0, 0, 0, 0], h)


def test_zero_web_adjugate_flagged():
    zero = build(QQ, [[ZERO] * 3] * 3)
    with pytest.raises(SymmetroidError):
        zero.adjugate_cubics()
    # the identically-zero determinant is flagged, not typed
    assert zero.classify() == SymmetroidType.REDUCIBLE_UNCLASSIFIED
