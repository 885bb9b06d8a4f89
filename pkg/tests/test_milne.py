import pytest

from prymcubic import linalg
from prymcubic.fields import Field, QQ
from prymcubic.fixtures import FIXTURES, fix_a
from prymcubic.milne import (Line2, MilneError, contact_points_match,
                             cubic_through_curve_and_twisted, enveloping_cone,
                             reducible_member, tritangent_verify, twisted_cubic)
from prymcubic.oracle import _dual_lines_int, enumerate_bitangents
from prymcubic.poly import HomogPoly, proportional
from prymcubic.prym import forward_general

F11 = Field.prime(11)
X4 = ("x0", "x1", "x2", "x3")
Z3 = ("z0", "z1", "z2")


def test_enveloping_cone_seed_line():
    # the line z2 = 0 against the classical seed: the envelope is a
    # double-cover minor locus
    a = fix_a(QQ)
    line = Line2(QQ, [1, 0, 0], [0, 1, 0])
    cone = enveloping_cone(a, line)
    target = HomogPoly(QQ, X4, 2, {(0, 0, 0, 2): 4, (1, 1, 0, 0): -4})
    assert proportional(cone.form, target)
    assert cone.rank < 4
    assert not cone.matrix.det()


def test_enveloping_cone_rejects_base_line():
    # type (7):0-entry pattern collapses the image of the line z0 = 0
    from prymcubic.symmetroid import Symmetrization
    E0, E1, E2, E3, Z = [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]
    t7 = Symmetrization.from_entry_rows(QQ, [[E0, Z, Z], [Z, E1, E3], [Z, E3, E2]])
    line = Line2(QQ, [0, 1, 0], [0, 0, 1])
    with pytest.raises(MilneError):
        enveloping_cone(t7, line)


def test_reducible_member_degenerate_pencil():
    a = fix_a(QQ)
    line = Line2(QQ, [1, 0, 0], [0, 1, 0])
    cone = enveloping_cone(a, line)
    with pytest.raises(MilneError):
        reducible_member(cone.matrix, cone.matrix.scale(QQ.element(3)), QQ)


def _milne_scan(fixture_name, p):
    F = Field.prime(p)
    fx = FIXTURES[fixture_name]
    a = fx.symmetrization(F)
    q = fx.quadric(F)
    fwd = forward_general(a, q)
    gamma = a.determinant_cubic()
    oracle = set()
    for bl in enumerate_bitangents(fwd.quartic, F):
        line = Line2(F, bl.p0, bl.p1)
        try:
            enveloping_cone(a, line)
        except MilneError:
            continue
        oracle.add(tuple(repr(c.val) for c in bl.dual))
    detected = {}
    for dual in _dual_lines_int(p):
        dual_el = tuple(F.element(c) for c in dual)
        line = Line2.from_dual(F, dual)
        try:
            cone = enveloping_cone(a, line)
        except MilneError:
            continue
        mem = reducible_member(cone.matrix, q, F)
        if mem is not None and mem.kind == "pair":
            detected[tuple(repr(c.val) for c in dual_el)] = (line, mem)
    return a, q, fwd, gamma, oracle, detected


def test_bijection_t1_f11():
    a, q, fwd, gamma, oracle, detected = _milne_scan("t1", 11)
    assert set(detected) == oracle
    assert len(oracle) >= 3
    for key, (line, mem) in detected.items():
        assert not proportional(mem.h1, mem.h2)
        for h in (mem.h1, mem.h2):
            cert = tritangent_verify(q, gamma, h)
            assert cert.passed
        tw = twisted_cubic(a, line)
        assert tw.honest


def test_contact_points_on_twisted_cubic():
    a, q, fwd, gamma, oracle, detected = _milne_scan("t1", 11)
    hits = 0
    for key, (line, mem) in detected.items():
        tw = twisted_cubic(a, line)
        for h in (mem.h1, mem.h2):
            cert = tritangent_verify(q, gamma, h)
            if cert.contact is None:
                continue
            assert contact_points_match(h, tw, cert.contact, cert.conic_param,
                                        cert.plane_basis)
            hits += 1
    assert hits >= 4


def test_envelope_contains_the_two_conics():
    """The two tritangent planes slice the quadric in conics lying on the
    envelope: the envelope restricted to each parametrized conic vanishes."""
    a, q, fwd, gamma, oracle, detected = _milne_scan("t1", 11)
    F = F11
    for key, (line, mem) in detected.items():
        cone = enveloping_cone(a, line)
        for h in (mem.h1, mem.h2):
            cert = tritangent_verify(q, gamma, h)
            if cert.conic_param is None:
                continue
            work = cert.conic_param[0].field
            lifted = []
            for i in range(4):
                acc = None
                for k in range(3):
                    c = cert.plane_basis[k][i]
                    if c:
                        t = cert.conic_param[k] * c
                        acc = t if acc is None else acc + t
                lifted.append(acc if acc is not None
                              else HomogPoly.zero(work, ("s", "t"), 2))
            cform = cone.form if cone.form.field == work else cone.form.change_field(work)
            restricted = cform.substitute(tuple(lifted))
            assert not restricted


def test_envelope_vanishes_exactly_on_prym_line_points():
    checked = 0
    from prymcubic.oracle import projective_points
    for prime in (11, 13, 17, 19):
        F = Field.prime(prime)
        a, q, fwd, gamma, oracle, detected = _milne_scan("t1", prime)
        if not detected:
            continue
        qform = FIXTURES["t1"].quadric_form(F)
        (key, (line, mem)) = sorted(detected.items())[0]
        cone = enveloping_cone(a, line)
        dualf = linalg.kernel_basis([[c for c in line.p0], [c for c in line.p1]], F)[0]
        for pt in projective_points(F, 3):
            if checked >= 20:
                break
            p = list(pt)
            if qform.evaluate(p) or gamma.evaluate(p):
                continue
            m = a.contraction_at(p)
            if linalg.rank(m.rows()) != 2:
                continue
            z = a.prym_canonical_point(p)
            on_line = not linalg.sum_entries([c * v for c, v in zip(dualf, z)])
            vanishes = not cone.form.evaluate(p)
            assert on_line == vanishes
            checked += 1
        if checked >= 20:
            break
    assert checked == 20


def test_twisted_cubic_seed_line():
    # the seed line z2 = 0 runs through base points: the image collapses onto
    # a node, the on-surface identity still holds, strict mode refuses it
    a = fix_a(F11)
    line = Line2(F11, [1, 0, 0], [0, 1, 0])
    tw = twisted_cubic(a, line)
    det = a.determinant_cubic()
    assert not det.substitute(tw.components)
    assert not tw.honest
    with pytest.raises(MilneError):
        twisted_cubic(a, line, strict=True)
    # a genuinely generic line gives an honest twisted cubic
    from prymcubic.milne import line_is_generic
    found = None
    for b in range(11):
        cand = Line2.from_dual(F11, (1, 3, b))
        if line_is_generic(a, cand):
            found = cand
            break
    assert found is not None
    tw2 = twisted_cubic(a, found, strict=True)
    assert tw2.honest
    assert not det.substitute(tw2.components)


def test_unique_cubic_through_curve_and_twisted():
    a, q, fwd, gamma, oracle, detected = _milne_scan("t1", 11)
    count = 0
    for key, (line, mem) in sorted(detected.items()):
        tw = twisted_cubic(a, line)
        out, sol = cubic_through_curve_and_twisted(q, gamma, tw, F11)
        assert sol[0]
        assert proportional(out, gamma)
        count += 1
    assert count >= 3


def test_unique_cubic_negative_control():
    # four random points not on a mutual cubic-with-C: no nonzero solution
    fx = FIXTURES["t1"]
    a = fx.symmetrization(F11)
    q = fx.quadric(F11)
    gamma = a.determinant_cubic()
    qf = q.quadratic_form(F11, X4)
    pts = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 2, 3, 4]]
    rows = []
    for praw in pts:
        p = [F11.element(c) for c in praw]
        qv = qf.evaluate(p)
        rows.append([gamma.evaluate(p)] + [qv * p[i] for i in range(4)])
    kernel = linalg.kernel_basis(rows, F11)
    for v in kernel:
        assert not v[0]  # no cubic proportional to gamma survives


def test_dimension_count_three_conditions():
    a, q, fwd, gamma, oracle, detected = _milne_scan("t1", 11)
    (key, (line, mem)) = sorted(detected.items())[0]
    tw = twisted_cubic(a, line)
    qf = q.quadratic_form(F11, X4)
    rows = []
    for (s0, t0) in [(1, 0), (0, 1), (1, 1)]:
        se, te = F11.element(s0), F11.element(t0)
        pt = [c.evaluate([se, te]) for c in tw.components]
        qv = qf.evaluate(pt)
        rows.append([gamma.evaluate(pt)] + [qv * pt[i] for i in range(4)])
    assert len(linalg.kernel_basis(rows, F11)) == 2


def test_envelope_tangent_along_twisted_cubic():
    # the envelope touches the symmetroid all along the image of the line:
    # gradients composed with the parametrized cubic stay proportional
    fx = FIXTURES["t1"]
    a = fx.symmetrization(F11)
    gamma = a.determinant_cubic()
    tested = 0
    for b in range(11):
        line = Line2.from_dual(F11, (1, 5, b))
        from prymcubic.milne import line_is_generic
        if not line_is_generic(a, line):
            continue
        cone = enveloping_cone(a, line)
        tw = twisted_cubic(a, line, strict=True)
        grads_l = [g.substitute(tw.components) for g in cone.form.gradient()]
        grads_g = [g.substitute(tw.components) for g in gamma.gradient()]
        for i in range(4):
            for j in range(i + 1, 4):
                assert grads_l[i] * grads_g[j] == grads_l[j] * grads_g[i]
        tested += 1
        if tested >= 3:
            break
    assert tested >= 3


def test_tritangent_verify_tangent_plane_path():
    # a plane tangent to the quadric slices it in two rulings; the reducible
    # branch of the verifier must run and flag the split conic
    from prymcubic.fixtures import fix_q
    a = fix_a(F11)
    gamma = a.determinant_cubic()
    h = HomogPoly.linear(F11, X4, [0, 1, 0, 0])  # tangent to x0x1 - x2x3 at (1:0:0:0)
    cert = tritangent_verify(fix_q(F11), gamma, h)
    assert cert.reducible_conic
    assert isinstance(cert.passed, bool)


def test_tritangent_verify_negative_control():
    # coordinate planes of the t1 fixture are not tritangents
    fx = FIXTURES["t1"]
    a = fx.symmetrization(F11)
    q = fx.quadric(F11)
    gamma = a.determinant_cubic()
    results = []
    for coeffs in ([1, 0, 0, 0], [0, 0, 1, 0], [1, 1, 1, 1], [1, 2, 3, 4]):
        h = HomogPoly.linear(F11, X4, coeffs)
        cert = tritangent_verify(q, gamma, h)
        results.append(cert.passed)
    assert not any(results)


def test_bijection_more_fixtures_and_primes():
    for name, p in (("t3", 11), ("t1", 13)):
        a, q, fwd, gamma, oracle, detected = _milne_scan(name, p)
        assert set(detected) == oracle
