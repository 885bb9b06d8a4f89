"""Homogeneous multivariate polynomials with exact coefficients, and symmetric
matrices whose entries are scalars or forms.

Terms are kept in a dict mapping exponent tuples (summing to the declared
degree) to nonzero field elements; iteration order is sorted wherever output
must be reproducible.  Projective comparisons go through cross-multiplication
(:func:`proportional`) rather than leading-coefficient normalization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .fields import FieldElement, FieldError


class PolyError(ValueError):
    pass


class HomogPoly:
    __slots__ = ("field", "vars", "degree", "terms")

    def __init__(self, field, vars, degree, terms=None, _clean=False):
        self.field = field
        self.vars = tuple(vars)
        self.degree = degree
        if terms is None:
            terms = {}
        if not _clean:
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != len(self.vars) or sum(e) != degree or any(k < 0 for k in e):
                    raise PolyError("exponent %r incompatible with degree %d in %d vars"
                                    % (e, degree, len(self.vars)))
                c = field.element(c)
                if c:
                    clean[e] = c
            terms = clean
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field, vars, degree):
        return HomogPoly(field, vars, degree, {}, _clean=True)

    @staticmethod
    def monomial(field, vars, exps, coeff=1):
        return HomogPoly(field, vars, sum(exps), {tuple(exps): coeff})

    @staticmethod
    def linear(field, vars, coeffs):
        """Linear form from a coefficient vector."""
        n = len(vars)
        terms = {}
        for i, c in enumerate(coeffs):
            e = tuple(1 if j == i else 0 for j in range(n))
            terms[e] = c
        return HomogPoly(field, vars, 1, terms)

    def coefficient_vector(self, monomials):
        return [self.terms.get(tuple(m), self.field.zero()) for m in monomials]

    def monomials_sorted(self):
        return sorted(self.terms, reverse=True)

    # -- ring structure ----------------------------------------------------

    def _check_compatible(self, other):
        if self.field != other.field or self.vars != other.vars:
            raise PolyError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, FieldElement) or isinstance(other, int):
            if self.degree != 0:
                raise PolyError("cannot add scalar to a positive-degree form")
            other = HomogPoly(self.field, self.vars, 0, {(0,) * len(self.vars): other})
        self._check_compatible(other)
        if self.degree != other.degree:
            if not self.terms:
                return HomogPoly(other.field, other.vars, other.degree, dict(other.terms), _clean=True)
            if not other.terms:
                return HomogPoly(self.field, self.vars, self.degree, dict(self.terms), _clean=True)
            raise PolyError("degree mismatch %d vs %d" % (self.degree, other.degree))
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return HomogPoly(self.field, self.vars, self.degree, out, _clean=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomogPoly(self.field, self.vars, self.degree,
                         {e: -c for e, c in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            c = self.field.element(other)
            if not c:
                return HomogPoly.zero(self.field, self.vars, self.degree)
            return HomogPoly(self.field, self.vars, self.degree,
                             {e: k * c for e, k in self.terms.items()}, _clean=True)
        self._check_compatible(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return HomogPoly(self.field, self.vars, self.degree + other.degree, out, _clean=True)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (self.field == other.field and self.vars == other.vars
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.vars, self.degree,
                     tuple(sorted((e, repr(c.val)) for e, c in self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in self.monomials_sorted():
            c = self.terms[e]
            mono = "*".join("%s^%d" % (v, k) if k > 1 else v
                            for v, k in zip(self.vars, e) if k)
            bits.append("%r%s" % (c, "*" + mono if mono else ""))
        return " + ".join(bits)

    # -- calculus and evaluation --------------------------------------------

    def evaluate(self, point):
        if len(point) != len(self.vars):
            raise PolyError("point has wrong length")
        point = [self.field.element(x) for x in point]
        total = self.field.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def partial(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return HomogPoly(self.field, self.vars, max(self.degree - 1, 0), out)

    def gradient(self):
        if self.degree < 1:
            raise PolyError("gradient needs degree >= 1")
        return tuple(self.partial(i) for i in range(len(self.vars)))

    def substitute(self, images):
        """Plug one homogeneous form per variable; all images of one degree."""
        if len(images) != len(self.vars):
            raise PolyError("need one image per variable")
        if not images:
            raise PolyError("empty variable set")
        e0 = images[0].degree
        for g in images:
            if g.degree != e0:
                raise PolyError("images must share a common degree")
            if g.field != self.field or g.vars != images[0].vars:
                raise PolyError("images live in different rings")
        tvars = images[0].vars
        out_deg = self.degree * e0
        acc = HomogPoly.zero(self.field, tvars, out_deg)
        pow_cache = [{0: None} for _ in images]
        one = HomogPoly.monomial(self.field, tvars, (0,) * len(tvars))

        def power(i, k):
            cache = pow_cache[i]
            if k in cache and cache[k] is not None:
                return cache[k]
            if k == 0:
                cache[0] = one
                return one
            p = power(i, k - 1) * images[i]
            cache[k] = p
            return p

        for e, c in self.terms.items():
            term = HomogPoly(self.field, tvars, 0, {(0,) * len(tvars): c})
            prod = None
            for i, k in enumerate(e):
                if k:
                    prod = power(i, k) if prod is None else prod * power(i, k)
            if prod is None:
                prod = one
            acc = acc + prod * c
        return acc

    def change_field(self, new_field):
        """Map coefficients into new_field (reduction mod p or extension lift)."""
        out = {}
        for e, c in self.terms.items():
            out[e] = _coerce_scalar(c, new_field)
        return HomogPoly(new_field, self.vars, self.degree, out)

    def content_normalized(self):
        """Deterministic projective representative (the scalar is divided out).

        Over Q: integer content removed, leading (lex-largest monomial) sign
        positive.  Elsewhere: leading coefficient scaled to one.
        """
        if not self.terms:
            return self
        lead = max(self.terms)
        if self.field.kind == "Q":
            num = 0
            den = 1
            for c in self.terms.values():
                num = gcd(num, c.val.numerator)
                den = den * c.val.denominator // gcd(den, c.val.denominator)
            scale = Fraction(den, num)
            if self.terms[lead].val < 0:
                scale = -scale
            return self * self.field.element(scale)
        return self * self.terms[lead].inverse()

    def restrict_to_line(self, p0, p1, st_vars=("s", "t")):
        """Compose with the parametrization s*p0 + t*p1 of a line."""
        images = []
        for i in range(len(self.vars)):
            images.append(HomogPoly.linear(self.field, st_vars, [p0[i], p1[i]]))
        return self.substitute(images)


def _coerce_scalar(c, new_field):
    if new_field == c.field:
        return new_field.element(c)
    if c.field.kind == "Q":
        return new_field.element(c.val)
    if c.field.kind == "Fp" and new_field.kind == "QuadExt" and new_field.base == c.field:
        return new_field.element(c)
    if c.field.kind == "QuadExt" and new_field == c.field.base:
        a, b = c.val
        if not c.field.base._is_zero_raw(b):
            raise FieldError("element does not descend to the base field")
        return FieldElement(new_field, a)
    raise FieldError("no coercion from %r to %r" % (c.field, new_field))


def proportional(f, g):
    """Projective equality by cross-multiplication; zero is proportional only to zero."""
    if isinstance(f, HomogPoly):
        if not f.terms and not g.terms:
            return True
        if not f.terms or not g.terms:
            return False
        e0 = max(f.terms)
        if e0 not in g.terms:
            return False
        return f * g.terms[e0] == g * f.terms[e0]
    # vectors of polynomials or scalars
    fs, gs = list(f), list(g)
    if len(fs) != len(gs):
        return False
    for a, b in zip(fs, gs):
        for c, d in zip(fs, gs):
            if not (a * d == b * c if not isinstance(a, HomogPoly) else a * d == b * c):
                return False
    return True


class SymMatrix:
    """Symmetric n x n matrix; only the upper triangle is stored.

    Entries may be field elements (scalar quadrics) or HomogPoly (pencils of
    forms).  The associated quadratic form is v . M . v, so off-diagonal
    entries are half the cross coefficients of the form.
    """

    __slots__ = ("n", "upper")

    def __init__(self, n, upper):
        self.n = n
        self.upper = dict(upper)
        for i in range(n):
            for j in range(i, n):
                if (i, j) not in self.upper:
                    raise PolyError("missing entry (%d,%d)" % (i, j))

    @staticmethod
    def from_rows(rows):
        n = len(rows)
        upper = {}
        for i in range(n):
            for j in range(i, n):
                a, b = rows[i][j], rows[j][i]
                if not _entries_equal(a, b):
                    raise PolyError("matrix is not symmetric at (%d,%d)" % (i, j))
                upper[(i, j)] = a
        return SymMatrix(n, upper)

    def at(self, i, j):
        return self.upper[(i, j)] if i <= j else self.upper[(j, i)]

    def rows(self):
        return [[self.at(i, j) for j in range(self.n)] for i in range(self.n)]

    def map(self, fn):
        return SymMatrix(self.n, {k: fn(v) for k, v in self.upper.items()})

    def qform(self, vec):
        """v . M . v for a coordinate vector of ring elements."""
        total = None
        for i in range(self.n):
            for j in range(self.n):
                t = vec[i] * self.at(i, j) * vec[j]
                total = t if total is None else total + t
        return total

    def quadratic_form(self, field, vars):
        """The form sum M_ij x_i x_j as a HomogPoly (scalar entries)."""
        terms = {}
        n = self.n
        for i in range(n):
            for j in range(i, n):
                c = self.at(i, j) if i == j else self.at(i, j) * 2
                e = [0] * n
                e[i] += 1
                e[j] += 1
                te = tuple(e)
                if te in terms:
                    terms[te] = terms[te] + c
                else:
                    terms[te] = c
        return HomogPoly(field, vars, 2, terms)

    @staticmethod
    def from_quadratic_form(f):
        """Inverse of quadratic_form; needs characteristic != 2."""
        n = len(f.vars)
        if f.degree != 2:
            raise PolyError("not a quadratic form")
        field = f.field
        half = field.element(1) / field.element(2)
        upper = {}
        for i in range(n):
            for j in range(i, n):
                e = [0] * n
                e[i] += 1
                e[j] += 1
                c = f.terms.get(tuple(e), field.zero())
                upper[(i, j)] = c if i == j else c * half
        return SymMatrix(n, upper)

    def det(self):
        from . import linalg
        return linalg.det(self.rows())

    def adjugate(self):
        from . import linalg
        return SymMatrix.from_rows(linalg.adjugate(self.rows()))

    def evaluate(self, point):
        """Form-valued matrix -> scalar matrix at a point."""
        return self.map(lambda p: p.evaluate(point))

    def rank(self):
        from . import linalg
        return linalg.rank(self.rows())

    def scale(self, c):
        return self.map(lambda v: v * c)

    def __eq__(self, other):
        if not isinstance(other, SymMatrix) or self.n != other.n:
            return NotImplemented
        return all(_entries_equal(self.upper[k], other.upper[k]) for k in self.upper)

    def __repr__(self):
        return "SymMatrix(%d)[%s]" % (self.n, "; ".join(
            "%d,%d: %r" % (i, j, self.upper[(i, j)]) for (i, j) in sorted(self.upper)))


def _entries_equal(a, b):
    r = (a == b)
    return bool(r)


def det_and_adjugate(mat):
    """Determinant and adjugate of a SymMatrix of forms of equal degree.

    The exact identity adj(M) . M = det(M) . I holds by construction; mixed
    entry degrees are rejected.
    """
    entries = list(mat.upper.values())
    degs = {e.degree for e in entries if isinstance(e, HomogPoly)}
    if len(degs) > 1:
        raise PolyError("entries have mixed degrees %r" % (sorted(degs),))
    from . import linalg
    rows = mat.rows()
    return linalg.det(rows), SymMatrix.from_rows(linalg.adjugate(rows))


def binary_discriminant(a, b, c):
    """b^2 - 4ac for a quadratic a s^2 + b st + c t^2 with form coefficients."""
    degs = {f.degree for f in (a, b, c) if isinstance(f, HomogPoly)}
    if len(degs) > 1:
        raise PolyError("coefficients of the binary quadratic must share a degree")
    return b * b - a * c * 4
