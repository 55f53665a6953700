"""Arithmetic in the Segre coordinate ring A = K[X1..X4]/(X1*X4 - X2*X3).

Elements are kept in normal form: no monomial divisible by X1*X4, obtained by
rewriting X1*X4 -> X2*X3 until the X1- or X4-exponent is exhausted. Degree-n
monomials in normal form biject with the bidegree (n,n) monomials in s,u,t,v,
and the transfer maps between the two sides move coefficients unchanged.
"""

from __future__ import annotations

from functools import lru_cache

from . import _expr
from .biparam import BiHomPoly, InputError
from .fields import QQ

SEGRE_VARS = ("X1", "X2", "X3", "X4")


def normal_quad(exp):
    """Rewrite X1^a*X2^b*X3^c*X4^e so that the X1 and X4 exponents cannot both be positive."""
    a, b, c, e = exp
    m = a if a < e else e
    if m:
        return (a - m, b + m, c + m, e - m)
    return exp


class SegreElem:
    """Homogeneous element of the quotient ring, stored in normal form."""

    __slots__ = ("degree", "terms", "field")

    def __init__(self, degree, terms, field=QQ):
        if degree < 0:
            raise ValueError("negative degree")
        clean = {}
        for exp, c in terms.items():
            if not c:
                continue
            if min(exp) < 0 or sum(exp) != degree:
                raise ValueError(f"exponents {exp!r} are not of degree {degree}")
            q = normal_quad(exp)
            cur = clean.get(q)
            cur = c if cur is None else cur + c
            if cur:
                clean[q] = cur
            elif q in clean:
                del clean[q]
        self.degree = degree
        self.terms = clean
        self.field = field

    @classmethod
    def zero(cls, degree, field=QQ):
        return cls(degree, {}, field)

    @classmethod
    def monomial(cls, exp, field=QQ, coeff=None):
        return cls(sum(exp), {tuple(exp): coeff if coeff is not None else field.one}, field)

    def _check(self, other, same_degree=True):
        if self.field != other.field:
            raise ValueError("mixed coefficient fields")
        if same_degree and self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, self.field.zero) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return SegreElem(self.degree, out, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SegreElem(self.degree, {e: -c for e, c in self.terms.items()}, self.field)

    def __mul__(self, other):
        """Product reduced to normal form; degrees add."""
        self._check(other, same_degree=False)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                q = normal_quad((ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]))
                s = out.get(q)
                out[q] = ca * cb if s is None else s + ca * cb
        return SegreElem(
            self.degree + other.degree, {e: c for e, c in out.items() if c}, self.field
        )

    def scale(self, c):
        c = self.field.coerce(c)
        return SegreElem(self.degree, {e: x * c for e, x in self.terms.items()}, self.field)

    def coefficient(self, quad):
        return self.terms.get(tuple(quad), self.field.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0][:3], reverse=True)

    def __str__(self):
        pairs = [(c, _expr.monomial_text(e, SEGRE_VARS)) for e, c in self.sorted_terms()]
        return _expr.format_polynomial(pairs)

    def __repr__(self):
        return f"SegreElem({self})"

    def __eq__(self, other):
        return (
            isinstance(other, SegreElem)
            and self.degree == other.degree
            and self.field == other.field
            and self.terms == other.terms
        )


class SegreBasis:
    """The (n+1)^2 normal-form monomials of degree n, in canonical order."""

    __slots__ = ("degree", "quads", "index")

    def __init__(self, degree, quads):
        self.degree = degree
        self.quads = tuple(quads)
        self.index = {q: i for i, q in enumerate(self.quads)}

    def __len__(self):
        return len(self.quads)

    def __iter__(self):
        return iter(self.quads)

    def __getitem__(self, i):
        return self.quads[i]

    def monomial_texts(self):
        return [_expr.monomial_text(q, SEGRE_VARS) or "1" for q in self.quads]


@lru_cache(maxsize=None)
def basis(n: int) -> SegreBasis:
    """Basis of the degree-n graded piece; canonical order is lexicographic on
    (X1,X2,X3)-exponents, descending."""
    if n < 0:
        raise ValueError("negative degree")
    quads = []
    for a in range(n, -1, -1):
        for b in range(n - a, -1, -1):
            for c in range(n - a - b, -1, -1):
                e = n - a - b - c
                if a and e:
                    continue
                quads.append((a, b, c, e))
    quads.sort(key=lambda q: q[:3], reverse=True)
    assert len(quads) == (n + 1) ** 2
    return SegreBasis(n, quads)


def to_segre(f: BiHomPoly) -> SegreElem:
    """Transfer a bidegree (n,n) polynomial to the quotient ring.

    Monomial rule: s^i u^(n-i) t^j v^(n-j) maps to
    X1^(i+j-n+k) X2^(n-j-k) X3^(n-i-k) X4^k with k = max(0, n-i-j);
    coefficients are carried unchanged. The image is already in normal form.
    """
    d1, d2 = f.bidegree
    if d1 != d2:
        raise InputError(f"bidegree components differ: ({d1},{d2})")
    n = d1
    out = {}
    for (i, _, j, _), c in f.terms.items():
        k = n - i - j
        if k < 0:
            k = 0
        out[(i + j - n + k, n - j - k, n - i - k, k)] = c
    return SegreElem(n, out, f.field)


def to_biform(x: SegreElem) -> BiHomPoly:
    """Substitute X1->s*t, X2->s*v, X3->u*t, X4->u*v."""
    n = x.degree
    out = {}
    for (a, b, c, e), coeff in x.terms.items():
        exp = (a + b, c + e, a + c, b + e)
        s = out.get(exp, x.field.zero) + coeff
        if s:
            out[exp] = s
        elif exp in out:
            del out[exp]
    return BiHomPoly((n, n), out, x.field)
