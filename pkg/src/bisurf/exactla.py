"""Dense exact linear algebra over QQ and GF(p).

Reduced row echelon form, rank, canonical nullspace bases, and fraction-free
determinants. Over QQ the forward elimination clears denominators row by row
and strips integer content to control coefficient growth; the pivot rule is
always "first nonzero entry in column order", so results are deterministic
and the RREF is the unique one.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from random import Random

from .fields import QQ, GFElem, PrimeField, is_prime


class BadPrimeError(ValueError):
    """A denominator vanishes modulo the requested prime."""


class ExactMatrix:
    """Immutable dense matrix with exact field entries."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries, field=QQ, cols=None):
        entries = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        rows = len(entries)
        if rows:
            cols = len(entries[0])
            if any(len(r) != cols for r in entries):
                raise ValueError("ragged rows")
        elif cols is None:
            cols = 0
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.field = field

    @classmethod
    def zero(cls, rows, cols, field=QQ):
        z = field.zero
        return cls([[z] * cols for _ in range(rows)], field, cols=cols)

    @classmethod
    def identity(cls, n, field=QQ):
        z, o = field.zero, field.one
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], field)

    def entry(self, i, j):
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.field,
            cols=self.rows,
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        z = self.field.zero
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    x = ri[k]
                    if x:
                        acc = acc + x * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, self.field, cols=other.cols)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"


def _int_rows(m: ExactMatrix):
    """Clear denominators per row; row scaling preserves the row space."""
    out = []
    for row in m.entries:
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([int(x.numerator * (den // x.denominator)) for x in row])
    return out


def _strip_content(row, start=0):
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return
    if g > 1:
        for j in range(start, len(row)):
            row[j] //= g


def _forward_int(rows, cols):
    """In-place integer echelon reduction; returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pivot_row = rows[r]
        pv = pivot_row[c]
        for i in range(r + 1, nrows):
            v = rows[i][c]
            if v:
                ri = rows[i]
                for j in range(c, cols):
                    ri[j] = ri[j] * pv - pivot_row[j] * v
                _strip_content(ri, c)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _forward_gf(rows, cols, p):
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pivot_row = rows[r]
        inv = pow(pivot_row[c], p - 2, p)
        for j in range(c, cols):
            pivot_row[j] = pivot_row[j] * inv % p
        for i in range(r + 1, nrows):
            v = rows[i][c]
            if v:
                ri = rows[i]
                for j in range(c, cols):
                    ri[j] = (ri[j] - v * pivot_row[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if isinstance(m.field, PrimeField):
        rows = [[x.value for x in row] for row in m.entries]
        return len(_forward_gf(rows, m.cols, m.field.p))
    return len(_forward_int(_int_rows(m), m.cols))


def rref(m: ExactMatrix):
    """Reduced row echelon form; returns (rref matrix, rank, pivot columns)."""
    if m.rows == 0 or m.cols == 0:
        return m, 0, ()
    if isinstance(m.field, PrimeField):
        p = m.field.p
        rows = [[x.value for x in row] for row in m.entries]
        pivots = _forward_gf(rows, m.cols, p)
        r = len(pivots)
        for k in range(r - 1, -1, -1):
            c = pivots[k]
            rk = rows[k]
            for a in range(k):
                v = rows[a][c]
                if v:
                    ra = rows[a]
                    for j in range(c, m.cols):
                        ra[j] = (ra[j] - v * rk[j]) % p
        out = [[GFElem(x, p) for x in rows[i]] for i in range(r)]
        z = [m.field.zero] * m.cols
        out.extend([list(z) for _ in range(m.rows - r)])
        return ExactMatrix(out, m.field, cols=m.cols), r, tuple(pivots)
    ints = _int_rows(m)
    pivots = _forward_int(ints, m.cols)
    r = len(pivots)
    frows = [[Fraction(x) for x in ints[i]] for i in range(r)]
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        pv = frows[k][c]
        if pv != 1:
            frows[k] = [x / pv for x in frows[k]]
        fk = frows[k]
        for a in range(k):
            v = frows[a][c]
            if v:
                fa = frows[a]
                frows[a] = [fa[j] - v * fk[j] for j in range(m.cols)]
    zero_row = [Fraction(0)] * m.cols
    frows.extend([list(zero_row) for _ in range(m.rows - r)])
    return ExactMatrix(frows, m.field, cols=m.cols), r, tuple(pivots)


def nullspace(m: ExactMatrix) -> ExactMatrix:
    """Canonical kernel basis: columns, one per free variable taken in column
    order with the free variable set to 1."""
    reduced, r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    z, o = m.field.zero, m.field.one
    cols = []
    for fc in free:
        v = [z] * m.cols
        v[fc] = o
        for k, pc in enumerate(pivots):
            val = reduced.entries[k][fc]
            if val:
                v[pc] = -val
        cols.append(v)
    if not cols:
        return ExactMatrix([[] for _ in range(m.cols)], m.field, cols=0)
    out = [[cols[j][i] for j in range(len(cols))] for i in range(m.cols)]
    return ExactMatrix(out, m.field, cols=len(cols))


def det_bareiss(m: ExactMatrix):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return m.field.one
    if isinstance(m.field, PrimeField):
        p = m.field.p
        rows = [[x.value for x in row] for row in m.entries]
        sign = 1
        det = 1
        for c in range(n):
            pr = next((i for i in range(c, n) if rows[i][c]), None)
            if pr is None:
                return m.field.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                sign = -sign
            pv = rows[c][c]
            det = det * pv % p
            inv = pow(pv, p - 2, p)
            for i in range(c + 1, n):
                v = rows[i][c] * inv % p
                if v:
                    ri, rc = rows[i], rows[c]
                    for j in range(c, n):
                        ri[j] = (ri[j] - v * rc[j]) % p
        return GFElem(sign * det, p)
    scale = Fraction(1)
    rows = []
    for row in m.entries:
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        scale *= den
        rows.append([int(x.numerator * (den // x.denominator)) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k]
        pv = pk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            lead = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pv * ri[j] - lead * pk[j]) // prev
            ri[k] = 0
        prev = pv
    return Fraction(sign * rows[n - 1][n - 1]) / scale


def reduce_mod(m: ExactMatrix, p: int) -> ExactMatrix:
    """Image of a rational matrix in GF(p); raises BadPrimeError when a
    denominator is divisible by p."""
    field = PrimeField(p)
    rows = []
    for row in m.entries:
        out = []
        for x in row:
            if x.denominator % p == 0:
                raise BadPrimeError(f"denominator of {x} vanishes mod {p}")
            out.append(field.coerce(x))
        rows.append(out)
    return ExactMatrix(rows, field, cols=m.cols)


def random_prime(rng: Random, bits: int = 31) -> int:
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime(n):
            return n


def modular_rank_agrees(m: ExactMatrix, num_primes: int = 3, rng: Random | None = None) -> bool:
    """Cross-check: the GF(p) rank must match the rational rank for several
    independently chosen random primes."""
    rng = rng or Random(0)
    r_exact = rank(m)
    checked = 0
    while checked < num_primes:
        p = random_prime(rng)
        try:
            mp = reduce_mod(m, p)
        except BadPrimeError:
            continue
        if rank(mp) != r_exact:
            return False
        checked += 1
    return True
