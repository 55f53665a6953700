"""Graded strands of the syzygy complex over the Segre coordinate ring.

Given the ideal I = (g1..g4), this module assembles the degree-mu pieces of
the Koszul differentials as exact matrices, computes linear syzygy bases and
cycle-space dimensions, the Euler characteristic of a strand, the expected
degree of the strand determinant, and the critical degree from which the
representation matrix is valid (optionally lowered via the saturation index).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .biparam import InputError, Parametrization
from .exactla import ExactMatrix, nullspace, rank, rref
from .segre import SegreElem, basis, normal_quad, to_segre

_SUBSETS = {i: tuple(combinations(range(4), i)) for i in range(5)}


class SegreIdeal:
    """Four generators of one common degree d >= 1 in the quotient ring."""

    __slots__ = ("gs", "degree", "field")

    def __init__(self, gs):
        gs = tuple(gs)
        if len(gs) != 4:
            raise InputError("need exactly four generators")
        d = gs[0].degree
        field = gs[0].field
        for g in gs[1:]:
            if g.degree != d:
                raise InputError(f"generator degrees differ: {g.degree} vs {d}")
            if g.field != field:
                raise InputError("generator fields differ")
        if d < 1:
            raise InputError("generators must have degree at least 1")
        if all(g.is_zero() for g in gs):
            raise InputError("all generators are zero")
        self.gs = gs
        self.degree = d
        self.field = field

    @classmethod
    def from_parametrization(cls, P: Parametrization) -> "SegreIdeal":
        if P.bidegree[0] != P.bidegree[1]:
            raise InputError(
                f"mixed bidegree {P.bidegree}: lift to equal bidegree first"
            )
        return cls([to_segre(f) for f in P.fs])

    def __repr__(self):
        return f"SegreIdeal(degree {self.degree}; " + ", ".join(str(g) for g in self.gs) + ")"


def multiplication_matrix(g: SegreElem, n: int) -> ExactMatrix:
    """Matrix of multiplication by g from degree n to degree n + deg(g), in
    the canonical monomial bases."""
    src = basis(n)
    dst = basis(n + g.degree)
    z = g.field.zero
    rows = [[z] * len(src) for _ in range(len(dst))]
    for col, quad in enumerate(src):
        mono = SegreElem.monomial(quad, g.field)
        prod = mono * g
        for q, c in prod.terms.items():
            rows[dst.index[q]][col] = rows[dst.index[q]][col] + c
    return ExactMatrix(rows, g.field, cols=len(src))


def koszul_matrix(I: SegreIdeal, i: int, mu: int) -> ExactMatrix:
    """Degree-mu piece of the i-th Koszul differential for (g1..g4).

    Columns are indexed by (size-i subset S, source monomial), rows by
    (size-(i-1) subset T, target monomial). The block for T = S minus {j}
    is sign(j, S) times the multiplication-by-g_j matrix, where sign(j, S)
    is (-1) to the 0-based position of j in sorted S.
    """
    if not 1 <= i <= 4:
        raise ValueError("Koszul index out of range")
    d = I.degree
    src_deg = mu - i * d
    dst_deg = mu - (i - 1) * d
    dst_dim = (dst_deg + 1) ** 2 if dst_deg >= 0 else 0
    n_rows = dst_dim * len(_SUBSETS[i - 1])
    if src_deg < 0:
        return ExactMatrix([[] for _ in range(n_rows)], I.field, cols=0)
    src_dim = (src_deg + 1) ** 2
    mult = [multiplication_matrix(g, src_deg) for g in I.gs]
    z = I.field.zero
    rows = [[z] * (src_dim * len(_SUBSETS[i])) for _ in range(n_rows)]
    t_pos = {T: k for k, T in enumerate(_SUBSETS[i - 1])}
    for s_idx, S in enumerate(_SUBSETS[i]):
        for pos, j in enumerate(S):
            T = tuple(x for x in S if x != j)
            sign = -1 if pos % 2 else 1
            block = mult[j]
            row0 = t_pos[T] * dst_dim
            col0 = s_idx * src_dim
            for r in range(dst_dim):
                target = rows[row0 + r]
                source = block.entries[r]
                for c in range(src_dim):
                    v = source[c]
                    if v:
                        target[col0 + c] = target[col0 + c] + (v if sign == 1 else -v)
    return ExactMatrix(rows, I.field, cols=src_dim * len(_SUBSETS[i]))


def syzygy_matrix(I: SegreIdeal, nu: int) -> ExactMatrix:
    """Coefficient matrix of sum(a_i * g_i) = 0 with the a_i of degree nu:
    one row per degree nu+d monomial, blocks of columns for a1..a4."""
    return koszul_matrix(I, 1, nu + I.degree)


def linear_syzygies(I: SegreIdeal, nu: int):
    """Canonical basis of the degree-nu syzygies, as 4-tuples of ring elements."""
    if nu < 0:
        raise ValueError("negative degree")
    ns = nullspace(syzygy_matrix(I, nu))
    b = basis(nu)
    k = len(b)
    out = []
    for j in range(ns.cols):
        tup = []
        for block in range(4):
            terms = {}
            for r in range(k):
                v = ns.entries[block * k + r][j]
                if v:
                    terms[b.quads[r]] = v
            tup.append(SegreElem(nu, terms, I.field))
        out.append(tuple(tup))
    return out


def cycle_space_dim(I: SegreIdeal, i: int, mu: int) -> int:
    """Dimension of the degree-mu kernel of the i-th Koszul differential."""
    m = koszul_matrix(I, i, mu)
    return m.cols - rank(m)


@dataclass(frozen=True)
class StrandReport:
    """Dimension bookkeeping of one graded strand of the complex."""

    nu: int
    d: int
    dim_coefficients: int
    dim_syzygies: int
    dim_cycles2: int
    dim_cycles3: int
    euler_char: int
    expected_det_degree: int
    base_points_degree: int
    nu_conservative: int
    nu_optimized: int | None = None
    sat_indeg: int | None = None

    def as_dict(self):
        return {
            "nu": self.nu,
            "d": self.d,
            "dim_coefficients": self.dim_coefficients,
            "dim_syzygies": self.dim_syzygies,
            "dim_cycles2": self.dim_cycles2,
            "dim_cycles3": self.dim_cycles3,
            "euler_char": self.euler_char,
            "expected_det_degree": self.expected_det_degree,
            "base_points_degree": self.base_points_degree,
            "nu_conservative": self.nu_conservative,
            "nu_optimized": self.nu_optimized,
            "sat_indeg": self.sat_indeg,
        }


def strand_report(I: SegreIdeal, nu: int) -> StrandReport:
    """Dimensions of the degree-nu strand, its Euler characteristic, the
    expected determinant degree, and the implied total base-point degree."""
    d = I.degree
    dim_a = (nu + 1) ** 2
    z1 = cycle_space_dim(I, 1, nu + d)
    z2 = cycle_space_dim(I, 2, nu + 2 * d)
    z3 = cycle_space_dim(I, 3, nu + 3 * d)
    euler = dim_a - z1 + z2 - z3
    deg = z1 - 2 * z2 + 3 * z3
    return StrandReport(
        nu=nu,
        d=d,
        dim_coefficients=dim_a,
        dim_syzygies=z1,
        dim_cycles2=z2,
        dim_cycles3=z3,
        euler_char=euler,
        expected_det_degree=deg,
        base_points_degree=2 * d * d - deg,
        nu_conservative=2 * d - 1,
    )


# ---------------------------------------------------------------------------
# saturation index by graded linear algebra

class _Subspace:
    """Subspace of the degree-n graded piece, stored as RREF rows (unique)."""

    __slots__ = ("degree", "matrix", "pivots")

    def __init__(self, degree, matrix, pivots):
        self.degree = degree
        self.matrix = matrix
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.pivots)

    def __eq__(self, other):
        return (
            isinstance(other, _Subspace)
            and self.degree == other.degree
            and self.pivots == other.pivots
            and self.matrix.entries[: self.dim] == other.matrix.entries[: other.dim]
        )


def _span(rows, degree, field, dim) -> _Subspace:
    if not rows:
        return _Subspace(degree, ExactMatrix([], field, cols=dim), ())
    reduced, r, pivots = rref(ExactMatrix(rows, field, cols=dim))
    return _Subspace(degree, reduced, pivots)


def ideal_piece(I: SegreIdeal, n: int) -> _Subspace:
    """The degree-n piece of the ideal, spanned by monomial multiples of the
    generators."""
    d = I.degree
    dim = (n + 1) ** 2
    if n < d:
        return _Subspace(n, ExactMatrix([], I.field, cols=dim), ())
    bn = basis(n)
    rows = []
    for g in I.gs:
        if g.is_zero():
            continue
        for quad in basis(n - d):
            prod = SegreElem.monomial(quad, I.field) * g
            row = [I.field.zero] * dim
            for q, c in prod.terms.items():
                row[bn.index[q]] = c
            rows.append(row)
    return _span(rows, n, I.field, dim)


def _variable_mult_matrices(n: int, field):
    """Multiplication by X1..X4 from degree n to n+1, as coefficient maps."""
    src = basis(n)
    dst = basis(n + 1)
    mats = []
    for k in range(4):
        unit = [0, 0, 0, 0]
        unit[k] = 1
        col_targets = []
        for quad in src:
            q = tuple(quad[i] + unit[i] for i in range(4))
            col_targets.append(dst.index[normal_quad(q)])
        mats.append(col_targets)
    return mats


def _colon_by_irrelevant(sub: _Subspace, n: int, field) -> _Subspace:
    """The degree-n piece of (J : (X1..X4)) given the degree-(n+1) piece of J."""
    dim_n = (n + 1) ** 2
    dim_n1 = (n + 2) ** 2
    mults = _variable_mult_matrices(n, field)
    pivset = dict(zip(sub.pivots, range(sub.dim)))
    red = sub.matrix.entries
    constraints = []
    for targets in mults:
        # multiplication by one variable sends the basis monomial in column c
        # to the single target monomial targets[c]
        for q in range(dim_n1):
            if q in pivset:
                continue
            row = [field.zero] * dim_n
            touched = False
            for c in range(dim_n):
                tq = targets[c]
                if tq == q:
                    row[c] = row[c] + field.one
                    touched = True
                elif tq in pivset:
                    v = red[pivset[tq]][q]
                    if v:
                        row[c] = row[c] - v
                        touched = True
            if touched:
                constraints.append(row)
    if not constraints:
        reduced, r, pivots = rref(ExactMatrix.identity(dim_n, field))
        return _Subspace(n, reduced, pivots)
    ns = nullspace(ExactMatrix(constraints, field, cols=dim_n))
    rows = [[ns.entries[i][j] for i in range(dim_n)] for j in range(ns.cols)]
    return _span(rows, n, field, dim_n)


def saturation_indeg(I: SegreIdeal, e_max: int | None = None) -> int:
    """Least degree (at most d) in which the saturation of I is nonzero.

    Iterates J -> (J : (X1..X4)) on graded pieces tracked in a degree window,
    stopping when the chain repeats on the common window or after e_max
    steps; the result is only trustworthy for lowering the critical degree
    when the downstream validation agrees, so callers re-validate.
    """
    d = I.degree
    if e_max is None:
        e_max = 2 * d
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    top = d + e_max
    current = {n: ideal_piece(I, n) for n in range(top + 1)}
    for step in range(1, e_max + 1):
        new_top = top - step
        nxt = {
            n: _colon_by_irrelevant(current[n + 1], n, I.field)
            for n in range(new_top + 1)
        }
        if nxt[0].dim > 0:
            return 0
        stable = all(nxt[n] == current[n] for n in range(new_top + 1))
        current = nxt
        if stable:
            break
    for n in range(d + 1):
        if current[n].dim > 0:
            return n
    return d


def critical_degree(I: SegreIdeal, saturate: bool = False, e_max: int | None = None) -> int:
    """Degree from which the strand determinant and rank-drop tests are valid:
    2d-1, lowered by the saturation index when saturate is on."""
    d = I.degree
    if not saturate:
        return 2 * d - 1
    return 2 * d - 1 - saturation_indeg(I, e_max)


def choose_nu(I: SegreIdeal, saturate: bool = False, e_max: int | None = None):
    """Pick the working degree, re-validating any saturation-lowered value.

    Returns (nu, report at nu). A lowered nu is accepted only when the Euler
    characteristic vanishes both at nu and at the conservative 2d-1 and the
    expected determinant degrees agree; otherwise falls back to 2d-1.
    """
    cons = 2 * I.degree - 1
    if not saturate:
        return cons, strand_report(I, cons)
    ind = saturation_indeg(I, e_max)
    opt = 2 * I.degree - 1 - ind
    rep_cons = strand_report(I, cons)
    if opt == cons:
        return cons, replace(rep_cons, nu_optimized=cons, sat_indeg=ind)
    rep_opt = strand_report(I, opt)
    valid = (
        rep_opt.euler_char == 0
        and rep_cons.euler_char == 0
        and rep_opt.expected_det_degree == rep_cons.expected_det_degree
    )
    if valid:
        return opt, replace(rep_opt, nu_optimized=opt, sat_indeg=ind)
    return cons, replace(rep_cons, nu_optimized=cons, sat_indeg=ind)
