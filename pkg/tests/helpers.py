"""Shared test utilities: independent brute-force oracles and generators.

The oracles here deliberately avoid the package's quotient-ring arithmetic
and matrix assembly: syzygy and cycle dimensions are recomputed on the
parameter side (s,u,t,v) with plain dictionaries and a local Gaussian
elimination, so agreement with the library is a genuine cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from random import Random

from bisurf.biparam import BiHomPoly, Parametrization
from bisurf.fields import QQ


def fraction_rank(rows) -> int:
    """Plain Gaussian elimination rank over the rationals."""
    rows = [[Fraction(x) for x in row] for row in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c] / pv
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _biform_monomials(n):
    """Monomial exponents of bidegree (n, n): s^i u^(n-i) t^j v^(n-j)."""
    return [(i, n - i, j, n - j) for i in range(n + 1) for j in range(n + 1)]


def _mono_mult(exp, f: BiHomPoly):
    """Terms of (monomial * f) as a plain dict."""
    out = {}
    for fe, c in f.terms.items():
        key = (exp[0] + fe[0], exp[1] + fe[1], exp[2] + fe[2], exp[3] + fe[3])
        out[key] = out.get(key, Fraction(0)) + c
    return out


def biform_syzygy_dim(P: Parametrization, nu: int) -> int:
    """Brute-force dimension of {(b1..b4) of bidegree (nu,nu) : sum b_i f_i = 0},
    assembled directly on the parameter side."""
    d = P.bidegree[0]
    src = _biform_monomials(nu)
    dst = _biform_monomials(nu + d)
    dst_index = {e: i for i, e in enumerate(dst)}
    cols = []
    for f in P.fs:
        for exp in src:
            col = [Fraction(0)] * len(dst)
            for key, c in _mono_mult(exp, f).items():
                col[dst_index[key]] += c
            cols.append(col)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(dst))]
    return len(cols) - fraction_rank(rows)


def biform_cycle_dim(P: Parametrization, i: int, mu: int) -> int:
    """Brute-force kernel dimension of the degree-mu piece of the i-th Koszul
    differential for (f1..f4), on the parameter side."""
    d = P.bidegree[0]
    src_deg = mu - i * d
    if src_deg < 0:
        return 0
    dst_deg = mu - (i - 1) * d
    src = _biform_monomials(src_deg)
    dst = _biform_monomials(dst_deg)
    dst_index = {e: k for k, e in enumerate(dst)}
    subsets_i = list(combinations(range(4), i))
    subsets_prev = list(combinations(range(4), i - 1))
    prev_pos = {T: k for k, T in enumerate(subsets_prev)}
    ncols = len(subsets_i) * len(src)
    nrows = len(subsets_prev) * len(dst)
    rows = [[Fraction(0)] * ncols for _ in range(nrows)]
    for si, S in enumerate(subsets_i):
        for pos, j in enumerate(S):
            T = tuple(x for x in S if x != j)
            sign = -1 if pos % 2 else 1
            for ci, exp in enumerate(src):
                col = si * len(src) + ci
                for key, c in _mono_mult(exp, P.fs[j]).items():
                    rows[prev_pos[T] * len(dst) + dst_index[key]][col] += sign * c
    return ncols - fraction_rank(rows)


def random_dense(d: int, rng: Random) -> Parametrization:
    """Random parametrization with every bidegree (d,d) coefficient nonzero."""
    fs = []
    for _ in range(4):
        terms = {}
        for i in range(d + 1):
            for j in range(d + 1):
                c = 0
                while c == 0:
                    c = rng.randint(-9, 9)
                terms[(i, d - i, j, d - j)] = Fraction(c)
        fs.append(BiHomPoly((d, d), terms, QQ))
    return Parametrization(fs)


def random_biform(n: int, rng: Random, density: float = 0.6) -> BiHomPoly:
    terms = {}
    for i in range(n + 1):
        for j in range(n + 1):
            if rng.random() < density:
                c = rng.randint(-9, 9)
                if c:
                    terms[(i, n - i, j, n - j)] = Fraction(c)
    if not terms:
        terms[(0, n, 0, n)] = Fraction(1)
    return BiHomPoly((n, n), terms, QQ)


def cofactor_det(rows):
    """Independent determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        piece = rows[0][j] * cofactor_det(minor)
        total += piece if j % 2 == 0 else -piece
    return total
