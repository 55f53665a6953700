from fractions import Fraction
from random import Random

import pytest

from bisurf.biparam import lift_mixed
from bisurf.matrixrep import (
    InterpolationError,
    RankDeficientError,
    _components,
    equation_report,
    implicit_by_interpolation,
    lci_diagnostic,
    membership,
    minors_gcd,
    representation_matrix,
    verify_substitution,
)
from bisurf.segre import SegreElem
from bisurf.tpoly import parse_tpoly
from bisurf.zcomplex import SegreIdeal

QUADRIC = parse_tpoly("T1*T4 - T2*T3")


@pytest.fixture(scope="module")
def identity_matrix_rep(identity_ideal):
    return representation_matrix(identity_ideal, 1)


@pytest.fixture(scope="module")
def d2_matrix_rep(d2_ideal):
    return representation_matrix(d2_ideal, 2)


def test_matrix_shapes(identity_matrix_rep, d2_matrix_rep):
    assert (identity_matrix_rep.rows, identity_matrix_rep.cols) == (4, 7)
    assert (d2_matrix_rep.rows, d2_matrix_rep.cols) == (9, 12)


def test_lifted_matrix_shape(mixed_param):
    I = SegreIdeal.from_parametrization(lift_mixed(mixed_param))
    M = representation_matrix(I, 5)
    assert (M.rows, M.cols) == (36, 42)
    comps = _components(M)
    assert [(len(r), len(c)) for r, c in comps] == [(6, 7)] * 6


def test_reassembly_invariant(d2_matrix_rep, d2_ideal):
    M = d2_matrix_rep
    for j, syz in enumerate(M.syzygies):
        for r, quad in enumerate(M.basis):
            assert M.entries[r][j].coeffs == tuple(a.coefficient(quad) for a in syz)
        acc = SegreElem.zero(M.nu + d2_ideal.degree)
        for a, g in zip(syz, d2_ideal.gs):
            acc = acc + a * g
        assert acc.is_zero()


def test_membership_examples(identity_matrix_rep):
    on, r = membership(identity_matrix_rep, (1, 1, 1, 1))
    assert on and r == 3
    on, r = membership(identity_matrix_rep, (1, 1, 1, 2))
    assert not on and r == 4
    with pytest.raises(ValueError):
        membership(identity_matrix_rep, (0, 0, 0, 0))


def test_membership_scale_invariant(identity_matrix_rep):
    a = membership(identity_matrix_rep, (2, 3, 4, 6))
    b = membership(identity_matrix_rep, (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)))
    assert a == b


def test_minors_gcd_identity(identity_matrix_rep):
    assert minors_gcd(identity_matrix_rep, "all") == QUADRIC


def test_minors_gcd_strategies_agree(identity_matrix_rep):
    full = minors_gcd(identity_matrix_rep, "all")
    for seed in (0, 1, 7):
        assert minors_gcd(identity_matrix_rep, "sampled", 12, Random(seed)) == full


def test_minors_gcd_d2_degree(d2_matrix_rep, d2_equation):
    D = minors_gcd(d2_matrix_rep, "sampled", 10, Random(0))
    assert D.total_degree() == 7
    assert D == d2_equation


def test_minors_gcd_rejects_rank_deficient(identity_ideal):
    M = representation_matrix(identity_ideal, 0)  # 1 x 0 matrix: no syzygies
    with pytest.raises(RankDeficientError):
        minors_gcd(M)


def test_oracle_segre(segre_param):
    assert implicit_by_interpolation(segre_param, 2) == QUADRIC


def test_oracle_rejects_bad_degree_bound(segre_param):
    with pytest.raises(ValueError):
        implicit_by_interpolation(segre_param, 0)
    with pytest.raises(InterpolationError):
        implicit_by_interpolation(segre_param, 1)


def test_oracle_d2(d2_param, d2_equation):
    assert d2_equation.total_degree() == 7
    assert verify_substitution(d2_equation, d2_param)


def test_verify_substitution_examples(segre_param):
    assert verify_substitution(QUADRIC, segre_param)
    assert not verify_substitution(parse_tpoly("T1"), segre_param)


def test_lci_diagnostic_identity(identity_matrix_rep, segre_param):
    D = minors_gcd(identity_matrix_rep, "all")
    F = implicit_by_interpolation(segre_param, 2)
    power, residual, lci = lci_diagnostic(D, F)
    assert power == 1 and lci and residual.is_constant()


def test_lci_diagnostic_d2(d2_matrix_rep, d2_equation):
    D = minors_gcd(d2_matrix_rep, "sampled", 10, Random(0))
    power, residual, lci = lci_diagnostic(D, d2_equation)
    assert power == 1 and lci


def test_lci_diagnostic_error_paths(d2_equation):
    with pytest.raises(ValueError):
        lci_diagnostic(QUADRIC, parse_tpoly("3"))
    with pytest.raises(ArithmeticError):
        lci_diagnostic(QUADRIC, parse_tpoly("T1+T2"))


def test_gcd_degree_matches_strand_degree(identity_ideal, d2_ideal):
    from bisurf.zcomplex import strand_report

    from helpers import random_dense

    generic = SegreIdeal.from_parametrization(random_dense(1, Random(23)))
    cases = (
        (identity_ideal, 1, "all"),
        (d2_ideal, 2, "sampled"),
        (generic, 1, "all"),
    )
    for I, nu, strategy in cases:
        M = representation_matrix(I, nu)
        D = minors_gcd(M, strategy, 10, Random(0))
        assert D.total_degree() == strand_report(I, nu).expected_det_degree


def test_rank_drop_iff_gcd_vanishes(identity_matrix_rep, d2_matrix_rep, d2_equation):
    cases = [
        (identity_matrix_rep, minors_gcd(identity_matrix_rep, "all"), 60),
        (d2_matrix_rep, d2_equation, 30),
    ]
    rng = Random(17)
    for M, D, count in cases:
        for _ in range(count):
            pt = tuple(Fraction(rng.randint(-6, 6)) for _ in range(4))
            if not any(pt):
                continue
            on, r = membership(M, pt)
            assert on == (D.eval(pt) == 0)


def test_equation_report_pipeline(d2_param):
    rep = equation_report(d2_param, saturate=True, sample_size=10, seed=0)
    assert rep.nu == 2
    assert (rep.matrix_rows, rep.matrix_cols) == (9, 12)
    assert rep.minors_gcd_poly.total_degree() == 7
    assert rep.power == 1 and rep.lci and rep.substitution_ok
    d = rep.as_dict()
    assert d["implicit_degree"] == 7 and d["base_points_lci"] is True


def test_json_export_schema(d2_matrix_rep):
    payload = d2_matrix_rep.to_json_dict()
    assert payload["nu"] == 2
    assert payload["rows"] == 9 and payload["cols"] == 12
    assert len(payload["row_basis"]) == 9
    assert len(payload["entries"]) == 9
    assert all(len(row) == 12 for row in payload["entries"])
    assert all(len(cell) == 4 for row in payload["entries"] for cell in row)
    # coefficients are exact rational strings
    Fraction(payload["entries"][0][0][0])
