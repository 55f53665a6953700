"""Exact implicitization of surfaces parametrized over P1 x P1 by equal
bidegree polynomials, through the linear syzygies of the parametrization
transferred to the Segre coordinate ring."""

from .biparam import (
    BiHomPoly,
    InputError,
    Parametrization,
    gcd_of_inputs,
    lift_mixed,
    parse_parametrization,
)
from .exactla import ExactMatrix, det_bareiss, modular_rank_agrees, nullspace, rank, rref
from .fields import QQ, GFElem, PrimeField
from .matrixrep import (
    EquationReport,
    InterpolationError,
    RankDeficientError,
    RepMatrix,
    equation_report,
    implicit_by_interpolation,
    lci_diagnostic,
    membership,
    minors_gcd,
    representation_matrix,
    verify_substitution,
)
from .segre import SegreBasis, SegreElem, basis, to_biform, to_segre
from .tpoly import ExactDivisionError, LinearForm, TPoly, exact_div, mvgcd, parse_tpoly, polydet
from .zcomplex import (
    SegreIdeal,
    StrandReport,
    choose_nu,
    critical_degree,
    cycle_space_dim,
    koszul_matrix,
    linear_syzygies,
    saturation_indeg,
    strand_report,
    syzygy_matrix,
)

__all__ = [
    "BiHomPoly",
    "EquationReport",
    "ExactDivisionError",
    "ExactMatrix",
    "GFElem",
    "InputError",
    "InterpolationError",
    "LinearForm",
    "Parametrization",
    "PrimeField",
    "QQ",
    "RankDeficientError",
    "RepMatrix",
    "SegreBasis",
    "SegreElem",
    "SegreIdeal",
    "StrandReport",
    "TPoly",
    "basis",
    "choose_nu",
    "critical_degree",
    "cycle_space_dim",
    "det_bareiss",
    "equation_report",
    "exact_div",
    "gcd_of_inputs",
    "implicit_by_interpolation",
    "koszul_matrix",
    "lci_diagnostic",
    "lift_mixed",
    "linear_syzygies",
    "membership",
    "minors_gcd",
    "modular_rank_agrees",
    "mvgcd",
    "nullspace",
    "parse_parametrization",
    "parse_tpoly",
    "polydet",
    "rank",
    "representation_matrix",
    "rref",
    "saturation_indeg",
    "strand_report",
    "syzygy_matrix",
    "to_biform",
    "to_segre",
    "verify_substitution",
]
