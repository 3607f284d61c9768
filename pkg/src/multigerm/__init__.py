"""Multiple point spaces of finite map multi-germs via Fitting ideals."""

from .groebner import GroebnerBasis, leading_ideal, normal_form, standard_basis
from .ideal import (
    INFINITE,
    Ideal,
    colength,
    contains,
    dimension,
    eliminate,
    equals,
    intersect,
    product,
    pullback,
    radical_membership,
)
from .orders import DEGREVLEX, LEX, NEGDEGREVLEX, MonomialOrder, block_order
from .parse import PolySyntaxError, parse_poly
from .poly import DivisionError, Polynomial, RingMismatch, VariableRing
from .presentation import (
    BranchGerm,
    MultiGerm,
    PresentationMatrix,
    UnsupportedBranch,
    block_diagonal,
    branch_presentation,
    detect_form,
    fitting_ideal,
    mult_matrix_presentation,
)
from .target import (
    FittingLadder,
    FormulaNotApplicable,
    HypothesisAudit,
    branch_expansion,
    decomposition_check,
    double_formula,
    target_space,
    triple_formula,
)
from .source import alpha_matrix, double_space, preimage_compare, projection_presentation, source_multipoint
from .invariants import (
    RandomizationPolicy,
    hironaka_delta,
    intersection_number,
    milnor_number,
    multiplicity_m0,
    polar_m1,
    quadruple_count,
)

__all__ = [
    "GroebnerBasis", "leading_ideal", "normal_form", "standard_basis",
    "INFINITE", "Ideal", "colength", "contains", "dimension", "eliminate", "equals",
    "intersect", "product", "pullback", "radical_membership",
    "DEGREVLEX", "LEX", "NEGDEGREVLEX", "MonomialOrder", "block_order",
    "PolySyntaxError", "parse_poly",
    "DivisionError", "Polynomial", "RingMismatch", "VariableRing",
    "BranchGerm", "MultiGerm", "PresentationMatrix", "UnsupportedBranch", "block_diagonal",
    "branch_presentation", "detect_form", "fitting_ideal", "mult_matrix_presentation",
    "FittingLadder", "FormulaNotApplicable", "HypothesisAudit", "branch_expansion",
    "decomposition_check", "double_formula", "target_space", "triple_formula",
    "alpha_matrix", "double_space", "preimage_compare", "projection_presentation", "source_multipoint",
    "RandomizationPolicy", "hironaka_delta", "intersection_number", "milnor_number",
    "multiplicity_m0", "polar_m1", "quadruple_count",
]
