"""Exact symbolic computation in crossed products of a shift space by its transfer operator."""
from .crossed import (
    CrossedElement,
    Monomial,
    S,
    S_star,
    adjoint,
    equals,
    expectation_F,
    expectation_G,
    func,
    grande_h,
    normal_form,
    raise_level,
    restriction_hom,
    scalar,
)
from .cylfun import CylFun, alpha, constant, indicator, quasi_basis, transfer
from .measure import TransferWeights, solve_invariant, uniform_weights
from .scalar import RadScalar, parse_scalar
from .sft import EvPerPoint, TransitionMatrix, analyze

__version__ = "0.1.0"
