"""Geometric quantization of the Heisenberg momentum orbit."""
from .grid import GridError, GridFunction, GridSpec, inner_product, norm
from .operators import (
    HeisAlg3,
    bracket3,
    central_character,
    covariant_derivative,
    group3,
    hamiltonian_vf,
    infinitesimal_check,
    momentum_observable,
    observed_order,
    prequant_op,
    prequant_op_closed,
    quant_op,
    rep_S,
    rep_S1,
    rep_S1_twisted,
    split3,
    theta_contraction,
    twist_psi,
)
from .testfunctions import TestFunction, random_test_function
