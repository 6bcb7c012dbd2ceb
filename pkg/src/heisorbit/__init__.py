"""Heisenberg group momentum maps, coadjoint orbits and their quantization."""
from .heisenberg import (
    Ad,
    HeisAlgElement,
    HeisDualElement,
    HeisGroupElement,
    bracket,
    coadjoint,
    exp_alg,
    mul,
    rho,
    rho_alg,
)
from .momentum import affine_cocycle, affine_momentum, heis_momentum, momentum_image
from .orbits import classify_dual, orbit_pairing, reduce_tuple, restrict_functional
from .symplectic import SympCovector, SympForm, SympVector, extended_form, flat, omega, sharp

__version__ = "0.1.0"
