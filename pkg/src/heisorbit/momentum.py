"""Momentum maps of the translation action on (R^{2n}, omega).

Two maps are provided: the affine one ``J^x(v) = omega(x, v)`` of the
abelian group R^{2n}, which fails to be equivariant by the cocycle
``omega``, and the Heisenberg one ``J^{(x, xi)}(v) = omega(x, v) + xi``,
which is coadjoint equivariant.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalars as sc
from .heisenberg import HeisDualElement, alg_from_matrix
from .symplectic import SympVector, flat, omega, sharp

FIXED_POINT = "fixed_point"
GENERIC = "generic"


@dataclass(frozen=True)
class OrbitTag:
    kind: str
    modulus: object
    dim: int


def affine_momentum(v):
    """The covector ``x -> omega(x, v)`` (equal to ``-sharp(v)``)."""
    return -sharp(v)


def affine_hamiltonian(x, v):
    """``J^x(v) = omega(x, v)``."""
    return omega(x, v)


def affine_cocycle(y, z):
    """The cocycle ``{J^y, J^z} - J^{[y, z]}``, which equals ``omega(y, z)``."""
    return omega(y, z)


def infinitesimal_generator(x, v):
    """Generator of the translation action in direction ``x``: ``X^x(v) = x``."""
    return x


def affine_poisson_bracket(y, z, v):
    """``{J^y, J^z}(v) = dJ^y(v) X^z(v)`` evaluated at the base point ``v``.

    ``J^y`` is affine, so the one-step difference ``J^y(v + w) - J^y(v)``
    is its differential applied to ``w`` with no truncation error.
    """
    w = infinitesimal_generator(z, v)
    return affine_hamiltonian(y, v + w) - affine_hamiltonian(y, v)


def affine_bracket_term(y, z, v):
    """``J^{[y, z]}(v)``; the Lie algebra of R^{2n} is abelian so ``[y, z] = 0``."""
    return affine_hamiltonian(SympVector.zero(y.n, y.mode), v)


def directional_derivative_fd(x, v, w, step=1e-6):
    """Central finite difference of ``J^x`` at ``v`` along ``w`` (float)."""
    vf = SympVector(np.asarray(v.coords, dtype=float))
    wf = SympVector(np.asarray(w.coords, dtype=float))
    xf = SympVector(np.asarray(x.coords, dtype=float))
    plus = affine_hamiltonian(xf, vf + wf * step)
    minus = affine_hamiltonian(xf, vf - wf * step)
    return (plus - minus) / (2 * step)


def heis_hamiltonian(X, v):
    """``J^{(x, xi)}(v) = omega(x, v) + xi``."""
    return omega(X.x, v) + X.xi


def heis_momentum(v):
    """The Heisenberg momentum ``J(v)``: ``lam = -sharp(v)``, ``mu = 1``."""
    return HeisDualElement(-sharp(v), sc.to_scalar(1, v.mode))


def heis_momentum_on_matrix(v, X_matrix, tol=None):
    """``J(v)`` paired with an algebra element given as an embedded matrix."""
    return heis_hamiltonian(alg_from_matrix(X_matrix, tol), v)


def momentum_preimage(f):
    """A base point ``v`` with ``heis_momentum(v) == f``; needs ``mu == 1``."""
    if f.mu != 1:
        raise ValueError("the momentum image is the hyperplane mu = 1")
    return -flat(f.lam)


def momentum_image(n=1, mode=sc.EXACT):
    """Classify the image of the Heisenberg momentum map.

    The action is transitive, so the image is the coadjoint orbit through
    ``J(0)``, which is classified here rather than asserted.
    """
    from .orbits import classify_dual

    desc = classify_dual(heis_momentum(SympVector.zero(n, mode)))
    return OrbitTag(desc.kind, desc.mu, 2 * n)
