import numpy as np
import pytest
from hypothesis import given

from heisorbit import scalars as sc
from heisorbit.heisenberg import HeisAlgElement, HeisDualElement, HeisGroupElement, coadjoint, rho_alg
from heisorbit.momentum import (
    FIXED_POINT,
    GENERIC,
    affine_bracket_term,
    affine_cocycle,
    affine_hamiltonian,
    affine_momentum,
    affine_poisson_bracket,
    directional_derivative_fd,
    heis_hamiltonian,
    heis_momentum,
    heis_momentum_on_matrix,
    momentum_image,
    momentum_preimage,
)
from heisorbit.orbits import classify_dual
from heisorbit.symplectic import SympCovector, SympVector, omega, sharp
from conftest import rational_arrays, rationals


def V(*xs):
    return SympVector(sc.as_array(list(xs), sc.EXACT))


vectors2 = rational_arrays(4).map(SympVector)


def test_affine_momentum_examples():
    assert affine_momentum(V(0, 0)) == SympCovector.zero(1)
    assert affine_momentum(V(0, 1))(V(1, 0)) == 1


@given(vectors2, vectors2, vectors2)
def test_affine_shift_identity(v, a, x):
    assert affine_momentum(v + a)(x) == affine_momentum(v)(x) + omega(x, a)
    assert affine_momentum(v)(x) == affine_hamiltonian(x, v)


@given(vectors2, vectors2, vectors2, vectors2)
def test_cocycle_is_base_point_independent(y, z, v1, v2):
    sigma = affine_cocycle(y, z)
    assert sigma == omega(y, z)
    for v in (v1, v2):
        assert affine_poisson_bracket(y, z, v) - affine_bracket_term(y, z, v) == sigma


def test_cocycle_examples():
    assert affine_cocycle(V(1, 0), V(0, 1)) == 1
    assert affine_cocycle(V(2, 3), V(2, 3)) == 0


def test_poisson_bracket_independent_oracle():
    # {J^y, J^z} = omega(X^y, X^z) with X^x the constant field x (Hamiltonian for J^x)
    rng = np.random.default_rng(5)
    for _ in range(20):
        y, z, v = (SympVector(rng.normal(size=4)) for _ in range(3))
        assert abs(affine_poisson_bracket(y, z, v) - omega(y, z)) < 1e-12


@given(vectors2, vectors2, vectors2)
def test_nonequivariance_witness(a, v1, v2):
    shift1 = affine_momentum(v1 + a) - affine_momentum(v1)
    shift2 = affine_momentum(v2 + a) - affine_momentum(v2)
    assert shift1 == shift2 == -sharp(a)


def test_hamiltonian_finite_difference():
    rng = np.random.default_rng(6)
    for _ in range(50):
        x, v, w = (SympVector(rng.normal(size=6)) for _ in range(3))
        exact = omega(x, w)
        assert abs(directional_derivative_fd(x, v, w) - exact) <= 1e-6 * max(1.0, abs(exact))


@given(rational_arrays(4).map(SympVector), rationals, vectors2)
def test_heis_equivariance(gv, gr, v):
    g = HeisGroupElement(gv, gr)
    assert heis_momentum(v + g.v) == coadjoint(g, heis_momentum(v))
    assert heis_momentum(v).mu == 1


def test_heis_momentum_at_zero():
    f = heis_momentum(V(0, 0, 0, 0))
    assert f == HeisDualElement(SympCovector.zero(2), sc.to_scalar(1))
    # J(0) picks the central coordinate
    assert f(HeisAlgElement(V(5, 6, 7, 8), 3)) == 3


@given(rational_arrays(4).map(SympVector), rationals, vectors2)
def test_matrix_front_end(x, xi, v):
    X = HeisAlgElement(x, xi)
    assert heis_momentum_on_matrix(v, rho_alg(X)) == heis_hamiltonian(X, v) == heis_momentum(v)(X)


def test_momentum_image_is_modulus_one_orbit():
    for n in (1, 2, 3):
        tag = momentum_image(n)
        assert tag.kind == GENERIC and tag.modulus == 1 and tag.dim == 2 * n
    rng = np.random.default_rng(7)
    for _ in range(100):
        v = SympVector(sc.as_array([int(k) for k in rng.integers(-9, 10, 4)], sc.EXACT))
        desc = classify_dual(heis_momentum(v))
        assert desc.kind == GENERIC and desc.mu == 1


@given(rational_arrays(4).map(SympCovector))
def test_surjectivity_onto_mu_one(lam):
    f = HeisDualElement(lam, sc.to_scalar(1))
    assert heis_momentum(momentum_preimage(f)) == f


def test_preimage_rejects_other_levels():
    with pytest.raises(ValueError):
        momentum_preimage(HeisDualElement(SympCovector.zero(1), sc.to_scalar(2)))
    assert classify_dual(HeisDualElement(SympCovector.zero(1), sc.to_scalar(0))).kind == FIXED_POINT
