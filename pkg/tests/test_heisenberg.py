import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisorbit import scalars as sc
from heisorbit.heisenberg import (
    apply_middle,
    Ad,
    Ghat_matrix,
    HeisAlgElement,
    HeisDualElement,
    HeisGroupElement,
    alg_from_matrix,
    bracket,
    coadjoint,
    commutator,
    exp_alg,
    ghat_matrix,
    ghat_violation,
    group_from_matrix,
    in_Ghat,
    in_Ghat_f,
    in_ghat,
    in_ghat_f,
    in_Sp,
    in_sp,
    inverse,
    mul,
    rho,
    rho_alg,
    symplectic_inverse,
)
from heisorbit.scalars import DimensionError
from heisorbit.symplectic import SympCovector, SympVector, extended_form, omega, sharp
from conftest import rational_arrays, rationals


def V(*xs):
    return SympVector(sc.as_array(list(xs), sc.EXACT))


def group_elements(n):
    return st.builds(HeisGroupElement, rational_arrays(2 * n).map(SympVector), rationals)


def alg_elements(n):
    return st.builds(HeisAlgElement, rational_arrays(2 * n).map(SympVector), rationals)


def dual_elements(n):
    return st.builds(HeisDualElement, rational_arrays(2 * n).map(SympCovector), rationals)


def test_mul_example():
    g = mul(HeisGroupElement(V(1, 0), 0), HeisGroupElement(V(0, 1), 0))
    assert g == HeisGroupElement(V(1, 1), sc.to_scalar("1/2"))


@given(group_elements(2), group_elements(2), group_elements(2))
def test_group_axioms(g1, g2, g3):
    e = HeisGroupElement.identity(2)
    assert mul(g1, e) == g1 and mul(e, g1) == g1
    assert mul(g1, inverse(g1)) == e
    assert mul(mul(g1, g2), g3) == mul(g1, mul(g2, g3))


@given(group_elements(2), group_elements(2))
def test_rho_homomorphism(g1, g2):
    assert sc.equal(rho(mul(g1, g2)), sc.matmul(rho(g1), rho(g2)))
    assert group_from_matrix(rho(g1)) == g1


@given(group_elements(3))
def test_rho_structure(g):
    m = rho(g)
    assert sc.equal(np.diag(m), np.ones(8, dtype=object))
    assert sc.rank(m - sc.identity(8)) <= 2
    assert in_Ghat_f(m) and in_Sp(m)


def test_rho_identity():
    assert sc.equal(rho(HeisGroupElement.identity(2)), sc.identity(6))


@given(alg_elements(2), alg_elements(2))
def test_rho_alg_bracket(X, Y):
    c = commutator(rho_alg(X), rho_alg(Y))
    assert sc.equal(c, rho_alg(bracket(X, Y)))
    # only the bottom-left entry can be nonzero, and it is omega(x, y)
    mask = np.ones(c.shape, dtype=bool)
    mask[-1, 0] = False
    assert sc.is_zero(c[mask]) and c[-1, 0] == omega(X.x, Y.x)
    assert alg_from_matrix(rho_alg(X)) == X


@given(alg_elements(2))
def test_rho_alg_nilpotent_and_exp(X):
    N = rho_alg(X)
    N2 = sc.matmul(N, N)
    assert sc.is_zero(sc.matmul(N2, N))
    # N^2 is at most the corner omega(x, x)/2 = 0 plus the middle product
    expm = sc.identity(6) + N + N2 / 2
    assert sc.equal(expm, rho(exp_alg(X)))
    assert in_ghat_f(N) and in_sp(N)


def test_bracket_examples():
    e1, f1 = HeisAlgElement(V(1, 0), 0), HeisAlgElement(V(0, 1), 0)
    assert bracket(e1, f1) == HeisAlgElement(V(0, 0), 1)
    assert bracket(e1, e1) == HeisAlgElement.zero(1)
    assert bracket(e1, HeisAlgElement(V(0, 0), 7)) == HeisAlgElement.zero(1)
    assert exp_alg(bracket(e1, f1)) == HeisGroupElement(V(0, 0), 1)


@given(alg_elements(2), alg_elements(2), alg_elements(2))
def test_bracket_jacobi(X, Y, Z):
    assert bracket(X, Y) == bracket(Y, X) * -1
    total = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
    assert total == HeisAlgElement.zero(2)


@given(group_elements(2), alg_elements(2))
def test_ad_matches_conjugation(g, Y):
    conj = sc.matmul(sc.matmul(rho(g), rho_alg(Y)), rho(inverse(g)))
    assert sc.equal(rho_alg(Ad(g, Y)), conj)


def test_ad_examples():
    Y = HeisAlgElement(V(0, 1), 0)
    assert Ad(HeisGroupElement(V(1, 0), 0), Y) == HeisAlgElement(V(0, 1), 1)
    assert Ad(HeisGroupElement.identity(1), Y) == Y
    central = HeisAlgElement(V(0, 0), 3)
    assert Ad(HeisGroupElement(V(5, -2), 1), central) == central


def test_ad_float_conjugation():
    rng = np.random.default_rng(3)
    for _ in range(50):
        g = HeisGroupElement(SympVector(rng.normal(size=4)), rng.normal())
        Y = HeisAlgElement(SympVector(rng.normal(size=4)), rng.normal())
        conj = rho(g) @ rho_alg(Y) @ np.linalg.inv(rho(g))
        assert np.max(np.abs(rho_alg(Ad(g, Y)) - conj)) <= 1e-12


@given(group_elements(2), group_elements(2), dual_elements(2), alg_elements(2))
def test_coadjoint_action_and_duality(g1, g2, f, Y):
    assert coadjoint(g1, coadjoint(g2, f)) == coadjoint(mul(g1, g2), f)
    assert coadjoint(g1, f)(Y) == f(Ad(inverse(g1), Y))
    assert coadjoint(g1, f).mu == f.mu


def test_coadjoint_examples():
    f = HeisDualElement(SympCovector.zero(1), sc.to_scalar(1))
    moved = coadjoint(HeisGroupElement(V(1, 0), 0), f)
    assert moved == HeisDualElement(-sharp(V(1, 0)), sc.to_scalar(1))
    assert coadjoint(HeisGroupElement(V(0, 0), 9), f) == f
    fixed = HeisDualElement(SympCovector(sc.as_array([1, 2], sc.EXACT)), sc.to_scalar(0))
    assert coadjoint(HeisGroupElement(V(3, 4), 1), fixed) == fixed


def test_dual_evaluation_rule():
    f = HeisDualElement(SympCovector(sc.as_array([2, 3], sc.EXACT)), sc.to_scalar(5))
    assert f(HeisAlgElement(V(1, 1), 2)) == 2 + 3 + 10
    assert f(HeisAlgElement(V(0, 0), 1)) == f.mu


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        mul(HeisGroupElement.identity(1), HeisGroupElement.identity(2))
    with pytest.raises(DimensionError):
        bracket(HeisAlgElement.zero(1), HeisAlgElement.zero(2))


@given(rationals, rational_arrays(4), rationals, rationals.filter(lambda a: a != 0), rational_arrays(4), rationals)
def test_matrix_sets(zeta, d, xi, a, dp, f):
    X = ghat_matrix(zeta, d, xi)
    assert in_ghat(X) and in_sp(X)
    assert in_ghat_f(X) == (zeta == 0)
    P = Ghat_matrix(a, dp, f)
    assert in_Ghat(P) and in_Sp(P)
    assert in_Ghat_f(P) == (a == 1)
    assert sc.equal(sc.matmul(P, symplectic_inverse(P)), sc.identity(6))


def test_ghat_violation_names_the_condition():
    X = ghat_matrix(2, [3, 4], 5, sc.EXACT)
    assert ghat_violation(X) is None
    bad = X.copy()
    bad[-1, -1] = 7
    assert ghat_violation(bad).startswith("ghat.trace_balance")
    bad = X.copy()
    bad[1, 2] = 1
    assert ghat_violation(bad).startswith("ghat.block_shape")
    bad = X.copy()
    bad[-1, 1] = bad[-1, 1] + 1
    assert ghat_violation(bad).startswith("ghat.bottom_row")


def test_float_predicates():
    X = ghat_matrix(0.5, [1.0, -2.0], 0.25)
    assert in_ghat(X) and in_sp(X)
    P = Ghat_matrix(2.0, [1.0, 0.5], -1.0)
    assert in_Sp(P)
    assert np.allclose(P @ symplectic_inverse(P), np.eye(4))


@given(st.integers(1, 4).flatmap(lambda n: rational_arrays(2 * n)))
def test_apply_middle_matches_extended_form_block(d):
    n = d.size // 2
    J = np.asarray(extended_form(n, sc.EXACT).middle)
    assert sc.equal(apply_middle(d), sc.matmul(J, d))
