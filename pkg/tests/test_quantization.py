import numpy as np
import pytest

from heisorbit.heisenberg import mul
from heisorbit.quantization import (
    GridError,
    GridFunction,
    GridSpec,
    HeisAlg3,
    TestFunction,
    bracket3,
    central_character,
    covariant_derivative,
    group3,
    hamiltonian_vf,
    infinitesimal_check,
    inner_product,
    momentum_observable,
    norm,
    observed_order,
    prequant_op,
    prequant_op_closed,
    quant_op,
    random_test_function,
    rep_S,
    rep_S1,
    rep_S1_twisted,
    split3,
    theta_contraction,
    twist_psi,
)
from heisorbit.quantization.testfunctions import TWO_PI_I
from heisorbit.symplectic import SympVector, omega


def pts(rng, dim, count=40, spread=1.5):
    return rng.uniform(-spread, spread, size=(count, dim))


def alg(rng, n, scale=1.0):
    return HeisAlg3(rng.uniform(-scale, scale, n), rng.uniform(-scale, scale, n), rng.uniform(-scale, scale))


# -- the test-function family ----------------------------------------------


def test_derivative_matches_finite_difference(rng):
    f = random_test_function(rng, 2)
    z = pts(rng, 2)
    h = 1e-5
    for axis in range(2):
        e = np.zeros(2)
        e[axis] = h
        fd = (f(z + e) - f(z - e)) / (2 * h)
        assert np.max(np.abs(f.derivative(axis)(z) - fd)) < 1e-7


def test_gaussian_derivative_example():
    f = TestFunction.gaussian(1, width=1.0)
    x = np.linspace(-2, 2, 9)
    # Q(1, 0, 0) f = -f' = 2x e^{-x^2}
    out = quant_op(HeisAlg3([1.0], [0.0], 0.0), f)(x)
    assert np.max(np.abs(out - 2 * x * np.exp(-x**2))) < 1e-14


def test_family_closure_operations(rng):
    f = random_test_function(rng, 2)
    z = pts(rng, 2)
    shift = np.array([0.3, -0.7])
    assert np.max(np.abs(f.translate(shift)(z) - f(z - shift))) < 1e-12
    assert np.max(np.abs(f.times_coordinate(1)(z) - z[:, 1] * f(z))) < 1e-12
    beta = np.array([0.4, 0.1])
    assert np.max(np.abs(f.phase(0.2, beta)(z) - np.exp(TWO_PI_I * (0.2 + z @ beta)) * f(z))) < 1e-12
    lifted = f.lift(2)
    zz = np.concatenate([z, pts(rng, 2)], axis=1)
    assert np.max(np.abs(lifted(zz) - f(z))) < 1e-14
    g = f * 2.0 - f
    assert np.max(np.abs(g(z) - f(z))) < 1e-12


def test_family_rejects_mismatched_envelopes(rng):
    with pytest.raises(ValueError):
        random_test_function(rng, 1) + random_test_function(rng, 1)
    with pytest.raises(ValueError):
        TestFunction(np.ones((2, 2)), [1.0])
    with pytest.raises(ValueError):
        TestFunction(np.ones(2), [-1.0])


# -- phase-space geometry --------------------------------------------------


def test_theta_contraction_examples():
    point = SympVector(np.array([0.5, -1.0, 2.0, 3.0]))
    assert theta_contraction(SympVector(np.zeros(4)), point) == 0
    assert theta_contraction(SympVector(np.array([1.0, 0, 0, 0])), point) == 2.0
    assert theta_contraction(SympVector(np.array([0, 0, 1.0, 0])), point) == 0


def test_covariant_derivative_examples(rng):
    one = TestFunction.gaussian(2, width=0.0)  # the constant 1
    z = pts(rng, 2)
    out = covariant_derivative(SympVector(np.array([1.0, 0.0])), one)(z)
    assert np.max(np.abs(out - TWO_PI_I * z[:, 1])) < 1e-14
    out = covariant_derivative(SympVector(np.array([0.0, 1.0])), one)(z)
    assert np.max(np.abs(out)) < 1e-14
    f = random_test_function(rng, 2)
    assert np.max(np.abs(covariant_derivative(SympVector(np.zeros(2)), f)(z))) == 0


def test_covariant_derivative_linear(rng):
    f = random_test_function(rng, 4)
    g = f * (0.3 - 1.2j) + f.times_coordinate(2)
    X, Y = SympVector(rng.normal(size=4)), SympVector(rng.normal(size=4))
    z = pts(rng, 4)
    lhs = covariant_derivative(X + Y, f)(z)
    rhs = covariant_derivative(X, f)(z) + covariant_derivative(Y, f)(z)
    assert np.max(np.abs(lhs - rhs)) < 1e-10
    lhs = covariant_derivative(X, f + g)(z)
    rhs = covariant_derivative(X, f)(z) + covariant_derivative(X, g)(z)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_hamiltonian_vector_field(rng):
    assert np.all(hamiltonian_vf(HeisAlg3([0.0], [0.0], 2.0)).coords == 0)
    X = hamiltonian_vf(HeisAlg3([1.5, 2.0], [0.0, 0.0], 0.0))
    assert np.allclose(X.coords, [1.5, 2.0, 0.0, 0.0])
    a, b = alg(rng, 2), alg(rng, 2)
    assert abs(omega(hamiltonian_vf(a), hamiltonian_vf(b)) - bracket3(a, b).s) < 1e-14
    gx, gy, c = momentum_observable(a)
    assert np.allclose(gx, -a.eta) and np.allclose(gy, a.xi) and c == a.s


# -- prequantization and quantization --------------------------------------


def test_prequant_examples(rng):
    f = random_test_function(rng, 2)
    z = pts(rng, 2)
    out = prequant_op(HeisAlg3([0.0], [0.0], 1.0), f)(z)
    assert np.max(np.abs(out - TWO_PI_I * f(z))) < 1e-12
    out = prequant_op(HeisAlg3([0.7], [0.0], 0.0), f)(z)
    assert np.max(np.abs(out + 0.7 * f.derivative(0)(z))) < 1e-12


def test_prequant_closed_form_and_homomorphism(rng):
    for n in (1, 2, 3):
        f = random_test_function(rng, 2 * n, degree=1)
        a, b = alg(rng, n), alg(rng, n)
        z = pts(rng, 2 * n)
        assert np.max(np.abs(prequant_op(a, f)(z) - prequant_op_closed(a, f)(z))) < 1e-10
        ab = prequant_op(a, prequant_op(b, f))(z)
        ba = prequant_op(b, prequant_op(a, f))(z)
        rhs = prequant_op(bracket3(a, b), f)(z)
        assert np.max(np.abs(ab - ba - rhs)) < 1e-10 * np.max(np.abs(ab))
        assert np.max(np.abs(rhs - TWO_PI_I * bracket3(a, b).s * f(z))) < 1e-10


def test_quant_commutator(rng):
    for n in (1, 2, 3):
        f = random_test_function(rng, n)
        a, b = alg(rng, n), alg(rng, n)
        z = pts(rng, n)
        comm = quant_op(a, quant_op(b, f))(z) - quant_op(b, quant_op(a, f))(z)
        assert np.max(np.abs(comm - quant_op(bracket3(a, b), f)(z))) < 1e-10


def test_quant_polarization(rng):
    for n in (1, 2):
        f = random_test_function(rng, n)
        a = alg(rng, n)
        x = pts(rng, n)
        xy = np.concatenate([x, pts(rng, n)], axis=1)
        assert np.max(np.abs(quant_op(a, f)(x) - prequant_op(a, f.lift(n))(xy))) < 1e-10


def test_quant_phase_only():
    f = TestFunction.gaussian(1)
    x = np.linspace(-1, 1, 5)
    assert np.max(np.abs(quant_op(HeisAlg3([0.0], [0.0], 1.0), f)(x) - TWO_PI_I * f(x))) < 1e-15


def test_quant_dimension_check(rng):
    with pytest.raises(ValueError):
        quant_op(alg(rng, 2), random_test_function(rng, 1))


# -- grids -----------------------------------------------------------------


def test_grid_spec():
    spec = GridSpec(1, 8.0, 2048)
    assert spec.h == 16 / 2048 and spec.axis[0] == -8.0
    assert spec.lattice_steps([3 * spec.h]).tolist() == [3]
    with pytest.raises(GridError):
        spec.lattice_steps([0.5 * spec.h])
    with pytest.raises(GridError):
        GridSpec(1, 8.0, 1000)
    with pytest.raises(GridError):
        GridFunction(spec, np.zeros(10))


def test_grid_rejects_coarse_derivative():
    F = GridFunction(GridSpec(1, 1.0, 8), np.zeros(8))
    with pytest.raises(GridError):
        F.derivative(0)


def test_gaussian_quadrature():
    spec = GridSpec(1, 6.0, 512)
    F = GridFunction.sample(spec, lambda z: np.exp(-np.pi * z[..., 0] ** 2))
    assert abs(inner_product(F, F) - 1 / np.sqrt(2)) < 1e-10
    value = inner_product(F, F)
    assert value.real >= 0 and value.imag == 0


def test_inner_product_is_hermitian(rng):
    spec = GridSpec(1, 8.0, 256)
    F = GridFunction.sample(spec, random_test_function(rng, 1))
    G = GridFunction.sample(spec, random_test_function(rng, 1))
    assert abs(inner_product(F, G) - np.conj(inner_product(G, F))) < 1e-14
    assert abs(inner_product(F * 2j, G) - 2j * inner_product(F, G)) < 1e-13
    assert abs(inner_product(F, G * 2j) + 2j * inner_product(F, G)) < 1e-13


def _narrow(rng, n=1):
    f = random_test_function(rng, n)
    return TestFunction(f.coeffs, np.full(n, 3.0), f.center, f.freq)


def test_grid_commutator_and_skew_hermitian(rng):
    spec = GridSpec(1, 8.0, 2048)
    F = GridFunction.sample(spec, _narrow(rng))
    G = GridFunction.sample(spec, _narrow(rng))
    a, b = alg(rng, 1), alg(rng, 1)
    ab = quant_op(a, quant_op(b, F)).values
    ba = quant_op(b, quant_op(a, F)).values
    rhs = quant_op(bracket3(a, b), F).values
    assert np.max(np.abs(ab - ba - rhs)) <= 1e-6 * np.max(np.abs(ab))
    skew = inner_product(quant_op(a, F), G) + inner_product(F, quant_op(a, G))
    assert abs(skew) <= 1e-8


def test_grid_matches_analytic_derivative(rng):
    spec = GridSpec(1, 8.0, 2048)
    f = _narrow(rng)
    F = GridFunction.sample(spec, f)
    exact = GridFunction.sample(spec, f.derivative(0))
    assert np.max(np.abs(F.derivative(0).values - exact.values)) < 1e-6


def test_grid_shift_zero_fill():
    spec = GridSpec(1, 1.0, 16)
    F = GridFunction(spec, np.arange(16, dtype=complex))
    moved = F.shift([2]).values
    assert moved[0] == 0 and moved[1] == 0 and moved[2] == 0 and moved[15] == 13
    back = F.shift([-3]).values
    assert back[0] == 3 and np.all(back[13:] == 0)


# -- representations -------------------------------------------------------


def test_rep_examples(rng):
    f = random_test_function(rng, 1)
    z = pts(rng, 1)
    out = rep_S(2.5, group3([0.0], [0.0], 0.3), f)(z)
    assert np.max(np.abs(out - np.exp(TWO_PI_I * 2.5 * 0.3) * f(z))) < 1e-12
    out = rep_S(2.5, group3([0.4], [0.0], 0.0), f)(z)
    assert np.max(np.abs(out - f(z - 0.4))) < 1e-12


def test_rep_shift_preserves_norm(rng):
    spec = GridSpec(1, 8.0, 1024)
    F = GridFunction.sample(spec, _narrow(rng))
    moved = rep_S(1.0, group3([40 * spec.h], [0.0], 0.0), F)
    assert abs(norm(moved) - norm(F)) < 1e-12


def test_rep_homomorphism_analytic(rng):
    for n in (1, 2, 3):
        f = random_test_function(rng, n)
        g1 = group3(*rng.uniform(-1, 1, (2, n)), rng.uniform(-1, 1))
        g2 = group3(*rng.uniform(-1, 1, (2, n)), rng.uniform(-1, 1))
        z = pts(rng, n)
        for modulus in (1.0, -0.7, 2.3):
            lhs = rep_S(modulus, g1, rep_S(modulus, g2, f))(z)
            rhs = rep_S(modulus, mul(g1, g2), f)(z)
            assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_literal_plus_half_phase_is_not_a_homomorphism(rng):
    """With ``+x/2`` inside the phase, S(g1)S(g2) and S(g1 g2) differ by exp(2 pi i xi <y1, x2>)."""

    def literal(modulus, g, f):
        x, y, t = split3(g)
        return f.translate(x).phase(modulus * (t - 0.5 * float(y @ x)), -modulus * y)

    f = random_test_function(rng, 1)
    g1, g2 = group3([0.3], [0.5], 0.0), group3([0.2], [0.1], 0.0)
    z = pts(rng, 1)
    lhs = literal(1.0, g1, literal(1.0, g2, f))(z)
    rhs = literal(1.0, mul(g1, g2), f)(z)
    assert np.max(np.abs(lhs - rhs)) > 1e-2


def test_rep_unitary_on_grid(rng):
    spec = GridSpec(1, 8.0, 2048)
    F = GridFunction.sample(spec, _narrow(rng))
    G = GridFunction.sample(spec, _narrow(rng))
    g = group3([100 * spec.h], [0.6], 0.2)
    lhs = inner_product(rep_S(1.7, g, F), rep_S(1.7, g, G))
    assert abs(lhs - inner_product(F, G)) < 1e-8


def test_rep_grid_rejects_off_lattice(rng):
    spec = GridSpec(1, 8.0, 256)
    F = GridFunction.sample(spec, _narrow(rng))
    with pytest.raises(GridError):
        rep_S(1.0, group3([0.5 * spec.h], [0.0], 0.0), F)


def test_central_character(rng):
    f = random_test_function(rng, 1)
    z = pts(rng, 1)
    for _ in range(100):
        xi, t = rng.uniform(-3, 3, 2)
        out = rep_S(xi, group3([0.0], [0.0], t), f)(z)
        assert np.max(np.abs(out - central_character(xi, t) * f(z))) < 1e-12


def test_twist(rng):
    for _ in range(100):
        g1 = group3(*rng.uniform(-1, 1, (2, 2)), rng.uniform(-1, 1))
        g2 = group3(*rng.uniform(-1, 1, (2, 2)), rng.uniform(-1, 1))
        lhs, rhs = twist_psi(mul(g1, g2)), mul(twist_psi(g1), twist_psi(g2))
        assert np.allclose(np.concatenate(split3(lhs)[:2]), np.concatenate(split3(rhs)[:2]), atol=1e-14)
        assert abs(lhs.r - rhs.r) < 1e-14
    g = group3([0.1, 0.2], [0.3, 0.4], 0.5)
    g4 = twist_psi(twist_psi(twist_psi(twist_psi(g))))
    assert np.allclose(g4.v.coords, g.v.coords) and g4.r == g.r
    e = group3([0.0], [0.0], 0.0)
    assert np.all(twist_psi(e).v.coords == 0) and twist_psi(e).r == 0


def test_twisted_S1_is_S_one(rng):
    f = random_test_function(rng, 2)
    z = pts(rng, 2)
    g = group3([0.3, -0.2], [0.5, 0.1], 0.7)
    assert np.max(np.abs(rep_S1_twisted(g, f)(z) - rep_S(1.0, g, f)(z))) < 1e-12
    # S_1 on its own coordinates is also a homomorphism
    g1, g2 = group3([0.1, 0.2], [0.3, -0.4], 0.1), group3([-0.5, 0.2], [0.3, 0.6], -0.2)
    lhs = rep_S1(g1, rep_S1(g2, f))(z)
    assert np.max(np.abs(lhs - rep_S1(mul(g1, g2), f)(z))) < 1e-12


# -- infinitesimalization --------------------------------------------------


def test_infinitesimal_convergence(rng):
    for n in (1, 2, 3):
        f = random_test_function(rng, n)
        a = alg(rng, n, 0.2)
        z = pts(rng, n)
        coarse = infinitesimal_check(a, f, 1e-2, z)
        fine = infinitesimal_check(a, f, 1e-3, z)
        assert fine <= 1e-5
        assert observed_order(coarse, fine) >= 1.9


def test_infinitesimal_phase_only_truncation(rng):
    """For a = (0, 0, s) the central difference of exp(2 pi i u s) is i sin(2 pi u s) / u.

    The defect is the closed-form truncation error, which is O(u^2) and not zero.
    """
    f = random_test_function(rng, 1)
    z = pts(rng, 1)
    s, u = 0.8, 1e-3
    expected = np.max(np.abs(f(z))) * abs(2 * np.pi * s - np.sin(2 * np.pi * u * s) / u)
    defect = infinitesimal_check(HeisAlg3([0.0], [0.0], s), f, u, z)
    assert abs(defect - expected) < 1e-9


def test_infinitesimal_rejects_bad_step(rng):
    with pytest.raises(ValueError):
        infinitesimal_check(alg(rng, 1), random_test_function(rng, 1), 0.0, np.zeros((1, 1)))
