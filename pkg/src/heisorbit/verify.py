"""Randomized verification suites.

Each check draws instances from its own RNG stream, derived from the seed
and the ``suite/check`` name, so a check produces the same instances
whether it runs alone, inside its suite, or in parallel with others. A
check compares two independently computed sides per instance and keeps the
largest defect together with the worst counterexample.

In exact mode the algebraic checks demand equality over the rationals;
the quantization suite is numerical and always runs in float mode.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import sampling as rs
from . import scalars as sc
from .heisenberg import (
    Ad,
    HeisAlgElement,
    HeisDualElement,
    HeisGroupElement,
    bracket,
    coadjoint,
    commutator,
    exp_alg,
    in_ghat,
    in_Sp,
    mul,
    rho,
    rho_alg,
)
from .momentum import (
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
from .orbits import (
    L_pair,
    L_w,
    TupleRep,
    classify_dual,
    conjugate_L,
    conjugation_invariance_check,
    decompose_ghat,
    elementary,
    f_last,
    h_mu,
    orbit_pairing,
    reduce_tuple,
    restrict_functional,
    trace_pairing,
    verify_normalizer,
)
from .serialize import to_jsonable
from .symplectic import SympVector, omega
from . import quantization as qz

SUITES = ("group", "momentum", "cotype", "quantization")
ALL = "all"
DEFAULT_N = 2
DEFAULT_TRIALS = 1000
DEFAULT_QUANT_TRIALS = 20
DEFAULT_SEED = 42
DEFAULT_GRID = (2048, 8.0)
FLOAT_ALGEBRA_TOL = 1e-10


class UnknownSuiteError(ValueError):
    pass


@dataclass
class Context:
    """Run parameters shared by every check of one invocation."""

    n: int = DEFAULT_N
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    mode: str = sc.EXACT
    tol: float | None = None
    grid: tuple = DEFAULT_GRID

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.mode not in sc.MODES:
            raise ValueError(f"mode must be one of {sc.MODES}")

    @property
    def algebra_tol(self):
        if self.mode == sc.EXACT:
            return 0.0
        return FLOAT_ALGEBRA_TOL if self.tol is None else float(self.tol)


def _coords(obj):
    """Flatten a value into a 1-D array for comparison."""
    if isinstance(obj, HeisGroupElement):
        return np.concatenate([obj.v.coords, [obj.r]])
    if isinstance(obj, HeisAlgElement):
        return np.concatenate([obj.x.coords, [obj.xi]])
    if isinstance(obj, HeisDualElement):
        return np.concatenate([obj.lam.coords, [obj.mu]])
    if hasattr(obj, "coords"):
        return np.asarray(obj.coords)
    arr = np.asarray(obj)
    if arr.dtype != object and not np.issubdtype(arr.dtype, np.number):
        arr = arr.astype(object)
    return arr.ravel() if arr.ndim else arr.reshape(1)


def _defect(lhs, rhs):
    a = _coords(lhs)
    b = _coords(rhs)
    if a.shape != b.shape:
        return float("inf"), True
    if a.dtype == object and b.dtype == object:
        if a.tolist() == b.tolist():
            return 0.0, False
        return sc.max_abs(a - b), True
    a = np.asarray(a, dtype=complex if np.iscomplexobj(a) or np.iscomplexobj(b) else float)
    b = np.asarray(b, dtype=a.dtype)
    return (float(np.max(np.abs(a - b))) if a.size else 0.0), None


def _finite(x):
    return x if np.isfinite(x) else "inf"


@dataclass
class Check:
    """Accumulates defects for one named identity."""

    name: str
    suite: str
    tolerance: float
    mode: str
    instances: int = 0
    max_defect: float = 0.0
    failed: bool = False
    counterexample: dict | None = None
    detail: dict = field(default_factory=dict)
    _worst: float = -1.0

    def observe(self, defect, payload=None, failed=None):
        self.instances += 1
        defect = float(defect)
        if np.isnan(defect):
            defect = float("inf")
        self.max_defect = max(self.max_defect, defect)
        bad = (defect > self.tolerance) if failed is None else failed
        if bad:
            self.failed = True
            if defect >= self._worst:
                self._worst = defect
                data = payload() if callable(payload) else payload
                self.counterexample = {"defect": _finite(defect), **(data or {})}

    def compare(self, lhs, rhs, **inputs):
        """Record ``lhs`` against ``rhs``; exact arrays must agree exactly."""
        defect, exact_failed = _defect(lhs, rhs)
        self.observe(defect, lambda: {"inputs": inputs, "lhs": lhs, "rhs": rhs}, exact_failed)

    def expect(self, condition, **inputs):
        """Record a boolean property as defect 0 or 1."""
        self.observe(0.0 if condition else 1.0, lambda: {"inputs": inputs}, not condition)

    @property
    def passed(self):
        return not self.failed and self.max_defect <= self.tolerance

    def record(self):
        out = {
            "check": self.name,
            "suite": self.suite,
            "mode": self.mode,
            "instances": self.instances,
            "max_defect": _finite(self.max_defect),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.detail:
            out["detail"] = to_jsonable(self.detail)
        if not self.passed and self.counterexample is not None:
            out["counterexample"] = to_jsonable(self.counterexample)
        return out


def _check(ctx, suite, name, tolerance=None, mode=None):
    mode = mode or ctx.mode
    tol = ctx.algebra_tol if tolerance is None else tolerance
    return Check(name, suite, tol, mode), rs.suite_rng(ctx.seed, f"{suite}/{name}")


# -- group -----------------------------------------------------------------


def group_rho_homomorphism(ctx):
    chk, rng = _check(ctx, "group", "rho_homomorphism")
    for _ in range(ctx.trials):
        g1, g2 = rs.group_element(rng, ctx.n, ctx.mode), rs.group_element(rng, ctx.n, ctx.mode)
        chk.compare(rho(mul(g1, g2)), sc.matmul(rho(g1), rho(g2)), g1=g1, g2=g2)
    return chk


def group_inverse_associativity(ctx):
    chk, rng = _check(ctx, "group", "inverse_and_associativity")
    for _ in range(ctx.trials):
        g1, g2, g3 = (rs.group_element(rng, ctx.n, ctx.mode) for _ in range(3))
        e = HeisGroupElement.identity(ctx.n, ctx.mode)
        chk.compare(mul(g1, g1.inverse()), e, g=g1)
        chk.compare(mul(mul(g1, g2), g3), mul(g1, mul(g2, g3)), g1=g1, g2=g2, g3=g3)
    return chk


def group_bracket_isomorphism(ctx):
    chk, rng = _check(ctx, "group", "rho_alg_bracket")
    for _ in range(ctx.trials):
        X, Y = rs.alg_element(rng, ctx.n, ctx.mode), rs.alg_element(rng, ctx.n, ctx.mode)
        chk.compare(commutator(rho_alg(X), rho_alg(Y)), rho_alg(bracket(X, Y)), X=X, Y=Y)
    return chk


def group_bracket_axioms(ctx):
    chk, rng = _check(ctx, "group", "bracket_antisymmetry_jacobi")
    for _ in range(ctx.trials):
        X, Y, Z = (rs.alg_element(rng, ctx.n, ctx.mode) for _ in range(3))
        chk.compare(bracket(X, Y), bracket(Y, X) * -1, X=X, Y=Y)
        jacobi = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
        chk.compare(jacobi, HeisAlgElement.zero(ctx.n, ctx.mode), X=X, Y=Y, Z=Z)
    return chk


def group_exp_consistency(ctx):
    """``expm(N) = I + N + N^2/2`` because ``N^3 = 0``; compared with ``rho(exp X)``."""
    chk, rng = _check(ctx, "group", "exp_matrix_consistency")
    size = 2 * ctx.n + 2
    for _ in range(ctx.trials):
        X = rs.alg_element(rng, ctx.n, ctx.mode)
        N = rho_alg(X)
        N2 = sc.matmul(N, N)
        chk.compare(sc.matmul(N2, N), sc.zeros((size, size), ctx.mode), X=X)
        series = sc.identity(size, ctx.mode) + N + N2 / 2
        chk.compare(series, rho(exp_alg(X)), X=X)
    return chk


def group_ad_conjugation(ctx):
    chk, rng = _check(ctx, "group", "ad_matrix_conjugation")
    for _ in range(ctx.trials):
        g, Y = rs.group_element(rng, ctx.n, ctx.mode), rs.alg_element(rng, ctx.n, ctx.mode)
        conj = sc.matmul(sc.matmul(rho(g), rho_alg(Y)), rho(g.inverse()))
        chk.compare(rho_alg(Ad(g, Y)), conj, g=g, Y=Y)
    return chk


def group_coadjoint_action(ctx):
    chk, rng = _check(ctx, "group", "coadjoint_left_action")
    for _ in range(ctx.trials):
        g1, g2 = rs.group_element(rng, ctx.n, ctx.mode), rs.group_element(rng, ctx.n, ctx.mode)
        f = rs.dual_element(rng, ctx.n, ctx.mode)
        chk.compare(coadjoint(g1, coadjoint(g2, f)), coadjoint(mul(g1, g2), f), g1=g1, g2=g2, f=f)
    return chk


def group_coadjoint_duality(ctx):
    chk, rng = _check(ctx, "group", "coadjoint_duality")
    for _ in range(ctx.trials):
        g, f, Y = rs.group_element(rng, ctx.n, ctx.mode), rs.dual_element(rng, ctx.n, ctx.mode), rs.alg_element(rng, ctx.n, ctx.mode)
        chk.compare(coadjoint(g, f)(Y), f(Ad(g.inverse(), Y)), g=g, f=f, Y=Y)
    return chk


def group_mu_invariance(ctx):
    chk, rng = _check(ctx, "group", "coadjoint_mu_invariance")
    for _ in range(ctx.trials):
        g, f = rs.group_element(rng, ctx.n, ctx.mode), rs.dual_element(rng, ctx.n, ctx.mode)
        chk.compare(coadjoint(g, f).mu, f.mu, g=g, f=f)
    return chk


# -- momentum --------------------------------------------------------------

BASE_POINTS = 10


def momentum_cocycle(ctx):
    """``{J^y, J^z}(v) - J^{[y,z]}(v) = omega(y, z)`` at several base points."""
    chk, rng = _check(ctx, "momentum", "cocycle_base_point_independence")
    for _ in range(ctx.trials):
        y, z = rs.vector(rng, ctx.n, ctx.mode), rs.vector(rng, ctx.n, ctx.mode)
        sigma = affine_cocycle(y, z)
        for _ in range(BASE_POINTS):
            v = rs.vector(rng, ctx.n, ctx.mode)
            chk.compare(affine_poisson_bracket(y, z, v) - affine_bracket_term(y, z, v), sigma, y=y, z=z, v=v)
    return chk


def momentum_affine_shift(ctx):
    chk, rng = _check(ctx, "momentum", "affine_shift_identity")
    for _ in range(ctx.trials):
        v, a, x = (rs.vector(rng, ctx.n, ctx.mode) for _ in range(3))
        chk.compare(affine_momentum(v + a)(x), affine_momentum(v)(x) + omega(x, a), v=v, a=a, x=x)
    return chk


def momentum_nonequivariance(ctx):
    """The shift ``J(v + a) - J(v)`` is the same covector for every ``v``."""
    chk, rng = _check(ctx, "momentum", "nonequivariance_witness")
    for _ in range(ctx.trials):
        a, v1, v2 = (rs.vector(rng, ctx.n, ctx.mode) for _ in range(3))
        d1 = affine_momentum(v1 + a) - affine_momentum(v1)
        d2 = affine_momentum(v2 + a) - affine_momentum(v2)
        chk.compare(d1, d2, a=a, v1=v1, v2=v2)
    return chk


def momentum_hamiltonian_exact(ctx):
    """``dJ^x(v) w = omega(x, w)``; exact because ``J^x`` is linear."""
    chk, rng = _check(ctx, "momentum", "hamiltonian_gradient")
    for _ in range(ctx.trials):
        x, v, w = (rs.vector(rng, ctx.n, ctx.mode) for _ in range(3))
        chk.compare(affine_hamiltonian(x, v + w) - affine_hamiltonian(x, v), omega(x, w), x=x, v=v, w=w)
    return chk


def momentum_hamiltonian_fd(ctx):
    chk, rng = _check(ctx, "momentum", "hamiltonian_gradient_finite_difference", 1e-6, sc.FLOAT)
    for _ in range(ctx.trials):
        x, v, w = (rs.vector(rng, ctx.n, sc.FLOAT) for _ in range(3))
        exact = omega(x, w)
        fd = directional_derivative_fd(x, v, w)
        chk.observe(abs(fd - exact) / max(abs(exact), 1.0), {"inputs": {"x": x, "v": v, "w": w}, "lhs": fd, "rhs": exact})
    return chk


def momentum_equivariance(ctx):
    chk, rng = _check(ctx, "momentum", "heisenberg_equivariance")
    for _ in range(ctx.trials):
        g, v = rs.group_element(rng, ctx.n, ctx.mode), rs.vector(rng, ctx.n, ctx.mode)
        chk.compare(heis_momentum(v + g.v), coadjoint(g, heis_momentum(v)), g=g, v=v)
    return chk


def momentum_matrix_front_end(ctx):
    chk, rng = _check(ctx, "momentum", "matrix_front_end")
    for _ in range(ctx.trials):
        X, v = rs.alg_element(rng, ctx.n, ctx.mode), rs.vector(rng, ctx.n, ctx.mode)
        chk.compare(heis_momentum_on_matrix(v, rho_alg(X)), heis_momentum(v)(X), X=X, v=v)
        chk.compare(heis_hamiltonian(X, v), heis_momentum(v)(X), X=X, v=v)
    return chk


def momentum_image_modulus(ctx):
    """The image is the orbit of modulus 1: classify ``J(v)`` for random ``v``."""
    chk, rng = _check(ctx, "momentum", "image_modulus_one")
    tag = momentum_image(ctx.n, ctx.mode)
    chk.expect(tag.kind == GENERIC and tag.modulus == 1 and tag.dim == 2 * ctx.n, tag=tag.__dict__)
    for _ in range(min(ctx.trials, 100)):
        v = rs.vector(rng, ctx.n, ctx.mode)
        f = heis_momentum(v)
        desc = classify_dual(f)
        chk.expect(desc.kind == GENERIC and desc.mu == 1 and verify_normalizer(f, desc, _tol_arg(ctx)), v=v)
    return chk


def momentum_surjectivity(ctx):
    chk, rng = _check(ctx, "momentum", "image_surjectivity")
    one = sc.to_scalar(1, ctx.mode)
    for _ in range(ctx.trials):
        f = rs.dual_element(rng, ctx.n, ctx.mode, mu=one)
        chk.compare(heis_momentum(momentum_preimage(f)), f, f=f)
    return chk


# -- cotype ----------------------------------------------------------------


def _tol_arg(ctx):
    return None if ctx.mode == sc.EXACT else ctx.algebra_tol


def cotype_lw_closed_form(ctx):
    """Closed-form ``L_w`` against the outer-product definition."""
    chk, rng = _check(ctx, "cotype", "lw_closed_form")
    for _ in range(ctx.trials):
        w = rs.ext_vector(rng, ctx.n, ctx.mode)
        Lw = L_w(w)
        chk.compare(Lw, L_pair(w, f_last(ctx.n, ctx.mode)), w=w)
        chk.expect(in_ghat(Lw, _tol_arg(ctx)), w=w)
    return chk


def cotype_decomposition(ctx):
    chk, rng = _check(ctx, "cotype", "ghat_decomposition_round_trip")
    for _ in range(ctx.trials):
        X = rs.ghat_element(rng, ctx.n, ctx.mode)
        chk.compare(L_w(decompose_ghat(X, _tol_arg(ctx))), X, X=X)
        w = rs.ext_vector(rng, ctx.n, ctx.mode)
        chk.compare(decompose_ghat(L_w(w), _tol_arg(ctx)), w, w=w)
    return chk


def cotype_lw_conjugation(ctx):
    """``P L_{w,f} P^-1 = L_{Pw, Pf}``; ``P`` alternates between Ghat and Ghat_f."""
    chk, rng = _check(ctx, "cotype", "lw_conjugation")
    for i in range(ctx.trials):
        P = rs.Ghat_element(rng, ctx.n, ctx.mode) if i % 2 == 0 else rs.Ghat_f_element(rng, ctx.n, ctx.mode)
        w = rs.ext_vector(rng, ctx.n, ctx.mode)
        lhs, rhs = conjugate_L(P, w, _tol_arg(ctx))
        chk.compare(lhs, rhs, P=P, w=w)
    return chk


def cotype_trace_vanishing(ctx):
    chk, rng = _check(ctx, "cotype", "trace_pairing_vanishes")
    for _ in range(ctx.trials):
        X, Z = rs.ghat_element(rng, ctx.n, ctx.mode), rs.ghat_f_element(rng, ctx.n, ctx.mode)
        chk.compare(trace_pairing(X, Z), sc.to_scalar(0, ctx.mode), X=X, Z=Z)
    return chk


def cotype_corner_invariance(ctx):
    chk, rng = _check(ctx, "cotype", "corner_conjugation_invariance")
    for _ in range(ctx.trials):
        P, xi = rs.Ghat_f_element(rng, ctx.n, ctx.mode), rs.scalar(rng, ctx.mode)
        lhs, rhs = conjugation_invariance_check(P, xi, _tol_arg(ctx))
        chk.compare(lhs, rhs, P=P, xi=xi)
    return chk


def cotype_reduction(ctx):
    """Reduction leaves only the ``[2n+1, 0]`` entry, equal to the corner ``xi``."""
    chk, rng = _check(ctx, "cotype", "tuple_reduction")
    size = 2 * ctx.n + 2
    E = elementary(ctx.n, size - 1, 0, ctx.mode)
    for _ in range(ctx.trials):
        zeta, d, xi = rs.scalar(rng, ctx.mode), rs.array(rng, 2 * ctx.n, ctx.mode), rs.scalar(rng, ctx.mode)
        t = TupleRep.from_params(zeta, d, xi, ctx.mode)
        w, desc = reduce_tuple(t, _tol_arg(ctx))
        chk.compare(t.Y + L_w(w), E * xi, zeta=zeta, d=d, xi=xi)
        chk.compare(desc.modulus, xi, zeta=zeta, d=d, xi=xi)
        chk.expect((desc.height == 0) == (xi == 0), zeta=zeta, d=d, xi=xi)
    return chk


def cotype_modulus_shift(ctx):
    """Adding ``L_{w'}`` with zero ``f_{n+1}`` component keeps the modulus."""
    chk, rng = _check(ctx, "cotype", "modulus_under_lw_shift")
    for _ in range(ctx.trials):
        Y = rs.ghat_element(rng, ctx.n, ctx.mode)
        w2 = rs.ext_vector(rng, ctx.n, ctx.mode)
        w2[-1] = w2[-1] * 0
        _, before = reduce_tuple(TupleRep(ctx.n, Y), _tol_arg(ctx))
        _, after = reduce_tuple(TupleRep(ctx.n, Y + L_w(w2)), _tol_arg(ctx))
        chk.compare(after.modulus, before.modulus, Y=Y, w=w2)
    return chk


def cotype_trace_functional(ctx):
    """Trace functional against the reduction: ``mu(ell_{Y^T}) = modulus(Y)``."""
    chk, rng = _check(ctx, "cotype", "trace_functional")
    size = 2 * ctx.n + 2
    anchor = restrict_functional(elementary(ctx.n, 0, size - 1, ctx.mode))
    chk.compare(anchor, h_mu(ctx.n, 1, ctx.mode))
    for _ in range(ctx.trials):
        Y = rs.ghat_element(rng, ctx.n, ctx.mode)
        _, desc = reduce_tuple(TupleRep(ctx.n, Y), _tol_arg(ctx))
        chk.compare(restrict_functional(Y.T.copy()).mu, desc.modulus, Y=Y)
        chk.compare(restrict_functional(Y), h_mu(ctx.n, 0, ctx.mode), Y=Y)
    return chk


def cotype_classify(ctx):
    chk, rng = _check(ctx, "cotype", "orbit_normalizer")
    for _ in range(ctx.trials):
        f = rs.dual_element(rng, ctx.n, ctx.mode, mu=rs.nonzero_scalar(rng, ctx.mode))
        desc = classify_dual(f)
        chk.compare(coadjoint(desc.normalizer, f), desc.representative, f=f)
        chk.expect(desc.kind == GENERIC and sc.is_zero(desc.representative.lam.coords, _tol_arg(ctx)), f=f)
    return chk


def cotype_fixed_points(ctx):
    chk, rng = _check(ctx, "cotype", "fixed_point_orbits")
    zero = sc.to_scalar(0, ctx.mode)
    for _ in range(ctx.trials):
        f = rs.dual_element(rng, ctx.n, ctx.mode, mu=zero)
        g = rs.group_element(rng, ctx.n, ctx.mode)
        chk.compare(coadjoint(g, f), f, g=g, f=f)
        chk.expect(classify_dual(f).kind != GENERIC, f=f)
    return chk


def cotype_isotropy(ctx):
    """Nonzero ``x`` always moves ``h_mu`` when ``mu != 0``; central elements fix it."""
    chk, rng = _check(ctx, "cotype", "orbit_isotropy")
    for _ in range(ctx.trials):
        mu = rs.nonzero_scalar(rng, ctx.mode)
        h = h_mu(ctx.n, mu, ctx.mode)
        x = rs.nonzero_vector(rng, ctx.n, ctx.mode)
        t = rs.scalar(rng, ctx.mode)
        moved = coadjoint(HeisGroupElement(x, t), h)
        chk.expect(not sc.equal(_coords(moved), _coords(h), _tol_arg(ctx)), mu=mu, x=x, t=t)
        central = coadjoint(HeisGroupElement(SympVector.zero(ctx.n, ctx.mode), t), h)
        chk.compare(central, h, mu=mu, t=t)
    return chk


def cotype_orbit_scaling(ctx):
    chk, rng = _check(ctx, "cotype", "orbit_form_scaling")
    for _ in range(ctx.trials):
        xi = rs.scalar(rng, ctx.mode)
        a, b = rs.alg_element(rng, ctx.n, ctx.mode), rs.alg_element(rng, ctx.n, ctx.mode)
        lhs = orbit_pairing(h_mu(ctx.n, xi, ctx.mode), a, b)
        rhs = xi * orbit_pairing(h_mu(ctx.n, 1, ctx.mode), a, b)
        chk.compare(lhs, rhs, xi=xi, a=a, b=b)
        f, g = rs.dual_element(rng, ctx.n, ctx.mode), rs.group_element(rng, ctx.n, ctx.mode)
        chk.compare(orbit_pairing(coadjoint(g, f), a, b), orbit_pairing(f, a, b), f=f, g=g, a=a, b=b)
    return chk


def cotype_symplectic_sampling(ctx):
    """The sampled Ghat matrices are symplectic for the extended form."""
    chk, rng = _check(ctx, "cotype", "ghat_group_symplectic")
    for _ in range(ctx.trials):
        P = rs.Ghat_element(rng, ctx.n, ctx.mode)
        chk.expect(in_Sp(P, _tol_arg(ctx)), P=P)
    return chk


# -- quantization ----------------------------------------------------------

ANALYTIC_DIMS = (1, 2, 3)
TOL_COMMUTATOR_ANALYTIC = 1e-10
TOL_COMMUTATOR_GRID = 1e-6
TOL_PREQUANT = 1e-10
TOL_SKEW = 1e-8
TOL_UNITARY = 1e-8
TOL_HOMOMORPHISM = 1e-12
TOL_CENTRAL = 1e-12
TOL_INFINITESIMAL = 1e-5
MIN_ORDER = 1.9
TOL_QUADRATURE = 1e-10
U_COARSE, U_FINE = 1e-2, 1e-3
# the defect is cubic in u*a, so the absolute bound at U_FINE fixes a scale for a
INFINITESIMAL_SCALE = 0.2


def _qcheck(ctx, name, tol):
    return _check(ctx, "quantization", name, tol, sc.FLOAT)


def _alg3(rng, n, scale=1.0):
    return qz.HeisAlg3(rng.uniform(-scale, scale, n), rng.uniform(-scale, scale, n), rng.uniform(-scale, scale))


def _points(rng, dim, count=64, spread=1.5):
    return rng.uniform(-spread, spread, size=(count, dim))


def _relative(lhs, rhs, *scales):
    scale = max([float(np.max(np.abs(s))) for s in scales] + [1e-300])
    return float(np.max(np.abs(lhs - rhs))) / scale


def _grid_spec(ctx, n=1):
    N, L = ctx.grid
    return qz.GridSpec(n, float(L), int(N))


def _grid_test_function(rng, spec):
    """Test function with negligible mass outside ``[-L/2, L/2]``."""
    half = spec.L / 2
    width = rng.uniform(1.0, 1.5, spec.n) * (35.0 / (half - 0.5) ** 2)
    f = qz.random_test_function(rng, spec.n, degree=2)
    return qz.TestFunction(f.coeffs, width, f.center, f.freq)


def _lattice_vector(rng, spec, max_steps):
    return spec.h * rng.integers(-max_steps, max_steps + 1, size=spec.n)


def quant_commutator_analytic(ctx):
    chk, rng = _qcheck(ctx, "commutator_analytic", TOL_COMMUTATOR_ANALYTIC)
    for i in range(ctx.trials):
        n = ANALYTIC_DIMS[i % len(ANALYTIC_DIMS)]
        f = qz.random_test_function(rng, n)
        a, b = _alg3(rng, n), _alg3(rng, n)
        z = _points(rng, n)
        ab = qz.quant_op(a, qz.quant_op(b, f))(z)
        ba = qz.quant_op(b, qz.quant_op(a, f))(z)
        rhs = qz.quant_op(qz.bracket3(a, b), f)(z)
        chk.observe(_relative(ab - ba, rhs, ab, ba), {"inputs": {"a": a.__dict__, "b": b.__dict__, "f": repr(f)}})
    return chk


def quant_commutator_grid(ctx):
    chk, rng = _qcheck(ctx, "commutator_grid", TOL_COMMUTATOR_GRID)
    spec = _grid_spec(ctx)
    for _ in range(ctx.trials):
        F = qz.GridFunction.sample(spec, _grid_test_function(rng, spec))
        a, b = _alg3(rng, 1), _alg3(rng, 1)
        ab = qz.quant_op(a, qz.quant_op(b, F)).values
        ba = qz.quant_op(b, qz.quant_op(a, F)).values
        rhs = qz.quant_op(qz.bracket3(a, b), F).values
        chk.observe(_relative(ab - ba, rhs, ab, ba), {"inputs": {"a": a.__dict__, "b": b.__dict__}})
    return chk


def quant_prequant_homomorphism(ctx):
    chk, rng = _qcheck(ctx, "prequantization_homomorphism", TOL_PREQUANT)
    for i in range(ctx.trials):
        n = ANALYTIC_DIMS[i % len(ANALYTIC_DIMS)]
        f = qz.random_test_function(rng, 2 * n, degree=1)
        a, b = _alg3(rng, n), _alg3(rng, n)
        z = _points(rng, 2 * n)
        ab = qz.prequant_op(a, qz.prequant_op(b, f))(z)
        ba = qz.prequant_op(b, qz.prequant_op(a, f))(z)
        rhs = qz.prequant_op(qz.bracket3(a, b), f)(z)
        chk.observe(_relative(ab - ba, rhs, ab, ba), {"inputs": {"a": a.__dict__, "b": b.__dict__}})
    return chk


def quant_prequant_closed_form(ctx):
    chk, rng = _qcheck(ctx, "prequantization_closed_form", TOL_PREQUANT)
    for i in range(ctx.trials):
        n = ANALYTIC_DIMS[i % len(ANALYTIC_DIMS)]
        f = qz.random_test_function(rng, 2 * n)
        a = _alg3(rng, n)
        z = _points(rng, 2 * n)
        lhs, rhs = qz.prequant_op(a, f)(z), qz.prequant_op_closed(a, f)(z)
        chk.observe(_relative(lhs, rhs, lhs, rhs), {"inputs": {"a": a.__dict__}})
    return chk


def quant_polarization(ctx):
    """``Q(a) f`` equals ``P(a)`` on the lift of ``f`` that is constant in ``y``."""
    chk, rng = _qcheck(ctx, "polarization_consistency", TOL_PREQUANT)
    for i in range(ctx.trials):
        n = ANALYTIC_DIMS[i % len(ANALYTIC_DIMS)]
        f = qz.random_test_function(rng, n)
        a = _alg3(rng, n)
        x = _points(rng, n)
        xy = np.concatenate([x, _points(rng, n, count=x.shape[0])], axis=1)
        lhs, rhs = qz.quant_op(a, f)(x), qz.prequant_op(a, f.lift(n))(xy)
        chk.observe(_relative(lhs, rhs, lhs, rhs), {"inputs": {"a": a.__dict__}})
    return chk


def quant_skew_hermitian(ctx):
    chk, rng = _qcheck(ctx, "skew_hermitian", TOL_SKEW)
    spec = _grid_spec(ctx)
    for _ in range(ctx.trials):
        F = qz.GridFunction.sample(spec, _grid_test_function(rng, spec))
        G = qz.GridFunction.sample(spec, _grid_test_function(rng, spec))
        a = _alg3(rng, 1)
        lhs = qz.inner_product(qz.quant_op(a, F), G)
        rhs = -qz.inner_product(F, qz.quant_op(a, G))
        chk.observe(abs(lhs - rhs), {"inputs": {"a": a.__dict__}, "lhs": lhs, "rhs": rhs})
    return chk


def quant_unitarity(ctx):
    chk, rng = _qcheck(ctx, "unitarity", TOL_UNITARY)
    spec = _grid_spec(ctx)
    max_steps = int(spec.L / 4 / spec.h)
    for _ in range(ctx.trials):
        F = qz.GridFunction.sample(spec, _grid_test_function(rng, spec))
        G = qz.GridFunction.sample(spec, _grid_test_function(rng, spec))
        modulus = rng.uniform(-2, 2)
        g = qz.group3(_lattice_vector(rng, spec, max_steps), rng.uniform(-1, 1, spec.n), rng.uniform(-1, 1))
        lhs = qz.inner_product(qz.rep_S(modulus, g, F), qz.rep_S(modulus, g, G))
        rhs = qz.inner_product(F, G)
        chk.observe(abs(lhs - rhs), {"inputs": {"modulus": modulus, "g": g}, "lhs": lhs, "rhs": rhs})
    return chk


def quant_homomorphism(ctx):
    """``S(g1) S(g2) = S(g1 g2)`` on the test family and on lattice grid shifts."""
    chk, rng = _qcheck(ctx, "representation_homomorphism", TOL_HOMOMORPHISM)
    spec = _grid_spec(ctx)
    max_steps = int(spec.L / 8 / spec.h)
    for i in range(ctx.trials):
        n = ANALYTIC_DIMS[i % len(ANALYTIC_DIMS)]
        f = qz.random_test_function(rng, n)
        modulus = rng.uniform(-2, 2)
        g1, g2 = (qz.group3(*rng.uniform(-1, 1, (2, n)), rng.uniform(-1, 1)) for _ in range(2))
        z = _points(rng, n)
        lhs = qz.rep_S(modulus, g1, qz.rep_S(modulus, g2, f))(z)
        rhs = qz.rep_S(modulus, mul(g1, g2), f)(z)
        chk.observe(float(np.max(np.abs(lhs - rhs))), {"inputs": {"modulus": modulus, "g1": g1, "g2": g2}})
        F = qz.GridFunction.sample(spec, _grid_test_function(rng, spec))
        h1, h2 = (qz.group3(_lattice_vector(rng, spec, max_steps), rng.uniform(-1, 1, 1), rng.uniform(-1, 1)) for _ in range(2))
        lhs = qz.rep_S(modulus, h1, qz.rep_S(modulus, h2, F)).values
        rhs = qz.rep_S(modulus, mul(h1, h2), F).values
        chk.observe(float(np.max(np.abs(lhs - rhs))), {"inputs": {"modulus": modulus, "g1": h1, "g2": h2}})
    return chk


def quant_twist(ctx):
    """``psi`` is an automorphism of order four and ``S_1 o psi = S_1`` in the corrected form."""
    chk, rng = _qcheck(ctx, "twist_automorphism", TOL_HOMOMORPHISM)
    for i in range(ctx.trials):
        n = ANALYTIC_DIMS[i % len(ANALYTIC_DIMS)]
        g1, g2 = (qz.group3(*rng.uniform(-1, 1, (2, n)), rng.uniform(-1, 1)) for _ in range(2))
        chk.compare(qz.twist_psi(mul(g1, g2)), mul(qz.twist_psi(g1), qz.twist_psi(g2)), g1=g1, g2=g2)
        g4 = g1
        for _ in range(4):
            g4 = qz.twist_psi(g4)
        chk.compare(g4, g1, g=g1)
        f = qz.random_test_function(rng, n)
        z = _points(rng, n)
        chk.compare(qz.rep_S1_twisted(g1, f)(z), qz.rep_S(1.0, g1, f)(z), g=g1)
    return chk


def quant_central_character(ctx):
    chk, rng = _qcheck(ctx, "central_character", TOL_CENTRAL)
    f = qz.random_test_function(rng, 1)
    z = _points(rng, 1)
    base = f(z)
    for _ in range(max(ctx.trials, 100)):
        modulus, t = rng.uniform(-3, 3), rng.uniform(-3, 3)
        lhs = qz.rep_S(modulus, qz.group3([0.0], [0.0], t), f)(z)
        chk.observe(float(np.max(np.abs(lhs - qz.central_character(modulus, t) * base))), {"inputs": {"modulus": modulus, "t": t}})
    return chk


def quant_infinitesimal(ctx):
    """Central difference of ``u -> S~_1(u a) f`` against ``Q(a) f`` at ``u = 1e-3``."""
    chk, rng = _qcheck(ctx, "infinitesimal_defect", TOL_INFINITESIMAL)
    order, _ = _qcheck(ctx, "infinitesimal_order", 0.0)
    worst_order = np.inf
    for i in range(ctx.trials):
        n = ANALYTIC_DIMS[i % len(ANALYTIC_DIMS)]
        f = qz.random_test_function(rng, n)
        a = _alg3(rng, n, INFINITESIMAL_SCALE)
        z = _points(rng, n)
        coarse = qz.infinitesimal_check(a, f, U_COARSE, z)
        fine = qz.infinitesimal_check(a, f, U_FINE, z)
        payload = {"inputs": {"a": a.__dict__, "f": repr(f)}, "defect_coarse": coarse, "defect_fine": fine}
        chk.observe(fine, payload)
        p = qz.observed_order(coarse, fine, U_COARSE / U_FINE)
        worst_order = min(worst_order, p)
        order.observe(max(0.0, MIN_ORDER - p), {**payload, "order": p})
    order.detail = {"min_order": worst_order, "required_order": MIN_ORDER}
    return [chk, order]


def quant_quadrature(ctx):
    """``<e^{-pi z^2}, e^{-pi z^2}> = 1/sqrt(2)``."""
    chk, _ = _qcheck(ctx, "quadrature_gaussian", TOL_QUADRATURE)
    spec = _grid_spec(ctx)
    F = qz.GridFunction.sample(spec, lambda z: np.exp(-np.pi * np.sum(z**2, axis=-1)))
    value = qz.inner_product(F, F)
    chk.observe(abs(value - 1 / np.sqrt(2)), {"lhs": value, "rhs": 1 / np.sqrt(2)})
    return chk


SUITE_CHECKS = {
    "group": [
        group_rho_homomorphism,
        group_inverse_associativity,
        group_bracket_isomorphism,
        group_bracket_axioms,
        group_exp_consistency,
        group_ad_conjugation,
        group_coadjoint_action,
        group_coadjoint_duality,
        group_mu_invariance,
    ],
    "momentum": [
        momentum_cocycle,
        momentum_affine_shift,
        momentum_nonequivariance,
        momentum_hamiltonian_exact,
        momentum_hamiltonian_fd,
        momentum_equivariance,
        momentum_matrix_front_end,
        momentum_image_modulus,
        momentum_surjectivity,
    ],
    "cotype": [
        cotype_lw_closed_form,
        cotype_decomposition,
        cotype_lw_conjugation,
        cotype_trace_vanishing,
        cotype_corner_invariance,
        cotype_reduction,
        cotype_modulus_shift,
        cotype_trace_functional,
        cotype_classify,
        cotype_fixed_points,
        cotype_isotropy,
        cotype_orbit_scaling,
        cotype_symplectic_sampling,
    ],
    "quantization": [
        quant_commutator_analytic,
        quant_commutator_grid,
        quant_prequant_homomorphism,
        quant_prequant_closed_form,
        quant_polarization,
        quant_skew_hermitian,
        quant_unitarity,
        quant_homomorphism,
        quant_twist,
        quant_central_character,
        quant_infinitesimal,
        quant_quadrature,
    ],
}


def run_checks(functions, ctx):
    """Run check functions and return their records in order."""
    records = []
    for fn in functions:
        out = fn(ctx)
        for chk in out if isinstance(out, list) else [out]:
            records.append(chk.record())
    return records


def suite_names(suite):
    if suite == ALL:
        return list(SUITES)
    if suite not in SUITES:
        raise UnknownSuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + (ALL,))}")
    return [suite]


def _suite_context(ctx, name, trials_given):
    if name == "quantization":
        trials = ctx.trials if trials_given else DEFAULT_QUANT_TRIALS
        return Context(ctx.n, trials, ctx.seed, sc.FLOAT, ctx.tol, ctx.grid)
    return ctx


def run_suite(suite, n=DEFAULT_N, trials=None, seed=DEFAULT_SEED, mode=sc.EXACT, tol=None, grid=DEFAULT_GRID, workers=1):
    """Run a named suite (or ``all``) and return the report dictionary.

    ``trials=None`` selects the per-suite default. Suites are independent,
    so ``workers > 1`` runs them concurrently with identical results.
    """
    names = suite_names(suite)
    trials_given = trials is not None
    ctx = Context(n, trials if trials_given else DEFAULT_TRIALS, seed, mode, tol, tuple(grid))
    start = time.perf_counter()
    jobs = [(SUITE_CHECKS[name], _suite_context(ctx, name, trials_given)) for name in names]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: run_checks(*job), jobs))
    else:
        parts = [run_checks(*job) for job in jobs]
    checks = [rec for part in parts for rec in part]
    return {
        "suite": suite,
        "suites": names,
        "mode": mode,
        "seed": seed,
        "n": n,
        "trials": trials if trials_given else None,
        "tol": tol,
        "grid": {"N": int(grid[0]), "L": float(grid[1])},
        "checks": checks,
        "pass": all(rec["pass"] for rec in checks),
        "wall_time": time.perf_counter() - start,
    }
