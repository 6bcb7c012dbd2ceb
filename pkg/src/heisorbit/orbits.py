"""Coadjoint orbit classification for H_{2n+1}.

Two routes are implemented. The matrix route works with tuples ``(V, Y,
f_{n+1})``: the rank-two operators ``L_{w, f_{n+1}}`` generate the algebra
ghat, and adding a suitable ``L_w`` brings any ``Y`` in ghat to the normal
form ``xi E_{2n+1, 0}`` whose corner entry is the modulus. The intrinsic
route acts on functionals ``f = (lam, mu)`` and moves every ``f`` with
``mu != 0`` onto ``h_mu = (0, mu)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalars as sc
from .heisenberg import (
    HeisDualElement,
    HeisGroupElement,
    bracket,
    coadjoint,
    ghat_matrix,
    ghat_params,
    ghat_violation,
    in_ghat,
    in_Ghat_f,
    in_Sp,
    symplectic_inverse,
)
from .momentum import FIXED_POINT, GENERIC
from .scalars import DimensionError
from .symplectic import SympCovector, extended_form, flat


class NotInAlgebraError(ValueError):
    """A matrix failed a membership predicate; ``predicate`` names which."""

    def __init__(self, predicate, message=None):
        self.predicate = predicate
        super().__init__(message or f"matrix is not in {predicate}")


# -- extended vectors in V = R e_0 + R^{2n} + R f_{n+1} -------------------


def ext_vector(w0, w_mid, w_last, mode=None):
    mid = sc.as_array(w_mid, mode)
    mode = mode or sc.mode_of(mid)
    return np.concatenate([[sc.to_scalar(w0, mode)], mid, [sc.to_scalar(w_last, mode)]]).astype(
        object if mode == sc.EXACT else float
    )


def basis_vector(n, index, mode=sc.EXACT):
    v = sc.zeros(2 * n + 2, mode)
    v[index] = sc.to_scalar(1, mode)
    return v


def f_last(n, mode=sc.EXACT):
    """The distinguished vector ``f_{n+1}``."""
    return basis_vector(n, 2 * n + 1, mode)


def elementary(n, row, col, mode=sc.EXACT):
    m = sc.zeros((2 * n + 2, 2 * n + 2), mode)
    m[row, col] = sc.to_scalar(1, mode)
    return m


def _n_from_ext(w):
    size = np.asarray(w).size
    if size < 4 or size % 2:
        raise DimensionError(f"extended vectors have length 2n+2, got {size}")
    return (size - 2) // 2


# -- the operators L_{w, f} ------------------------------------------------


def L_pair(a, b, ext=None):
    """``a (x) b* + b (x) a*`` with ``z*(u) = u^T J z``, as a matrix.

    Built from outer products of ``a, b`` with ``J a, J b`` and nothing else,
    so it can stand as an oracle for the closed form :func:`L_w`.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    n = _n_from_ext(a)
    ext = ext or extended_form(n, sc.mode_of(a))
    J = np.asarray(ext.matrix)
    Ja = sc.matmul(J, a)
    Jb = sc.matmul(J, b)
    return np.outer(a, Jb) + np.outer(b, Ja)


def L_w(w):
    """Closed-form matrix of ``L_{w, f_{n+1}}``.

    First column ``(w_0, w~, 2 w_{2n+1})``, bottom row ``(Jw~)^T``, corners
    ``w_0`` and ``-w_0``; everything else zero.
    """
    w = np.asarray(w)
    n = _n_from_ext(w)
    mode = sc.mode_of(w)
    m = ghat_matrix(w[0], w[1:-1], 2 * w[-1], mode)
    return m


def decompose_ghat(X, tol=None):
    """The extended vector ``w`` with ``L_w(w) == X`` for ``X`` in ghat."""
    if not in_ghat(X, tol):
        raise NotInAlgebraError("ghat")
    eta, x, xi = ghat_params(X)
    return np.concatenate([[eta], x, [xi / 2]])


def conjugate_L(P, w, tol=None):
    """Both sides of ``P L_{w,f} P^{-1} = L_{Pw, Pf}`` for symplectic ``P``."""
    P = np.asarray(P)
    w = np.asarray(w)
    n = _n_from_ext(w)
    if P.shape != (2 * n + 2, 2 * n + 2):
        raise DimensionError(f"P must be {2 * n + 2}x{2 * n + 2}, got {P.shape}")
    if not in_Sp(P, tol):
        raise NotInAlgebraError("Sp(V, J)")
    P_inv = symplectic_inverse(P)
    lhs = sc.matmul(sc.matmul(P, L_w(w)), P_inv)
    f = f_last(n, sc.mode_of(P))
    rhs = L_pair(sc.matmul(P, w), sc.matmul(P, f))
    return lhs, rhs


def conjugation_invariance_check(P, xi, tol=None):
    """Both sides of ``P (xi E) P^{-1} = xi E`` with ``E = E_{2n+1, 0}``."""
    P = np.asarray(P)
    n = _n_from_ext(P[0])
    if not in_Ghat_f(P, tol):
        raise NotInAlgebraError("Ghat_f")
    mode = sc.mode_of(P)
    Y = elementary(n, 2 * n + 1, 0, mode) * sc.to_scalar(xi, mode)
    lhs = sc.matmul(sc.matmul(P, Y), symplectic_inverse(P))
    return lhs, Y


# -- tuples and cotypes ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class TupleRep:
    """A tuple ``(V, Y, f_{n+1})``; ``Y`` is a (2n+2)x(2n+2) matrix."""

    n: int
    Y: np.ndarray

    def __post_init__(self):
        Y = np.asarray(self.Y)
        if Y.shape != (2 * self.n + 2, 2 * self.n + 2):
            raise DimensionError(f"Y must be {2 * self.n + 2}x{2 * self.n + 2}, got {Y.shape}")
        object.__setattr__(self, "Y", sc.frozen(Y))

    @classmethod
    def from_params(cls, zeta, d, xi, mode=None):
        Y = ghat_matrix(zeta, d, xi, mode)
        return cls((Y.shape[0] - 2) // 2, Y)


@dataclass(frozen=True)
class CotypeDescriptor:
    modulus: object
    zero_type_dim: int
    height: int

    @property
    def label(self):
        if self.height == 0:
            return f"0_{self.zero_type_dim}"
        return f"nabla_1(0), {self.modulus} + 0_{self.zero_type_dim}"


def nilpotent_height(Y, max_power=None):
    """Least ``m`` with ``Y^{m+1} = 0`` (0 for the zero matrix); None if not nilpotent."""
    size = Y.shape[0]
    power = np.array(Y, copy=True)
    for m in range(max_power or size):
        if sc.is_zero(power):
            return m
        power = sc.matmul(power, Y)
    return None


def reduce_tuple(t, tol=None):
    """Reduce a tuple to normal form.

    Returns ``(w, descriptor)`` where ``Y + L_w(w)`` is zero except for the
    entry ``[2n+1, 0]``, which carries the modulus.
    """
    if not isinstance(t, TupleRep):
        t = TupleRep((np.asarray(t).shape[0] - 2) // 2, np.asarray(t))
    Y = np.asarray(t.Y)
    violation = ghat_violation(Y, tol)
    if violation:
        raise NotInAlgebraError(violation.split(":")[0], f"Y is not in ghat ({violation})")
    zeta, d, xi = ghat_params(Y)
    w = np.concatenate([[-zeta], -d, [zeta * 0]])
    residual = Y + L_w(w)
    mask = np.ones(residual.shape, dtype=bool)
    mask[-1, 0] = False
    if not sc.is_zero(residual[mask], tol):
        raise AssertionError("reduction left entries outside [2n+1, 0]")
    modulus = residual[-1, 0]
    height = nilpotent_height(residual)
    n = t.n
    zero_dim = 2 * n + 2 if height == 0 else 2 * n
    return w, CotypeDescriptor(modulus, zero_dim, height)


def reduced_matrix(t):
    """``Y + L_w`` for the reducing ``w``."""
    w, _ = reduce_tuple(t)
    Y = t.Y if isinstance(t, TupleRep) else t
    return np.asarray(Y) + L_w(w)


# -- the trace functional --------------------------------------------------


def ghat_f_basis(n, mode=sc.EXACT):
    """Basis of ghat_f: one matrix per coordinate of ``x~`` then the central one."""
    out = []
    zero = sc.zeros(2 * n, mode)
    for i in range(2 * n):
        d = zero.copy()
        d[i] = sc.to_scalar(1, mode)
        out.append(ghat_matrix(0, d, 0, mode))
    out.append(ghat_matrix(0, zero, 1, mode))
    return out


def trace_pairing(Y, Z):
    """``tr(Y Z)`` without forming the product."""
    return np.sum(np.asarray(Y) * np.asarray(Z).T)


def restrict_functional(Y):
    """Restrict ``Z -> tr(Y Z)`` to ghat_f and return it as ``(lam, mu)``."""
    Y = np.asarray(Y)
    size = Y.shape[0]
    if Y.shape != (size, size) or size < 4 or size % 2:
        raise DimensionError(f"Y must be (2n+2)x(2n+2), got {Y.shape}")
    n = (size - 2) // 2
    values = [trace_pairing(Y, Z) for Z in ghat_f_basis(n, sc.mode_of(Y))]
    return HeisDualElement(SympCovector(np.array(values[:-1], dtype=Y.dtype)), values[-1])


# -- intrinsic classification ----------------------------------------------


def h_mu(n, mu, mode=None):
    """The functional ``(x, s) -> mu s``."""
    mu = sc.to_scalar(mu, mode)
    return HeisDualElement(SympCovector.zero(n, sc.mode_of(np.array([mu]))), mu)


@dataclass(frozen=True, eq=False)
class OrbitDescriptor:
    kind: str
    mu: object
    representative: HeisDualElement
    normalizer: HeisGroupElement | None


def classify_dual(f):
    """Locate ``f`` on its coadjoint orbit.

    For ``mu != 0`` the normalizer ``(flat(lam) / mu, 0)`` moves ``f`` onto
    ``h_mu``; for ``mu == 0`` the action is trivial and ``f`` is a fixed point.
    """
    if f.mu == 0:
        return OrbitDescriptor(FIXED_POINT, f.mu, f, None)
    x = flat(f.lam) * (1 / f.mu)
    normalizer = HeisGroupElement(x, f.mu * 0)
    rep = HeisDualElement(SympCovector.zero(f.n, f.lam.mode), f.mu)
    return OrbitDescriptor(GENERIC, f.mu, rep, normalizer)


def verify_normalizer(f, desc, tol=None):
    """Apply the normalizer and compare with the representative."""
    if desc.normalizer is None:
        return True
    moved = coadjoint(desc.normalizer, f)
    if tol is None and f.lam.mode == sc.EXACT:
        return moved == desc.representative
    return moved.lam.allclose(desc.representative.lam, tol or sc.DEFAULT_FLOAT_TOL) and abs(
        moved.mu - desc.representative.mu
    ) <= (tol or sc.DEFAULT_FLOAT_TOL)


def orbit_pairing(f, a, b):
    """Orbit symplectic form at ``f`` on the generators of ``a, b``: ``f([a, b])``."""
    return f(bracket(a, b))


def orbit_point(mu, x):
    """``(x, 0) . h_mu``, the chart R^{2n} -> O_mu."""
    n = x.n
    return coadjoint(HeisGroupElement(x, x.coords[0] * 0), h_mu(n, mu, x.mode))
