"""Prequantization, quantization and the Schrodinger representations.

Phase space is T*R^n with coordinates ``(x, y)``; functions on it are
:class:`TestFunction` objects of dimension ``2n`` with the ``x`` axes
first. Line-bundle sections are identified with functions through the unit
section, so the connection acts directly on functions.

Group elements are :class:`~heisorbit.heisenberg.HeisGroupElement` in float
mode with ``v = (x, y)`` and ``r = t``; the group law is the one of
:func:`heisorbit.heisenberg.mul`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..heisenberg import HeisGroupElement
from ..symplectic import SympVector
from .grid import GridFunction
from .testfunctions import TWO_PI_I, TestFunction


@dataclass(frozen=True)
class HeisAlg3:
    """``(xi, eta, s)``: the algebra element with ``x``-part ``(xi, eta)``."""

    xi: np.ndarray
    eta: np.ndarray
    s: float = 0.0

    def __post_init__(self):
        xi = np.atleast_1d(np.asarray(self.xi, dtype=float))
        eta = np.atleast_1d(np.asarray(self.eta, dtype=float))
        if xi.shape != eta.shape:
            raise ValueError("xi and eta must have the same length")
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "s", float(self.s))

    @property
    def n(self):
        return self.xi.size

    def scaled(self, u):
        return HeisAlg3(self.xi * u, self.eta * u, self.s * u)


def bracket3(a, b):
    """``[(xi, eta, s), (xi', eta', s')] = (0, 0, <xi, eta'> - <eta, xi'>)``."""
    zero = np.zeros(a.n)
    return HeisAlg3(zero, zero, float(a.xi @ b.eta - a.eta @ b.xi))


def group3(x, y, t):
    return HeisGroupElement(SympVector.from_xy(np.asarray(x, float).ravel(), np.asarray(y, float).ravel(), "float"), float(t))


def split3(g):
    """``(x, y, t)`` of a float group element."""
    return np.asarray(g.v.x, dtype=float), np.asarray(g.v.y, dtype=float), float(g.r)


# -- phase-space geometry --------------------------------------------------


def theta_contraction(X, point):
    """``X _| theta`` for ``theta = <y, dx>``: ``<y, X_x>``."""
    return float(np.dot(np.asarray(point.y, float), np.asarray(X.x, float)))


def momentum_observable(a):
    """``J^a(x, y) = <xi, y> - <eta, x> + s`` as ``(grad_x, grad_y, constant)``."""
    return -a.eta, a.xi, a.s


def hamiltonian_vf(a):
    """Hamiltonian field of ``J^a``: ``X_F = (dF/dy, -dF/dx) = (xi, eta)``."""
    grad_x, grad_y, _ = momentum_observable(a)
    return SympVector(np.concatenate([grad_y, -grad_x]), "float")


def _lie_derivative(X, f):
    n = X.n
    out = f * 0
    for j in range(2 * n):
        c = float(X.coords[j])
        if c:
            out = out + f.derivative(j) * c
    return out


def _times_linear(f, grad, const):
    out = f * const
    for j, c in enumerate(grad):
        if c:
            out = out + f.times_coordinate(j) * c
    return out


def covariant_derivative(X, f):
    """``nabla_X f = L_X f + 2 pi i (X _| theta) f`` for a constant field ``X``."""
    n = X.n
    if f.dim != 2 * n:
        raise ValueError(f"phase-space functions have {2 * n} variables, got {f.dim}")
    contraction = np.concatenate([np.zeros(n), np.asarray(X.x, float)])  # <y, X_x>
    return _lie_derivative(X, f) + _times_linear(f, contraction, 0.0) * TWO_PI_I


def prequant_op(a, f):
    """``P(J^a) f = -nabla_{X_F} f + 2 pi i F f`` with ``F = J^a``."""
    grad_x, grad_y, const = momentum_observable(a)
    F_times_f = _times_linear(f, np.concatenate([grad_x, grad_y]), const)
    return -covariant_derivative(hamiltonian_vf(a), f) + F_times_f * TWO_PI_I


def prequant_op_closed(a, f):
    """Expanded form ``-<xi, d/dx> - <eta, d/dy> + 2 pi i (s - <eta, x>)``."""
    n = a.n
    out = f * (TWO_PI_I * a.s)
    for j in range(n):
        out = out - f.derivative(j) * a.xi[j] - f.derivative(n + j) * a.eta[j]
        out = out - f.times_coordinate(j) * (TWO_PI_I * a.eta[j])
    return out


def quant_op(a, f):
    """``Q(xi, eta, s) f = -<xi, df/dx> + 2 pi i (s - <eta, x>) f`` on R^n."""
    dim = f.dim if isinstance(f, TestFunction) else f.spec.n
    if dim != a.n:
        raise ValueError(f"Q acts on functions of {a.n} variables, got {dim}")
    out = f * (TWO_PI_I * a.s)
    for j in range(a.n):
        if a.xi[j]:
            out = out - f.derivative(j) * a.xi[j]
        if a.eta[j]:
            out = out - f.times_coordinate(j) * (TWO_PI_I * a.eta[j])
    return out


# -- group representations -------------------------------------------------


def twist_psi(g):
    """``(x, y, t) -> (-y, x, t)``, an automorphism of H."""
    x, y, t = split3(g)
    return group3(-y, x, t)


def _translate_and_phase(f, shift, alpha, beta):
    """``z -> exp(2 pi i (alpha + <beta, z>)) f(z - shift)``."""
    if isinstance(f, TestFunction):
        return f.translate(shift).phase(alpha, beta)
    if isinstance(f, GridFunction):
        steps = f.spec.lattice_steps(shift)
        moved = f.shift(steps)
        z = f.spec.points()
        return moved.multiply(np.exp(TWO_PI_I * (alpha + z @ beta)))
    raise TypeError(f"unsupported function type {type(f).__name__}")


def rep_S(modulus, g, f):
    """``(S_xi(x, y, t) f)(z) = exp(2 pi i xi [t - <y, z - x/2>]) f(z - x)``.

    The ``-x/2`` inside the phase is what makes ``S_xi`` multiplicative for
    the group law ``t + t' + omega/2``.
    """
    x, y, t = split3(g)
    alpha = modulus * (t + 0.5 * float(y @ x))
    return _translate_and_phase(f, x, alpha, -modulus * y)


def rep_S1(g, f):
    """Untwisted form ``(S_1(x', y', t') f)(z) = exp(2 pi i [t' + <x', z - y'/2>]) f(z - y')``."""
    x, y, t = split3(g)
    alpha = t - 0.5 * float(x @ y)
    return _translate_and_phase(f, y, alpha, x)


def rep_S1_twisted(g, f):
    """``S_1 o psi``; agrees with ``rep_S(1, g, f)``."""
    return rep_S1(twist_psi(g), f)


def central_character(modulus, t):
    return np.exp(TWO_PI_I * modulus * t)


def infinitesimal_check(a, f, u, points):
    """Sup-norm defect of the central difference of ``u -> S~_1(u a) f`` against ``Q(a) f``.

    Translations are applied in closed form on the test family, so ``u`` is
    not restricted to a lattice.
    """
    if u <= 0:
        raise ValueError("step u must be positive")

    def curve(step):
        b = a.scaled(step)
        return rep_S1_twisted(group3(b.xi, b.eta, b.s), f)(points)

    difference = (curve(u) - curve(-u)) / (2 * u)
    return float(np.max(np.abs(difference - quant_op(a, f)(points))))


def observed_order(defect_coarse, defect_fine, ratio=10.0):
    """Convergence order from defects at steps ``u`` and ``u / ratio``."""
    return float(np.log(defect_coarse / defect_fine) / np.log(ratio))
