"""The Heisenberg group H_{2n+1}, its Lie algebra and dual.

Elements are kept intrinsically as pairs ``(v, r)``; the embedded
``(2n+2) x (2n+2)`` matrices are produced on demand by :func:`rho` and
:func:`rho_alg` and serve as an independent check of the closed forms.
Matrix rows and columns are indexed by the basis ``e_0, e_1..e_n,
f_1..f_n, f_{n+1}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalars as sc
from .scalars import DimensionError
from .symplectic import SympCovector, SympVector, extended_form, omega, sharp


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: n={a.n} vs n={b.n}")


@dataclass(frozen=True, eq=False)
class HeisGroupElement:
    v: SympVector
    r: object

    @property
    def n(self):
        return self.v.n

    @classmethod
    def identity(cls, n, mode=sc.EXACT):
        return cls(SympVector.zero(n, mode), sc.to_scalar(0, mode))

    @classmethod
    def make(cls, v, r, mode=None):
        v = v if isinstance(v, SympVector) else SympVector(v, mode)
        return cls(v, sc.to_scalar(r, mode or v.mode))

    def inverse(self):
        return HeisGroupElement(-self.v, -self.r)

    def __mul__(self, other):
        return mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, HeisGroupElement):
            return NotImplemented
        return self.v == other.v and self.r == other.r

    __hash__ = None


@dataclass(frozen=True, eq=False)
class HeisAlgElement:
    """``(x, xi)`` with ``x`` in R^{2n} and ``xi`` the central coordinate."""

    x: SympVector
    xi: object

    @property
    def n(self):
        return self.x.n

    @classmethod
    def make(cls, x, xi, mode=None):
        x = x if isinstance(x, SympVector) else SympVector(x, mode)
        return cls(x, sc.to_scalar(xi, mode or x.mode))

    @classmethod
    def zero(cls, n, mode=sc.EXACT):
        return cls(SympVector.zero(n, mode), sc.to_scalar(0, mode))

    def __add__(self, other):
        return HeisAlgElement(self.x + other.x, self.xi + other.xi)

    def __sub__(self, other):
        return HeisAlgElement(self.x - other.x, self.xi - other.xi)

    def __mul__(self, c):
        return HeisAlgElement(self.x * c, self.xi * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HeisAlgElement):
            return NotImplemented
        return self.x == other.x and self.xi == other.xi

    __hash__ = None


@dataclass(frozen=True, eq=False)
class HeisDualElement:
    """The functional ``(x, xi) -> lam(x) + mu * xi`` on the Lie algebra."""

    lam: SympCovector
    mu: object

    @property
    def n(self):
        return self.lam.n

    @classmethod
    def make(cls, lam, mu, mode=None):
        lam = lam if isinstance(lam, SympCovector) else SympCovector(lam, mode)
        return cls(lam, sc.to_scalar(mu, mode or lam.mode))

    def __call__(self, X):
        _same_n(self, X)
        return self.lam(X.x) + self.mu * X.xi

    def __eq__(self, other):
        if not isinstance(other, HeisDualElement):
            return NotImplemented
        return self.lam == other.lam and self.mu == other.mu

    __hash__ = None


def mul(g1, g2):
    """Group law ``(v, r)(w, s) = (v + w, r + s + omega(v, w)/2)``."""
    _same_n(g1, g2)
    return HeisGroupElement(g1.v + g2.v, g1.r + g2.r + omega(g1.v, g2.v) / 2)


def inverse(g):
    return g.inverse()


def _embed(first_col, bottom_mid, corner, diag_one, mode):
    n = bottom_mid.size // 2
    size = 2 * n + 2
    m = sc.identity(size, mode) if diag_one else sc.zeros((size, size), mode)
    m[1:, 0] = first_col
    m[-1, 1:-1] = bottom_mid
    m[-1, 0] = corner
    return m


def rho(g):
    """Unipotent matrix: first column ``(1, v, r)``, bottom row ``(r, sharp(v)/2, 1)``."""
    half_sharp = sharp(g.v).coords / 2
    col = np.concatenate([g.v.coords, [g.r]])
    return _embed(col, half_sharp, g.r, True, g.v.mode)


def rho_alg(X):
    """Nilpotent matrix: first column ``(0, x, xi)``, bottom row ``(xi, sharp(x)/2, 0)``."""
    half_sharp = sharp(X.x).coords / 2
    col = np.concatenate([X.x.coords, [X.xi]])
    return _embed(col, half_sharp, X.xi, False, X.x.mode)


def group_from_matrix(m, tol=None):
    """Inverse of :func:`rho`; raises ``ValueError`` off the image."""
    n = (m.shape[0] - 2) // 2
    g = HeisGroupElement(SympVector(m[1:-1, 0].copy()), m[-1, 0])
    if not sc.equal(rho(g), m, tol):
        raise ValueError("matrix is not in the image of rho")
    assert g.n == n
    return g


def alg_from_matrix(m, tol=None):
    """Inverse of :func:`rho_alg`; raises ``ValueError`` off the image."""
    X = HeisAlgElement(SympVector(m[1:-1, 0].copy()), m[-1, 0])
    if not sc.equal(rho_alg(X), m, tol):
        raise ValueError("matrix is not in the image of rho_alg")
    return X


def commutator(a, b):
    return sc.matmul(a, b) - sc.matmul(b, a)


def bracket(X, Y):
    """``[(x, s), (y, t)] = (0, omega(x, y))``."""
    _same_n(X, Y)
    return HeisAlgElement(SympVector.zero(X.n, X.x.mode), omega(X.x, Y.x))


def exp_alg(X):
    """The exponential map, which is the identity on coordinates."""
    return HeisGroupElement(X.x, X.xi)


def log_group(g):
    return HeisAlgElement(g.v, g.r)


def Ad(g, Y):
    """Adjoint action ``Ad_g (y, s) = (y, s + omega(v, y))``."""
    _same_n(g, Y)
    return HeisAlgElement(Y.x, Y.xi + omega(g.v, Y.x))


def coadjoint(g, f):
    """Coadjoint action ``g . f = f o Ad_{g^-1}``: shifts ``lam`` by ``-mu sharp(v)``."""
    _same_n(g, f)
    return HeisDualElement(f.lam - sharp(g.v) * f.mu, f.mu)


# -- embedded matrix sets -------------------------------------------------
#
# ghat      : [[eta, 0, 0], [x, 0, 0], [xi, (Jx)^T, -eta]]
# ghat_f    : ghat with eta = 0          (the Heisenberg algebra)
# Ghat      : [[a, 0, 0], [d, I, 0], [f, (Jd)^T / a, 1 / a]]
# Ghat_f    : Ghat with a = 1            (the Heisenberg group)


def apply_middle(d):
    """``J d`` without forming ``J``: ``J (x, y) = (-y/2, x/2)``."""
    n = d.size // 2
    return np.concatenate([-d[n:] / 2, d[:n] / 2])


def _n_of(m):
    size = m.shape[0]
    if m.shape != (size, size) or size < 4 or size % 2:
        raise DimensionError(f"embedded matrices are (2n+2)x(2n+2), got {m.shape}")
    return (size - 2) // 2


def ghat_matrix(zeta, d, xi, mode=None):
    """Element of ghat with diagonal ``(zeta, 0.., -zeta)``, column ``d``, corner ``xi``."""
    d = sc.as_array(d, mode)
    mode = mode or sc.mode_of(d)
    zeta = sc.to_scalar(zeta, mode)
    m = _embed(np.concatenate([d, [sc.to_scalar(xi, mode)]]), apply_middle(d), sc.to_scalar(xi, mode), False, mode)
    m[0, 0] = zeta
    m[-1, -1] = -zeta
    return m


def ghat_params(m):
    """``(zeta, d, xi)`` read off an element of ghat (not validated)."""
    return m[0, 0], m[1:-1, 0].copy(), m[-1, 0]


def Ghat_matrix(a, d, f, mode=None):
    d = sc.as_array(d, mode)
    mode = mode or sc.mode_of(d)
    a = sc.to_scalar(a, mode)
    if a == 0:
        raise ValueError("Ghat requires a != 0")
    f = sc.to_scalar(f, mode)
    m = _embed(np.concatenate([d, [f]]), apply_middle(d) / a, f, True, mode)
    m[0, 0] = a
    m[-1, -1] = 1 / a
    return m


def Ghat_params(m):
    return m[0, 0], m[1:-1, 0].copy(), m[-1, 0]


def _zero_outside(m, tol):
    n = _n_of(m)
    mask = np.ones(m.shape, dtype=bool)
    mask[1:, 0] = False
    mask[-1, 1:] = False
    mask[0, 0] = False
    return sc.is_zero(m[mask], tol), n


def ghat_violation(m, tol=None):
    """Name the first ghat condition ``m`` violates, or None if it is in ghat."""
    ok, n = _zero_outside(m, tol)
    if not ok:
        return "ghat.block_shape: entries off the first column, bottom row and top-left corner must vanish"
    zeta, d, xi = ghat_params(m)
    if not sc.equal(np.array([m[-1, -1]], dtype=m.dtype), np.array([-zeta], dtype=m.dtype), tol):
        return "ghat.trace_balance: bottom-right corner must equal minus the top-left corner"
    expected = ghat_matrix(zeta, d, xi, sc.mode_of(m))
    if not sc.equal(expected[-1, 1:-1], m[-1, 1:-1], tol):
        return "ghat.bottom_row: bottom row must be (J d)^T for the first column d"
    return None


def in_ghat(m, tol=None):
    """Membership in the Lie algebra ghat."""
    return ghat_violation(m, tol) is None


def in_ghat_f(m, tol=None):
    """Membership in ghat_{f_{n+1}}: ghat with zero diagonal."""
    return in_ghat(m, tol) and sc.is_zero(np.array([m[0, 0]], dtype=m.dtype), tol)


def in_Ghat(m, tol=None):
    n = _n_of(m)
    a, d, f = Ghat_params(m)
    if sc.is_zero(np.array([a], dtype=m.dtype), tol):
        return False
    return sc.equal(Ghat_matrix(a, d, f, sc.mode_of(m)), m, tol)


def in_Ghat_f(m, tol=None):
    """Membership in the isotropy group of ``f_{n+1}`` inside Ghat."""
    if not in_Ghat(m, tol):
        return False
    one = np.array([m[0, 0] - 1], dtype=m.dtype)
    return sc.is_zero(one, tol)


def in_sp(m, tol=None):
    """``X^T J + J X = 0`` for the extended form ``J``."""
    n = _n_of(m)
    J = np.asarray(extended_form(n, sc.mode_of(m)).matrix)
    return sc.is_zero(sc.matmul(m.T.copy(), J) + sc.matmul(J, m), tol)


def in_Sp(m, tol=None):
    """``P^T J P = J`` for the extended form ``J``."""
    n = _n_of(m)
    J = np.asarray(extended_form(n, sc.mode_of(m)).matrix)
    return sc.equal(sc.matmul(sc.matmul(m.T.copy(), J), m), J, tol)


def symplectic_inverse(P):
    """``P^{-1} = J^{-1} P^T J`` for ``P`` in Sp(V, J)."""
    n = _n_of(P)
    ext = extended_form(n, sc.mode_of(P))
    J = np.asarray(ext.matrix)
    J_inv = np.linalg.inv(J) if sc.mode_of(P) == sc.FLOAT else _exact_J_inverse(n)
    return sc.matmul(sc.matmul(J_inv, P.T.copy()), J)


_J_INV = {}


def _exact_J_inverse(n):
    if n not in _J_INV:
        _J_INV[n] = sc.inverse(np.asarray(extended_form(n, sc.EXACT).matrix).copy())
    return _J_INV[n]
