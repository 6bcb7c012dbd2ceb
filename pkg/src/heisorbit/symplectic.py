"""Symplectic linear algebra on R^{2n} and on V = R x R^{2n} x R.

Coordinates of a vector in R^{2n} are stored as one array ``(x_1..x_n,
y_1..y_n)``, i.e. in the basis ``e_1..e_n, f_1..f_n``. The default form is

    omega((x, y), (z, w)) = <x, w> - <y, z>,

and every other convention in the package is derived from this formula.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalars as sc
from .scalars import DimensionError


def _check_same_n(*items):
    ns = {item.n for item in items}
    if len(ns) != 1:
        raise DimensionError(f"dimension mismatch: n values {sorted(ns)}")
    return ns.pop()


class _Coords:
    """Immutable coordinate array of even length 2n."""

    __slots__ = ("coords",)

    def __init__(self, coords, mode=None):
        arr = sc.as_array(coords, mode)
        if arr.ndim != 1 or arr.size == 0 or arr.size % 2:
            raise DimensionError(f"expected a nonempty vector of even length, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_xy(cls, x, y, mode=None):
        x = list(x)
        y = list(y)
        if len(x) != len(y):
            raise DimensionError(f"x has {len(x)} entries but y has {len(y)}")
        return cls(x + y, mode)

    @classmethod
    def zero(cls, n, mode=sc.EXACT):
        if n < 1:
            raise DimensionError("n must be positive")
        return cls(sc.zeros(2 * n, mode))

    @property
    def n(self):
        return self.coords.size // 2

    @property
    def x(self):
        return self.coords[: self.n]

    @property
    def y(self):
        return self.coords[self.n:]

    @property
    def mode(self):
        return sc.mode_of(self.coords)

    def __add__(self, other):
        _check_same_n(self, other)
        return type(self)(self.coords + other.coords)

    def __sub__(self, other):
        _check_same_n(self, other)
        return type(self)(self.coords - other.coords)

    def __neg__(self):
        return type(self)(-self.coords)

    def __mul__(self, c):
        return type(self)(self.coords * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords.shape == other.coords.shape and bool(np.all(self.coords == other.coords))

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.coords.tolist())))

    def allclose(self, other, tol=sc.DEFAULT_FLOAT_TOL):
        _check_same_n(self, other)
        return sc.equal(self.coords, other.coords, tol)

    def __repr__(self):
        x = ", ".join(str(v) for v in self.x)
        y = ", ".join(str(v) for v in self.y)
        return f"{type(self).__name__}(x=({x}), y=({y}))"


class SympVector(_Coords):
    """A vector of R^{2n}."""

    __slots__ = ()


class SympCovector(_Coords):
    """A linear functional on R^{2n}, stored by its values on e_i, f_i."""

    __slots__ = ()

    def __call__(self, w):
        _check_same_n(self, w)
        return sum((a * b for a, b in zip(self.coords, w.coords)), self.coords[0] * 0)


@dataclass(frozen=True, eq=False)
class SympForm:
    """A symplectic form given by its Gram matrix, ``omega(u, v) = u^T G v``."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.shape != (2 * self.n, 2 * self.n):
            raise DimensionError(f"form matrix must be {2 * self.n}x{2 * self.n}, got {m.shape}")
        if not sc.is_zero(m + m.T):
            raise ValueError("form matrix is not antisymmetric")
        if sc.det(m) == 0:
            raise ValueError("form matrix is degenerate")
        object.__setattr__(self, "matrix", sc.frozen(m))

    @classmethod
    def standard(cls, n, mode=sc.EXACT):
        """The form <x, w> - <y, z>, whose Gram matrix is [[0, I], [-I, 0]]."""
        if n < 1:
            raise DimensionError("n must be positive")
        g = sc.zeros((2 * n, 2 * n), mode)
        one = sc.to_scalar(1, mode)
        for i in range(n):
            g[i, n + i] = one
            g[n + i, i] = -one
        return cls(n, g)

    @property
    def mode(self):
        return sc.mode_of(self.matrix)


_STANDARD_CACHE = {}


def standard_form(n, mode=sc.EXACT):
    key = (n, mode)
    if key not in _STANDARD_CACHE:
        _STANDARD_CACHE[key] = SympForm.standard(n, mode)
    return _STANDARD_CACHE[key]


def _form_for(n, form, mode):
    if form is None:
        return standard_form(n, mode)
    if form.n != n:
        raise DimensionError(f"form has n={form.n} but vectors have n={n}")
    return form


def omega(u, v, form=None):
    """Evaluate the symplectic form on two vectors."""
    n = _check_same_n(u, v)
    if form is None:
        # <x_u, y_v> - <y_u, x_v> without building the Gram matrix
        return _dot(u.x, v.y) - _dot(u.y, v.x)
    form = _form_for(n, form, u.mode)
    return sc.matmul(sc.matmul(u.coords[None, :], np.asarray(form.matrix)), v.coords)[0]


def _dot(a, b):
    if a.dtype == object or b.dtype == object:
        return sum((p * q for p, q in zip(a, b)), sc.to_scalar(0) if a.dtype == object else 0.0)
    return float(np.dot(a, b))


def sharp(v, form=None):
    """The covector ``w -> omega(v, w)``."""
    if form is None:
        # omega(v, .) has e-components -y_v and f-components x_v
        return SympCovector(np.concatenate([-v.y, v.x]))
    form = _form_for(v.n, form, v.mode)
    return SympCovector(sc.matmul(np.asarray(form.matrix).T, v.coords))


def flat(lam, form=None):
    """The unique vector ``v`` with ``sharp(v) == lam``.

    Solves ``G^T v = lam`` by row reduction, so it works for any
    nondegenerate form and stays exact on rational input.
    """
    form = _form_for(lam.n, form, lam.mode)
    g = np.asarray(form.matrix)
    if sc.mode_of(g) != lam.mode:
        g = sc.as_array(g, lam.mode)
    return SympVector(sc.solve(g.T.copy(), lam.coords.copy()))


@dataclass(frozen=True, eq=False)
class ExtendedForm:
    """The form on V = R e_0 + R^{2n} + R f_{n+1}.

    Block matrix ``[[0, 0, 1], [0, J, 0], [-1, 0, 0]]`` with ``J`` half the
    transposed Gram matrix of the R^{2n} form. With that choice the
    lower-triangular embedded matrices of the isotropy algebra coincide with
    the matrix model of the Heisenberg algebra.
    """

    n: int
    matrix: np.ndarray

    @property
    def size(self):
        return 2 * self.n + 2

    @property
    def middle(self):
        """The block ``J`` acting on R^{2n}."""
        return self.matrix[1:-1, 1:-1]

    def pair(self, z, w):
        """``z^T J w``, the pairing used for the dual vector ``w*``."""
        return sc.matmul(sc.matmul(np.asarray(z)[None, :], self.matrix), np.asarray(w))[0]


_EXT_CACHE = {}


def extended_form(n, mode=sc.EXACT, form=None):
    if n < 1:
        raise DimensionError("n must be positive")
    key = (n, mode)
    if form is None and key in _EXT_CACHE:
        return _EXT_CACHE[key]
    form = _form_for(n, form, mode)
    size = 2 * n + 2
    m = sc.zeros((size, size), mode)
    one = sc.to_scalar(1, mode)
    m[0, -1] = one
    m[-1, 0] = -one
    half = sc.to_scalar("1/2", mode)
    m[1:-1, 1:-1] = sc.as_array(np.asarray(form.matrix).T, mode) * half
    ext = ExtendedForm(n, sc.frozen(m))
    if form is standard_form(n, mode):
        _EXT_CACHE[key] = ext
    return ext
