"""Sampled functions on a uniform grid over ``[-L, L)^n``.

Derivatives use the fourth-order central stencil with periodic wrap. The
functions fed to the grid are negligible near the boundary, so the wrap
never touches significant data; with it the difference operator is exactly
antisymmetric for the quadrature inner product.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MIN_POINTS = 16

# f'(z) ~ (f(z-2h) - 8 f(z-h) + 8 f(z+h) - f(z+2h)) / 12h
_STENCIL = {-2: 1 / 12, -1: -8 / 12, 1: 8 / 12, 2: -1 / 12}


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    n: int
    L: float
    N: int

    def __post_init__(self):
        if self.n < 1:
            raise GridError("grid dimension must be positive")
        if self.L <= 0:
            raise GridError("half-width L must be positive")
        if self.N < 1 or self.N & (self.N - 1):
            raise GridError(f"samples per axis must be a power of two, got {self.N}")

    @property
    def h(self):
        return 2 * self.L / self.N

    @property
    def axis(self):
        return -self.L + self.h * np.arange(self.N)

    @property
    def shape(self):
        return (self.N,) * self.n

    def points(self):
        """All grid points, shape ``(N, ..., N, n)``."""
        mesh = np.meshgrid(*([self.axis] * self.n), indexing="ij")
        return np.stack(mesh, axis=-1)

    def coordinate(self, axis):
        mesh = np.meshgrid(*([self.axis] * self.n), indexing="ij")
        return mesh[axis]

    def lattice_steps(self, shift, rtol=1e-9):
        """Integer multiples of ``h`` equal to ``shift``; raises off the lattice."""
        shift = np.atleast_1d(np.asarray(shift, dtype=float))
        if shift.size != self.n:
            raise GridError(f"shift has {shift.size} components, grid has {self.n}")
        steps = np.rint(shift / self.h)
        if np.any(np.abs(steps * self.h - shift) > rtol * self.h):
            raise GridError(f"translation {shift.tolist()} is not a multiple of the spacing {self.h}")
        return steps.astype(int)


class GridFunction:
    def __init__(self, spec, values):
        values = np.asarray(values, dtype=complex)
        if values.shape != spec.shape:
            raise GridError(f"expected {spec.N ** spec.n} samples in shape {spec.shape}, got {values.shape}")
        self.spec = spec
        self.values = values

    @classmethod
    def sample(cls, spec, func):
        """Sample a callable taking points of shape ``(..., n)``."""
        return cls(spec, func(spec.points()))

    def _check(self, other):
        if other.spec != self.spec:
            raise GridError("grid functions live on different grids")

    def __add__(self, other):
        self._check(other)
        return GridFunction(self.spec, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return GridFunction(self.spec, self.values - other.values)

    def __mul__(self, c):
        return GridFunction(self.spec, self.values * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def times_coordinate(self, axis):
        return GridFunction(self.spec, self.values * self.spec.coordinate(axis))

    def multiply(self, arr):
        return GridFunction(self.spec, self.values * arr)

    def derivative(self, axis):
        if self.spec.N < MIN_POINTS:
            raise GridError(f"finite differences need at least {MIN_POINTS} points per axis")
        out = np.zeros_like(self.values)
        for offset, weight in _STENCIL.items():
            out += weight * np.roll(self.values, -offset, axis=axis)
        return GridFunction(self.spec, out / self.spec.h)

    def shift(self, steps):
        """``z -> f(z - steps*h)``; samples entering from outside the box are zero."""
        out = self.values
        for axis, m in enumerate(np.atleast_1d(steps)):
            m = int(m)
            if m == 0:
                continue
            moved = np.roll(out, m, axis=axis)
            index = [slice(None)] * self.spec.n
            index[axis] = slice(0, m) if m > 0 else slice(m, None)
            moved[tuple(index)] = 0
            out = moved
        return GridFunction(self.spec, np.array(out, copy=True))

    def sup(self):
        return float(np.max(np.abs(self.values)))


def inner_product(f, g):
    """Quadrature ``sum f conj(g) h^n``, conjugate-linear in ``g``."""
    f._check(g)
    return complex(np.sum(f.values * np.conj(g.values)) * f.spec.h ** f.spec.n)


def norm(f):
    return float(np.sqrt(inner_product(f, f).real))
