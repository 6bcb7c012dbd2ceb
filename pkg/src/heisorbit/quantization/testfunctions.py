"""Closed-form test functions with exact derivatives.

A :class:`TestFunction` is ``z -> p(z) exp(-sum_k a_k (z_k - c_k)^2 + 2 pi i <b, z>)``
with ``p`` a complex polynomial. The family is closed under the
operations the quantization operators need (differentiation,
multiplication by a coordinate, translation, multiplication by a linear
phase), so operator identities can be checked without discretization
error.
"""
from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as P

TWO_PI_I = 2j * np.pi


def _pad_to(c, shape):
    out = np.zeros(shape, dtype=complex)
    out[tuple(slice(0, s) for s in c.shape)] = c
    return out


def _shift_matrix(degree, s):
    """Matrix ``T`` with ``p(t - s) = sum_m (T @ c)_m t^m`` for coefficients ``c``."""
    T = np.zeros((degree + 1, degree + 1), dtype=complex)
    for k in range(degree + 1):
        for m in range(k + 1):
            T[m, k] = math.comb(k, m) * (-s) ** (k - m)
    return T


class TestFunction:
    __test__ = False  # not a pytest class

    def __init__(self, coeffs, width, center=None, freq=None):
        coeffs = np.array(coeffs, dtype=complex)
        width = np.atleast_1d(np.asarray(width, dtype=float))
        dim = width.size
        if coeffs.ndim == 0:
            coeffs = coeffs.reshape((1,) * dim)
        if coeffs.ndim != dim:
            raise ValueError(f"coefficient array has {coeffs.ndim} axes for a {dim}-dimensional domain")
        if np.any(width < 0):
            raise ValueError("Gaussian widths must be nonnegative")
        self.coeffs = coeffs
        self.width = width
        self.center = np.zeros(dim) if center is None else np.asarray(center, dtype=float).reshape(dim)
        self.freq = np.zeros(dim) if freq is None else np.asarray(freq, dtype=float).reshape(dim)

    @classmethod
    def gaussian(cls, dim, width=1.0, center=None, freq=None, amplitude=1.0):
        w = np.broadcast_to(np.asarray(width, dtype=float), (dim,)).copy()
        return cls(np.full((1,) * dim, amplitude, dtype=complex), w, center, freq)

    @property
    def dim(self):
        return self.width.size

    def _like(self, coeffs, center=None, freq=None):
        return TestFunction(
            coeffs,
            self.width,
            self.center if center is None else center,
            self.freq if freq is None else freq,
        )

    def same_envelope(self, other):
        return (
            self.dim == other.dim
            and np.array_equal(self.width, other.width)
            and np.array_equal(self.center, other.center)
            and np.array_equal(self.freq, other.freq)
        )

    # -- evaluation --------------------------------------------------------

    def envelope(self, points):
        z = np.asarray(points, dtype=float)
        expo = -np.sum(self.width * (z - self.center) ** 2, axis=-1) + TWO_PI_I * (z @ self.freq)
        return np.exp(expo)

    def polynomial(self, points):
        z = np.asarray(points, dtype=float)
        out = np.zeros(z.shape[:-1], dtype=complex)
        for alpha in zip(*np.nonzero(self.coeffs)):
            term = np.full(z.shape[:-1], self.coeffs[alpha], dtype=complex)
            for k, p in enumerate(alpha):
                if p:
                    term = term * z[..., k] ** p
            out += term
        return out

    def __call__(self, points):
        z = np.asarray(points, dtype=float)
        if z.ndim == 1 and self.dim == 1:
            z = z[:, None]
        if z.shape[-1] != self.dim:
            raise ValueError(f"points have {z.shape[-1]} coordinates, expected {self.dim}")
        return self.polynomial(z) * self.envelope(z)

    # -- linear structure --------------------------------------------------

    def _combine(self, other, sign):
        if not self.same_envelope(other):
            raise ValueError("test functions with different envelopes cannot be added in closed form")
        shape = tuple(max(a, b) for a, b in zip(self.coeffs.shape, other.coeffs.shape))
        return self._like(_pad_to(self.coeffs, shape) + sign * _pad_to(other.coeffs, shape))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, c):
        return self._like(self.coeffs * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    # -- closure operations ------------------------------------------------

    def times_coordinate(self, axis):
        """``z -> z_axis f(z)``."""
        pad = [(0, 0)] * self.dim
        pad[axis] = (1, 0)
        return self._like(np.pad(self.coeffs, pad))

    def derivative(self, axis):
        """Exact partial derivative along ``axis``."""
        c = self.coeffs
        dpoly = P.polyder(c, axis=axis)
        # d/dz_k of the exponent: -2 a_k z_k + 2 a_k c_k + 2 pi i b_k
        lin = -2 * self.width[axis]
        const = 2 * self.width[axis] * self.center[axis] + TWO_PI_I * self.freq[axis]
        grown = self._like(c).times_coordinate(axis).coeffs * lin
        shape = tuple(max(s) for s in zip(dpoly.shape, grown.shape, c.shape))
        total = _pad_to(dpoly, shape) + _pad_to(grown, shape) + _pad_to(c * const, shape)
        return self._like(total)

    def translate(self, shift):
        """``z -> f(z - shift)``."""
        shift = np.asarray(shift, dtype=float).reshape(self.dim)
        c = self.coeffs
        for axis, s in enumerate(shift):
            if s == 0:
                continue
            T = _shift_matrix(c.shape[axis] - 1, s)
            c = np.moveaxis(np.tensordot(T, c, axes=([1], [axis])), 0, axis)
        phase = np.exp(-TWO_PI_I * float(self.freq @ shift))
        return self._like(c * phase, center=self.center + shift)

    def phase(self, alpha=0.0, beta=None):
        """Multiply by ``exp(2 pi i (alpha + <beta, z>))``."""
        beta = np.zeros(self.dim) if beta is None else np.asarray(beta, dtype=float).reshape(self.dim)
        return self._like(self.coeffs * np.exp(TWO_PI_I * alpha), freq=self.freq + beta)

    def lift(self, extra_dims):
        """Extend to ``dim + extra_dims`` variables, constant in the new ones."""
        coeffs = self.coeffs.reshape(self.coeffs.shape + (1,) * extra_dims)
        return TestFunction(
            coeffs,
            np.concatenate([self.width, np.zeros(extra_dims)]),
            np.concatenate([self.center, np.zeros(extra_dims)]),
            np.concatenate([self.freq, np.zeros(extra_dims)]),
        )

    def __repr__(self):
        return (
            f"TestFunction(dim={self.dim}, degree={tuple(s - 1 for s in self.coeffs.shape)}, "
            f"width={self.width.tolist()}, center={self.center.tolist()}, freq={self.freq.tolist()})"
        )


def random_test_function(rng, dim, degree=2, width=(0.8, 1.6), center_scale=0.5, freq_scale=0.5):
    """Random member of the family, concentrated well inside ``[-4, 4]^dim``."""
    coeffs = rng.normal(size=(degree + 1,) * dim) + 1j * rng.normal(size=(degree + 1,) * dim)
    return TestFunction(
        coeffs,
        rng.uniform(*width, size=dim),
        rng.uniform(-center_scale, center_scale, size=dim),
        rng.uniform(-freq_scale, freq_scale, size=dim),
    )
