"""Scalar modes, array construction and exact rational linear algebra.

Two scalar modes are supported. ``exact`` arrays are numpy object arrays of
``gmpy2.mpq``; ``float`` arrays are plain ``float64``. Every routine here
dispatches on the dtype of its input, so callers never pass the mode around
once an array exists.
"""
from __future__ import annotations

import numbers
import os
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

DEFAULT_FLOAT_TOL = 1e-10


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def env_mode(default=None):
    """Scalar mode forced through the ``HEIS_MODE`` environment variable."""
    mode = os.environ.get("HEIS_MODE", "").strip().lower()
    if not mode:
        return default
    if mode not in MODES:
        raise ValueError(f"HEIS_MODE must be one of {MODES}, got {mode!r}")
    return mode


def is_exact_scalar(x):
    return isinstance(x, (int, Fraction, mpq)) and not isinstance(x, bool)


def to_scalar(value, mode=None):
    """Convert ``value`` to a scalar of the requested mode.

    Strings are parsed as rationals (``"7/3"``, ``"-2"``, ``"0.25"``). With
    ``mode=None`` integers, fractions and strings become exact, floats stay
    floats.
    """
    kind = type(value)
    if kind is mpq and mode != FLOAT:
        return value
    if kind is float and mode == FLOAT:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if mode is None:
        mode = FLOAT if isinstance(value, (float, np.floating)) else EXACT
    if mode == EXACT:
        if isinstance(value, str):
            return mpq(Fraction(value.strip()))
        if isinstance(value, (float, np.floating)):
            if not np.isfinite(value):
                raise ValueError(f"non-finite value {value!r} has no exact form")
            return mpq(float(value))
        if isinstance(value, np.integer):
            return mpq(int(value))
        if isinstance(value, (numbers.Rational, mpq)):
            return mpq(value)
        raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")
    if mode == FLOAT:
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        return float(value)
    raise ValueError(f"unknown scalar mode {mode!r}")


def infer_mode(values):
    flat = np.asarray(values, dtype=object).ravel()
    if any(isinstance(v, (float, np.floating)) for v in flat):
        return FLOAT
    return EXACT


def as_array(values, mode=None):
    """Build a scalar array (exact object array or float64 array)."""
    if isinstance(values, np.ndarray):
        if mode is None:
            mode = mode_of(values)
        if mode == mode_of(values):
            return values.copy()
    if mode is None:
        mode = infer_mode(values)
    raw = np.asarray(values, dtype=object)
    if mode == FLOAT:
        return np.array([to_scalar(v, FLOAT) for v in raw.ravel()], dtype=float).reshape(raw.shape)
    out = np.empty(raw.shape, dtype=object)
    for idx in np.ndindex(raw.shape):
        out[idx] = to_scalar(raw[idx], EXACT)
    return out


def mode_of(arr):
    return EXACT if np.asarray(arr).dtype == object else FLOAT


def zeros(shape, mode=EXACT):
    if mode == FLOAT:
        return np.zeros(shape)
    out = np.empty(shape, dtype=object)
    out.fill(mpq(0))
    return out


def identity(size, mode=EXACT):
    out = zeros((size, size), mode)
    one = mpq(1) if mode == EXACT else 1.0
    for i in range(size):
        out[i, i] = one
    return out


def frozen(arr):
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


_ZERO = mpq(0)


def max_abs(arr):
    """Largest absolute entry as a float (0.0 for empty arrays)."""
    arr = np.asarray(arr)
    if arr.size == 0:
        return 0.0
    return float(max(abs(float(v)) for v in arr.ravel())) if arr.dtype == object else float(np.max(np.abs(arr)))


def equal(a, b, tol=None):
    """Exact equality for exact arrays, ``max|a-b| <= tol`` otherwise."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    if a.dtype == object and b.dtype == object and tol is None:
        return a.tolist() == b.tolist()
    if tol is None:
        tol = DEFAULT_FLOAT_TOL
    return max_abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) <= tol


def is_zero(a, tol=None):
    a = np.asarray(a)
    if a.dtype == object and tol is None:
        return not any(a.ravel().tolist())
    return max_abs(np.asarray(a, dtype=float)) <= (DEFAULT_FLOAT_TOL if tol is None else tol)


def matmul(a, b):
    """Matrix product that skips zero entries of both factors in exact mode.

    The embedded matrices in this package are mostly zero, so walking the
    nonzero pattern in plain Python beats a dense object-array product by a
    wide margin.
    """
    if a.dtype != object or b.dtype != object:
        return np.asarray(a, dtype=float) @ np.asarray(b, dtype=float)
    vector = b.ndim == 1
    b_rows = b.reshape(-1, 1).tolist() if vector else b.tolist()
    cols = len(b_rows[0]) if b_rows else 0
    b_nz = [[(j, w) for j, w in enumerate(row) if w] for row in b_rows]
    zero = _ZERO
    out = []
    for row in a.tolist():
        acc = [zero] * cols
        for k, v in enumerate(row):
            if v:
                for j, w in b_nz[k]:
                    acc[j] = acc[j] + v * w
        out.append(acc)
    res = np.empty((len(out), cols), dtype=object)
    res[:] = out
    return res[:, 0] if vector else res


def solve(a, b):
    """Solve ``a x = b``; exact Gauss-Jordan for object arrays."""
    if a.dtype != object:
        return np.linalg.solve(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    size = a.shape[0]
    if a.shape != (size, size):
        raise DimensionError(f"solve needs a square matrix, got {a.shape}")
    vector = b.ndim == 1
    rhs = b.reshape(size, -1) if vector else b
    aug = np.concatenate([a, rhs], axis=1).astype(object)
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r, col] != 0), None)
        if pivot is None:
            raise np.linalg.LinAlgError("singular matrix")
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(size):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    sol = aug[:, size:]
    return sol.reshape(size) if vector else sol


def inverse(a):
    if a.dtype != object:
        return np.linalg.inv(a)
    return solve(a, identity(a.shape[0], EXACT))


def rank(a, tol=None):
    """Rank by exact row reduction, or by SVD in float mode."""
    if a.dtype != object:
        return int(np.linalg.matrix_rank(a, tol=tol))
    m = a.copy()
    rows, cols = m.shape
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i, col] != 0), None)
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(r + 1, rows):
            if m[i, col] != 0:
                m[i] = m[i] - (m[i, col] / m[r, col]) * m[r]
        r += 1
        if r == rows:
            break
    return r


def det(a):
    if a.dtype != object:
        return float(np.linalg.det(a))
    m = a.copy()
    size = m.shape[0]
    result = mpq(1)
    for col in range(size):
        pivot = next((i for i in range(col, size) if m[i, col] != 0), None)
        if pivot is None:
            return mpq(0)
        if pivot != col:
            m[[col, pivot]] = m[[pivot, col]]
            result = -result
        result *= m[col, col]
        for i in range(col + 1, size):
            if m[i, col] != 0:
                m[i] = m[i] - (m[i, col] / m[col, col]) * m[col]
    return result


def format_scalar(x):
    """JSON form of a scalar: ``"p/q"`` string when exact, number when float."""
    if isinstance(x, (float, np.floating)):
        return float(x)
    q = mpq(x)
    return str(q)


def parse_scalar(raw, mode=None):
    """Inverse of :func:`format_scalar`; ``mode`` forces a conversion."""
    if isinstance(raw, bool) or not isinstance(raw, (str, int, float)):
        raise TypeError(f"expected a scalar (number or 'p/q' string), got {raw!r}")
    return to_scalar(raw, mode)
