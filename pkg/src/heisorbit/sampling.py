"""Random instances for the property suites.

Every generator takes a ``numpy.random.Generator``. :func:`suite_rng`
derives an independent stream from ``(seed, name)`` so suites give the same
instances whether they run alone, together or concurrently.
"""
from __future__ import annotations

import zlib

import numpy as np
from gmpy2 import mpq

from . import scalars as sc
from .heisenberg import Ghat_matrix, HeisAlgElement, HeisDualElement, HeisGroupElement, ghat_matrix
from .symplectic import SympCovector, SympVector


BOUND, MAX_DEN = 9, 6


class SuiteRng:
    """A ``Generator`` plus a block buffer of default-range rationals.

    Drawing exact scalars one numpy call at a time is dominated by call
    overhead; the buffer amortises it. Other attributes go to the generator.
    """

    BLOCK = 4096

    def __init__(self, generator):
        self.generator = generator
        self._buffer = []
        self._pos = 0

    def __getattr__(self, name):
        return getattr(self.generator, name)

    def rationals(self, count):
        if self._pos + count > len(self._buffer):
            draws = self.generator.integers(
                (-BOUND, 1), (BOUND + 1, MAX_DEN + 1), size=(max(count, self.BLOCK), 2)
            ).tolist()
            self._buffer = self._buffer[self._pos:] + [mpq(p, q) for p, q in draws]
            self._pos = 0
        out = self._buffer[self._pos:self._pos + count]
        self._pos += count
        return out


def suite_rng(seed, name):
    return SuiteRng(np.random.default_rng([int(seed), zlib.crc32(name.encode("utf-8"))]))


def _default_rationals(rng, count):
    if isinstance(rng, SuiteRng):
        return rng.rationals(count)
    draws = rng.integers((-BOUND, 1), (BOUND + 1, MAX_DEN + 1), size=(count, 2)).tolist()
    return [mpq(p, q) for p, q in draws]


def rational(rng, bound=BOUND, max_den=MAX_DEN):
    if (bound, max_den) == (BOUND, MAX_DEN):
        return _default_rationals(rng, 1)[0]
    return mpq(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))


def nonzero_rational(rng, bound=9, max_den=6):
    while True:
        q = rational(rng, bound, max_den)
        if q != 0:
            return q


def scalar(rng, mode):
    if mode == sc.EXACT:
        return rational(rng)
    return float(rng.uniform(-2, 2))


def nonzero_scalar(rng, mode):
    if mode == sc.EXACT:
        return nonzero_rational(rng)
    while True:
        x = float(rng.uniform(-2, 2))
        if abs(x) > 1e-3:
            return x


def array(rng, size, mode):
    if mode == sc.EXACT:
        out = np.empty(size, dtype=object)
        out[:] = _default_rationals(rng, size)
        return out
    return rng.uniform(-2, 2, size=size)


def vector(rng, n, mode=sc.EXACT):
    return SympVector(array(rng, 2 * n, mode))


def nonzero_vector(rng, n, mode=sc.EXACT):
    while True:
        v = vector(rng, n, mode)
        if not sc.is_zero(v.coords):
            return v


def covector(rng, n, mode=sc.EXACT):
    return SympCovector(array(rng, 2 * n, mode))


def group_element(rng, n, mode=sc.EXACT):
    return HeisGroupElement(vector(rng, n, mode), scalar(rng, mode))


def alg_element(rng, n, mode=sc.EXACT):
    return HeisAlgElement(vector(rng, n, mode), scalar(rng, mode))


def dual_element(rng, n, mode=sc.EXACT, mu=None):
    return HeisDualElement(covector(rng, n, mode), scalar(rng, mode) if mu is None else mu)


def ext_vector(rng, n, mode=sc.EXACT):
    return array(rng, 2 * n + 2, mode)


def ghat_element(rng, n, mode=sc.EXACT):
    return ghat_matrix(scalar(rng, mode), array(rng, 2 * n, mode), scalar(rng, mode), mode)


def ghat_f_element(rng, n, mode=sc.EXACT):
    return ghat_matrix(sc.to_scalar(0, mode), array(rng, 2 * n, mode), scalar(rng, mode), mode)


def Ghat_element(rng, n, mode=sc.EXACT):
    return Ghat_matrix(nonzero_scalar(rng, mode), array(rng, 2 * n, mode), scalar(rng, mode), mode)


def Ghat_f_element(rng, n, mode=sc.EXACT):
    return Ghat_matrix(sc.to_scalar(1, mode), array(rng, 2 * n, mode), scalar(rng, mode), mode)
