"""JSON encoding of the package's values.

Exact scalars travel as strings (``"7/3"``, ``"-2"``), floats as JSON
numbers. When decoding, any JSON float in a document switches the whole
document to float mode; otherwise it is exact. ``HEIS_MODE`` overrides the
inference.
"""
from __future__ import annotations

import numpy as np

from . import scalars as sc
from .heisenberg import HeisAlgElement, HeisDualElement, HeisGroupElement, ghat_matrix
from .orbits import TupleRep
from .scalars import DimensionError
from .symplectic import SympCovector, SympVector


class InputError(ValueError):
    """A JSON document does not have the expected shape."""


def _scalars_in(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _scalars_in(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _scalars_in(v)
    else:
        yield obj


def document_mode(doc):
    """Scalar mode of a decoded document, honouring ``HEIS_MODE``."""
    forced = sc.env_mode()
    if forced:
        return forced
    if any(isinstance(v, float) for v in _scalars_in(doc)):
        return sc.FLOAT
    return sc.EXACT


def _require(doc, key):
    if not isinstance(doc, dict):
        raise InputError(f"expected a JSON object, got {type(doc).__name__}")
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    return doc[key]


def _get_n(doc):
    n = _require(doc, "n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"'n' must be a positive integer, got {n!r}")
    return n


def scalar_from_json(raw, mode, field="value"):
    try:
        return sc.parse_scalar(raw, mode)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"field {field!r}: {exc}") from None


def scalars_from_json(raw, size, mode, field):
    """A list of ``size`` scalars; a bare 0 stands for the zero vector."""
    if not isinstance(raw, list):
        if raw == 0 and not isinstance(raw, bool):
            return sc.zeros(size, mode)
        raise InputError(f"field {field!r} must be a list of {size} scalars")
    if len(raw) != size:
        raise DimensionError(f"field {field!r} has {len(raw)} entries, expected {size}")
    return sc.as_array([scalar_from_json(v, mode, field) for v in raw], mode)


def scalars_to_json(values):
    return [sc.format_scalar(v) for v in np.asarray(values).ravel()]


def _split_xy(doc, n, mode):
    x = scalars_from_json(_require(doc, "x"), n, mode, "x")
    y = scalars_from_json(_require(doc, "y"), n, mode, "y")
    return SympVector.from_xy(x, y, mode)


def _xy_json(v):
    return {"x": scalars_to_json(v.x), "y": scalars_to_json(v.y)}


# -- Heisenberg elements ---------------------------------------------------


def group_to_json(g):
    return {"n": g.n, **_xy_json(g.v), "r": sc.format_scalar(g.r)}


def group_from_json(doc, mode=None):
    mode = mode or document_mode(doc)
    n = _get_n(doc)
    return HeisGroupElement(_split_xy(doc, n, mode), scalar_from_json(_require(doc, "r"), mode, "r"))


def alg_to_json(X):
    return {"n": X.n, **_xy_json(X.x), "xi": sc.format_scalar(X.xi)}


def alg_from_json(doc, mode=None):
    mode = mode or document_mode(doc)
    n = _get_n(doc)
    return HeisAlgElement(_split_xy(doc, n, mode), scalar_from_json(_require(doc, "xi"), mode, "xi"))


def dual_to_json(f):
    return {"n": f.n, "lam": scalars_to_json(f.lam.coords), "mu": sc.format_scalar(f.mu)}


def dual_from_json(doc, mode=None):
    """Accepts ``lam`` (2n scalars, or 0) or separate ``x``/``y`` halves."""
    mode = mode or document_mode(doc)
    n = _get_n(doc)
    if "lam" in doc:
        lam = scalars_from_json(doc["lam"], 2 * n, mode, "lam")
    elif "x" in doc or "y" in doc:
        lam = _split_xy(doc, n, mode).coords
    else:
        raise InputError("missing field 'lam'")
    mu = scalar_from_json(_require(doc, "mu"), mode, "mu")
    return HeisDualElement(SympCovector(lam, mode), mu)


# -- tuples ----------------------------------------------------------------


def tuple_from_json(doc, mode=None):
    """``{"n", "zeta", "d", "xi"}`` or ``{"n", "matrix"}``."""
    mode = mode or document_mode(doc)
    n = _get_n(doc)
    size = 2 * n + 2
    if "matrix" in doc:
        rows = doc["matrix"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InputError("field 'matrix' must be a list of rows")
        if len(rows) != size or any(len(r) != size for r in rows):
            raise DimensionError(f"matrix must be {size}x{size} for n={n}")
        entries = [scalar_from_json(v, mode, "matrix") for r in rows for v in r]
        return TupleRep(n, sc.as_array(entries, mode).reshape(size, size))
    zeta = scalar_from_json(_require(doc, "zeta"), mode, "zeta")
    d = scalars_from_json(_require(doc, "d"), 2 * n, mode, "d")
    xi = scalar_from_json(_require(doc, "xi"), mode, "xi")
    return TupleRep(n, ghat_matrix(zeta, d, xi, mode))


def cotype_to_json(w, desc):
    return {
        "modulus": sc.format_scalar(desc.modulus),
        "height": int(desc.height),
        "zero_type_dim": int(desc.zero_type_dim),
        "label": desc.label,
        "w": scalars_to_json(w),
    }


def orbit_to_json(desc, verified=None):
    out = {
        "kind": desc.kind,
        "mu": sc.format_scalar(desc.mu),
        "representative": dual_to_json(desc.representative),
        "normalizer": None if desc.normalizer is None else group_to_json(desc.normalizer),
    }
    if verified is not None:
        out["verified"] = bool(verified)
    return out


def to_jsonable(obj):
    """Best-effort encoding for counterexample payloads."""
    if isinstance(obj, HeisGroupElement):
        return group_to_json(obj)
    if isinstance(obj, HeisAlgElement):
        return alg_to_json(obj)
    if isinstance(obj, HeisDualElement):
        return dual_to_json(obj)
    if isinstance(obj, (SympVector, SympCovector)):
        return scalars_to_json(obj.coords)
    if isinstance(obj, np.ndarray):
        if obj.dtype == complex:
            return [[float(z.real), float(z.imag)] for z in obj.ravel()]
        if obj.ndim == 2:
            return [scalars_to_json(row) for row in obj]
        return scalars_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj) if np.isfinite(obj) else str(float(obj))
    if sc.is_exact_scalar(obj):
        return sc.format_scalar(obj)
    return repr(obj)
