"""JSON forms of exact scalars, points and elements."""

from __future__ import annotations

from .exact import GaussRat, ParamScalar, coerce, gauss_to_json


def scalar_to_json(x):
    """GaussRat -> {"re","im"}; ParamScalar -> its canonical string; ints -> decimal string."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return str(x)
    x = coerce(x)
    if isinstance(x, GaussRat):
        return gauss_to_json(x)
    if isinstance(x, ParamScalar):
        return str(x)
    raise TypeError(type(x).__name__)


def point_to_json(coords):
    return [scalar_to_json(c) for c in coords]
