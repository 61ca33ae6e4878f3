"""Exact computations for noncommutative 3-spheres with moduli λ.

The quadratic algebra generated by the entries of a 2×2 unitary built
from z0..z3 with z*_μ = λ_μ z_μ, its central elements, Hilbert series,
characteristic variety and the correspondence σ on it.
"""

__version__ = "0.1.0"

from .exact import GaussRat, ParamScalar, LaurentPoly  # noqa: F401
from .freealg import Alphabet, FreeElt, MatFree, parse_free  # noqa: F401
from .sphere import (  # noqa: F401
    GENERIC_SAMPLES,
    PRESETS,
    ModuliParams,
    casimir,
    classify_case,
    normalize_moduli,
    relation_sextet,
    unitarity_relations,
)
