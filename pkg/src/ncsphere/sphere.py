"""Presentations of the quadratic algebras of noncommutative 3-spheres.

Parameters are four scalars λ0..λ3 with z*_μ = λ_μ z_μ.  They can be the
symbolic indeterminates (ParamScalar) or exact unit-circle GaussRat
values.  Indices k, l, m always run over the cyclic triples in CYCLIC.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .exact import (
    I,
    ONE,
    GaussRat,
    ParamScalar,
    coerce,
    is_zero,
    lambda_vars,
    parse_gauss,
    star,
    unit_circle_from_pythagorean,
)
from .freealg import (
    SCALED_ALPHABET,
    Z_ALPHABET,
    Alphabet,
    FreeElt,
    MatFree,
    anticommutator,
    commutator,
    mat_mul,
    pauli_expand,
    pauli_matrices,
)
from .linalg import SparseEchelon

CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))

__all__ = [
    "CYCLIC",
    "ModuliParams",
    "SpherePresentation",
    "SklyaninData",
    "SpecialCaseError",
    "CaseTag",
    "PRESETS",
    "GENERIC_SAMPLES",
    "relation_pair",
    "relation_sextet",
    "unitarity_relations",
    "comm_anticomm_form",
    "sklyanin_a",
    "rescale_sklyanin",
    "skly_relations",
    "central_elements",
    "central_elements_z",
    "hermiticity_factors",
    "normalize_moduli",
    "twist",
    "SphereData",
    "circle",
    "suspend",
    "classify_case",
    "relation_span_dim",
]


# ----------------------------------------------------------------------
# parameters
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ModuliParams:
    lam: tuple

    def __post_init__(self):
        if len(self.lam) != 4:
            raise ValueError("need exactly four parameters λ0..λ3")
        object.__setattr__(self, "lam", tuple(coerce(x) for x in self.lam))

    @classmethod
    def symbolic(cls):
        return cls(tuple(lambda_vars()))

    @classmethod
    def from_pythagorean(cls, pairs):
        return cls(tuple(unit_circle_from_pythagorean(p, q) for p, q in pairs))

    @classmethod
    def parse(cls, obj):
        """Accept a JSON string or list: entries are [p, q] pairs or Gaussian rationals."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, list) or len(obj) != 4:
            raise ValueError("λ must be a JSON array of four entries")
        vals = []
        for pos, x in enumerate(obj):
            try:
                if isinstance(x, list):
                    if len(x) != 2:
                        raise ValueError("a pythagorean pair has two integers")
                    vals.append(unit_circle_from_pythagorean(int(x[0]), int(x[1])))
                else:
                    vals.append(parse_gauss(x))
            except (ValueError, TypeError) as e:
                raise ValueError(f"λ[{pos}]: {e}") from None
        return cls(tuple(vals))

    @property
    def is_symbolic(self):
        return any(isinstance(x, ParamScalar) for x in self.lam)

    def is_unit(self):
        return all(isinstance(x, GaussRat) and x.norm() == 1 for x in self.lam)

    def __getitem__(self, i):
        return self.lam[i]

    def to_json(self):
        from .serialize import scalar_to_json

        return [scalar_to_json(x) for x in self.lam]

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.lam) + ")"


def _u(p, q):
    return unit_circle_from_pythagorean(p, q)


_G = GaussRat
PRESETS = {
    "commutative": (1, 1, 1, 1),
    "three-relations": (1, 1, 1, -1),
    "coarse": (1, _G(3, 4) / 5, _G(3, 4) / 5, -1),
    "generic-sample": (1, _G(3, 4) / 5, _G(5, 12) / 13, _G(8, 15) / 17),
    "two-conics": (1, _G(3, 4) / 5, _G(3, 4) / 5, _G(8, 15) / 17),
    "plane": (1, _G(3, 4) / 5, _G(3, 4) / 5, _G(3, 4) / 5),
    "paired": (1, _G(3, 4) / 5, _G(3, 4) / 5, 1),
}
PRESETS = {k: ModuliParams(v) for k, v in PRESETS.items()}

# exact generic points: four distinct λ², no λ_μ = ±λ_ν
GENERIC_SAMPLES = tuple(
    ModuliParams(v)
    for v in (
        PRESETS["generic-sample"].lam,
        (1, _u(2, 1), _u(3, 2), _u(4, 1)),
        (1, _u(3, 1), _u(5, 2), _u(7, 3)),
        (1, _u(5, 1), _u(4, 3), _u(7, 2)),
        (1, _u(6, 1), _u(5, 3), _u(8, 5)),
        (_u(1, 3), _u(7, 1), _u(2, 3), _u(9, 4)),
    )
)


# ----------------------------------------------------------------------
# relations
# ----------------------------------------------------------------------

def _z(alphabet=Z_ALPHABET):
    return [FreeElt.gen(i, alphabet) for i in range(4)]


def relation_pair(lam, k: int, alphabet=Z_ALPHABET):
    """The two relations attached to the cyclic triple starting at k."""
    lam = lam.lam if isinstance(lam, ModuliParams) else lam
    _, l, m = CYCLIC[k - 1]
    z = _z(alphabet)
    r1 = (z[k] * z[0]) * lam[0] - (z[0] * z[k]) * lam[k] + (z[l] * z[m]) * lam[m] - (z[m] * z[l]) * lam[l]
    r2 = -(z[k] * z[0]) * lam[k] + (z[0] * z[k]) * lam[0] + (z[l] * z[m]) * lam[l] - (z[m] * z[l]) * lam[m]
    return r1, r2


def relation_sextet(lam, alphabet=Z_ALPHABET):
    """First relation of each cyclic pair (k=1,2,3), then the second ones."""
    pairs = [relation_pair(lam, k, alphabet) for k in (1, 2, 3)]
    return [p[0] for p in pairs] + [p[1] for p in pairs]


def casimir(lam, alphabet=Z_ALPHABET):
    """Σ λ_μ z_μ², the left side of the normalisation relation."""
    lam = lam.lam if isinstance(lam, ModuliParams) else lam
    z = _z(alphabet)
    out = FreeElt.scalar(0, alphabet)
    for mu in range(4):
        out = out + (z[mu] * z[mu]) * lam[mu]
    return out


@dataclass(frozen=True)
class SpherePresentation:
    params: ModuliParams
    homogeneous_relations: tuple
    inhomogeneous_C: FreeElt
    alphabet: Alphabet = Z_ALPHABET
    identity_parts: tuple = ()  # 𝕀-components of UU* and U*U

    def relations_with_one(self):
        """Homogeneous sextet plus C - 1 (the filtered presentation)."""
        return list(self.homogeneous_relations) + [self.inhomogeneous_C - 1]

    def relations_with_C(self):
        """Homogeneous sextet plus C (graded quotient by the central element)."""
        return list(self.homogeneous_relations) + [self.inhomogeneous_C]


def unitary_matrices(lam, alphabet=Z_ALPHABET):
    """U = z0 𝕀 + i Σ z_j σ_j and U* = z0* 𝕀 − i Σ z_j* σ_j with z* = λ z."""
    lam = lam.lam if isinstance(lam, ModuliParams) else lam
    z = _z(alphabet)
    paulis = pauli_matrices()
    u = MatFree.constant(paulis[0], alphabet) * z[0]
    us = MatFree.constant(paulis[0], alphabet) * (z[0] * lam[0])
    for j in (1, 2, 3):
        s = MatFree.constant(paulis[j], alphabet)
        u = u + s * (z[j] * I)
        us = us - s * (z[j] * (lam[j] * I))
    return u, us


def unitarity_relations(params: ModuliParams, alphabet=Z_ALPHABET) -> SpherePresentation:
    """Expand UU* and U*U on the Pauli basis.

    The 𝕀 parts give C; the σ parts (divided by i) are the six homogeneous
    relations, ordered σ1, σ2, σ3 of UU* and then of U*U.
    """
    u, us = unitary_matrices(params, alphabet)
    a = pauli_expand(mat_mul(u, us))
    b = pauli_expand(mat_mul(us, u))
    minus_i = -I
    rels = tuple(c * minus_i for c in a[1:] + b[1:])
    return SpherePresentation(params, rels, a[0], alphabet, (a[0], b[0]))


def comm_anticomm_form(params, alphabet=Z_ALPHABET):
    """Relations written with commutators and anticommutators.

    Returns [first line for k=1,2,3] + [second line for k=1,2,3] where
    first  = (λk − λ0)[z0,zk]+ − (λl + λm)[zl,zm]−
    second = (λk + λ0)[z0,zk]− − (λm − λl)[zl,zm]+
    """
    lam = params.lam if isinstance(params, ModuliParams) else params
    z = _z(alphabet)
    first, second = [], []
    for k, l, m in CYCLIC:
        first.append(anticommutator(z[0], z[k]) * (lam[k] - lam[0])
                     - commutator(z[l], z[m]) * (lam[l] + lam[m]))
        second.append(commutator(z[0], z[k]) * (lam[k] + lam[0])
                      - anticommutator(z[l], z[m]) * (lam[m] - lam[l]))
    return first + second


def span_echelon(elts):
    ech = SparseEchelon()
    for e in elts:
        ech.add(e.to_vector())
    return ech


def relation_span_dim(params) -> int:
    return len(span_echelon(relation_sextet(params)))


# ----------------------------------------------------------------------
# Sklyanin rescaling
# ----------------------------------------------------------------------

class SpecialCaseError(ValueError):
    """A factor needed by the rescaling vanishes at these parameters."""

    def __init__(self, factor: str, message=None):
        self.factor = factor
        super().__init__(message or f"special case: {factor} = 0")


def sklyanin_a(params):
    """a_k = (λk + λ0)(λl + λm) for k = 1, 2, 3."""
    lam = params.lam if isinstance(params, ModuliParams) else params
    return tuple((lam[k] + lam[0]) * (lam[l] + lam[m]) for k, l, m in CYCLIC)


@dataclass(frozen=True)
class SklyaninData:
    """Rescaling data for Z_μ = ρ_μ z_μ.

    Only squares of the ρ are rational in λ.  The products ρ0ρk and ρlρm
    are represented through their squares, their ratio
    r_k = ρ0ρk/(ρlρm) = (λ0 + λk)/(λm − λl) and the total product
    P = ρ0ρ1ρ2ρ3, so that (ρ0ρk)² = P·r_k and (ρlρm)² = P/r_k.
    """

    a: tuple
    rho_sq: tuple
    pair_sq: dict
    ratio: tuple  # r_1, r_2, r_3
    product: object  # P
    params: ModuliParams = None

    def pair_product_sq(self, mu, nu):
        return self.pair_sq[frozenset((mu, nu))]


def _nonzero(x, name):
    if is_zero(x):
        raise SpecialCaseError(name)
    return x


def rescale_sklyanin(params: ModuliParams) -> SklyaninData:
    lam = params.lam
    n = lambda i: f"λ{i}"  # noqa: E731
    for k, l, m in CYCLIC:
        _nonzero(lam[0] + lam[k], f"{n(0)}+{n(k)}")
        _nonzero(lam[m] - lam[l], f"{n(m)}-{n(l)}")
    rho0 = ONE
    for k in (1, 2, 3):
        rho0 = rho0 * (lam[0] + lam[k])
    rho = [rho0]
    for k, l, m in CYCLIC:
        rho.append((lam[0] + lam[k]) * (lam[l] - lam[k]) * (lam[k] - lam[m]))
    ratio = tuple((lam[0] + lam[k]) / (lam[m] - lam[l]) for k, l, m in CYCLIC)
    prod = ONE
    for k, l, m in CYCLIC:
        prod = prod * (lam[0] + lam[k]) * (lam[m] - lam[l])
    pair_sq = {frozenset(p): rho[p[0]] * rho[p[1]] for p in itertools.combinations(range(4), 2)}
    return SklyaninData(sklyanin_a(params), tuple(rho), pair_sq, ratio, prod, params)


def rescale_relation(rel: FreeElt, sk: SklyaninData, k: int) -> FreeElt:
    """Multiply a z-relation on the pairs {0,k}, {l,m} by ρ0ρk and pass to Z.

    Words on {0,k} keep their coefficient, words on {l,m} pick up r_k.
    """
    _, l, m = CYCLIC[k - 1]
    out = {}
    for w, c in rel.terms.items():
        s = set(w)
        if len(w) != 2:
            raise ValueError("only quadratic relations can be rescaled")
        if s <= {0, k} and len(s) == 2:
            out[w] = c
        elif s == {l, m}:
            out[w] = c * sk.ratio[k - 1]
        else:
            raise ValueError(f"word {w} does not belong to the pairs of k={k}")
    return FreeElt(out, SCALED_ALPHABET)


def skly_relations(a, alphabet=SCALED_ALPHABET):
    """[Z0,Zk]− − [Zl,Zm]+ for k=1,2,3, then (am − al)[Z0,Zk]+ − ak[Zl,Zm]−."""
    if isinstance(a, SklyaninData):
        a = a.a
    Z = _z(alphabet)
    first = [commutator(Z[0], Z[k]) - anticommutator(Z[l], Z[m]) for k, l, m in CYCLIC]
    second = [anticommutator(Z[0], Z[k]) * (a[m - 1] - a[l - 1]) - commutator(Z[l], Z[m]) * a[k - 1]
              for k, l, m in CYCLIC]
    return first + second


def central_elements(a, alphabet=SCALED_ALPHABET):
    """Q_k = (am − al)(Z0² + Zk²) + ak(Zm² − Zl²) in the scaled generators."""
    if isinstance(a, SklyaninData):
        a = a.a
    Z = _z(alphabet)
    sq = [x * x for x in Z]
    return tuple(
        (sq[0] + sq[k]) * (a[m - 1] - a[l - 1]) + (sq[m] - sq[l]) * a[k - 1]
        for k, l, m in CYCLIC
    )


def central_elements_z(sk: SklyaninData, alphabet=Z_ALPHABET):
    """The same Q_k written in z, using Z_μ² = ρ_μ² z_μ² (rational in λ)."""
    a, r = sk.a, sk.rho_sq
    z = _z(alphabet)
    sq = [z[i] * z[i] * r[i] for i in range(4)]
    return tuple(
        (sq[0] + sq[k]) * (a[m - 1] - a[l - 1]) + (sq[m] - sq[l]) * a[k - 1]
        for k, l, m in CYCLIC
    )


def hermiticity_factors(sk: SklyaninData):
    """Derived data for Z_μ* = e_μ Z_μ with e_μ = λ_μ ρ_μ*/ρ_μ.

    e_μ itself needs a branch of ρ_μ; what is determined is e_μ² and the
    product Π e_μ = Πλ · P*/P.  Returned as a dict, nothing is asserted.
    """
    lam = sk.params.lam
    squares = tuple(lam[i] * lam[i] * star(sk.rho_sq[i]) / sk.rho_sq[i] for i in range(4))
    prod_lam = lam[0] * lam[1] * lam[2] * lam[3]
    product = prod_lam * star(sk.product) / sk.product
    return {
        "e_squared": squares,
        "e_product": product,
        "lambda_product": prod_lam,
        "e_squared_is_one": tuple(s == ONE for s in squares),
        "e_product_is_minus_one": product == coerce(-1),
    }


# ----------------------------------------------------------------------
# moduli normalisation and twists
# ----------------------------------------------------------------------

def _half(z: GaussRat) -> int:
    # 0 for angles in [0, π), 1 for [π, 2π)
    return 0 if (z.im > 0 or (z.im == 0 and z.re > 0)) else 1


def _cross(a: GaussRat, b: GaussRat):
    return a.re * b.im - a.im * b.re


def _angle_cmp(a: GaussRat, b: GaussRat) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = _cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _lex(t):
    return tuple(x.sort_key() for x in t)


def in_fundamental_domain(lam) -> bool:
    """λ0 = 1, counterclockwise order, Im(λ2/λ0) ≥ 0 and Im(λ3/λ1) ≥ 0."""
    lam = [coerce(x) for x in (lam.lam if isinstance(lam, ModuliParams) else lam)]
    if lam[0] != ONE:
        return False
    # cyclically sorted: at most one descent around the ring (repeats of λ0
    # at the end sit at angle 2π rather than 0)
    descents = sum(1 for i in range(4) if _angle_cmp(lam[i], lam[(i + 1) % 4]) > 0)
    if descents > 1:
        return False
    return (lam[2] / lam[0]).im >= 0 and (lam[3] / lam[1]).im >= 0


def normalize_moduli(lam):
    """Canonical representative: λ0 = 1, cyclic order, the two sign conditions.

    Ties on the boundary are broken by the lexicographic order of the
    (re, im) pairs.  Returns (ModuliParams, CaseTag).
    """
    lam = [coerce(x) for x in (lam.lam if isinstance(lam, ModuliParams) else lam)]
    for x in lam:
        if not isinstance(x, GaussRat) or x.norm() != 1:
            raise ValueError("normalize_moduli needs exact unit-circle values")
    ref = lam[0]
    rel = sorted(range(4), key=lambda i: _CmpKey(lam[i] / ref))
    ring = [lam[i] for i in rel]
    best = None
    for j in range(4):
        rot = ring[j:] + ring[:j]
        cand = tuple(x / rot[0] for x in rot)
        if (cand[2] / cand[0]).im >= 0 and (cand[3] / cand[1]).im >= 0:
            if best is None or _lex(cand) < _lex(best):
                best = cand
    p = ModuliParams(best)
    return p, classify_case(p)


class _CmpKey:
    __slots__ = ("z",)

    def __init__(self, z):
        self.z = z

    def __lt__(self, other):
        return _angle_cmp(self.z, other.z) < 0


def twist(params, flips=(), perm=(0, 1, 2, 3), allow_odd=False) -> ModuliParams:
    """Flip the signs of λ_i for i in ``flips``, then permute: out[i] = flipped[perm[i]].

    An even number of flips is a sign automorphism of two generators; odd
    flips only make sense for the cross-product construction and must be
    requested explicitly.
    """
    lam = params.lam if isinstance(params, ModuliParams) else tuple(coerce(x) for x in params)
    flips = set(flips)
    if not flips <= {0, 1, 2, 3}:
        raise ValueError("flip indices must lie in 0..3")
    if len(flips) % 2 and not allow_odd:
        raise ValueError("twists need an even number of sign flips")
    if sorted(perm) != [0, 1, 2, 3]:
        raise ValueError("perm must be a permutation of 0..3")
    flipped = [-x if i in flips else x for i, x in enumerate(lam)]
    return ModuliParams(tuple(flipped[perm[i]] for i in range(4)))


# ----------------------------------------------------------------------
# suspension
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SphereData:
    """Matrix data of a sphere: odd kind carries (U, U*), even kind carries s."""

    kind: str  # "odd" or "even"
    mat: MatFree
    mat_star: MatFree = None
    C: FreeElt = None
    dimension: int = 1

    @property
    def alphabet(self):
        return self.mat.alphabet

    def defining_matrices(self):
        n = self.mat.n
        c = MatFree.identity(n, self.alphabet) * self.C
        if self.kind == "odd":
            return [mat_mul(self.mat, self.mat_star) - c, mat_mul(self.mat_star, self.mat) - c]
        return [mat_mul(self.mat, self.mat) - c]


def circle():
    """The 1-sphere: one unitary u with u u* = u* u = 1."""
    alph = Alphabet(("u", "u*"))
    u, us = FreeElt.gen(0, alph), FreeElt.gen(1, alph)
    return SphereData("odd", MatFree([[u]], alph), MatFree([[us]], alph), FreeElt.scalar(1, alph), 1)


def _lift_matrix(m: MatFree, alph: Alphabet):
    return MatFree([[e.relabel(alph) for e in row] for row in m.rows], alph)


def suspend(data: SphereData, name=None) -> SphereData:
    """Adjoin a central self-adjoint x; the constant becomes C + x².

    odd -> even: s = [[x𝕀, U], [U*, −x𝕀]];  even -> odd: U = x𝕀 + i s.
    The even input's s is taken self-adjoint, so U* = x𝕀 − i s.
    """
    if name is None:
        taken = set(data.alphabet.names)
        name = next(c for c in ["x"] + [f"x{i}" for i in range(1, 10)] if c not in taken)
    alph = data.alphabet.extend(name, central=True)
    xi = len(alph) - 1
    x = FreeElt.gen(xi, alph)
    C = data.C.relabel(alph) + x * x
    n = data.mat.n
    if data.kind == "odd":
        U = _lift_matrix(data.mat, alph)
        Us = _lift_matrix(data.mat_star, alph)
        rows = []
        for i in range(n):
            rows.append([x if i == j else FreeElt.scalar(0, alph) for j in range(n)] + list(U.rows[i]))
        for i in range(n):
            rows.append(list(Us.rows[i]) + [-x if i == j else FreeElt.scalar(0, alph) for j in range(n)])
        return SphereData("even", MatFree(rows, alph), None, C, data.dimension + 1)
    s = _lift_matrix(data.mat, alph)
    xid = MatFree.identity(n, alph) * x
    return SphereData("odd", xid + s * I, xid - s * I, C, data.dimension + 1)


# ----------------------------------------------------------------------
# classification of special cases
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CaseTag:
    name: str
    partition: tuple  # classes of indices with equal λ²
    sign_flags: tuple  # ("λ0=-λ3", ...) for indices in a common class
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self):
        return {
            "name": self.name,
            "partition": [list(c) for c in self.partition],
            "sign_flags": list(self.sign_flags),
            "details": self.details,
        }


def classify_case(params) -> CaseTag:
    lam = params.lam if isinstance(params, ModuliParams) else tuple(coerce(x) for x in params)
    if any(isinstance(x, ParamScalar) for x in lam):
        raise ValueError("classify_case needs specialized λ")
    sq = [x * x for x in lam]
    classes = []
    for i in range(4):
        for c in classes:
            if sq[c[0]] == sq[i]:
                c.append(i)
                break
        else:
            classes.append([i])
    partition = tuple(tuple(c) for c in classes)
    flags = []
    for c in classes:
        for i, j in itertools.combinations(c, 2):
            flags.append(f"λ{i}=λ{j}" if lam[i] == lam[j] else f"λ{i}=-λ{j}")
    sizes = sorted(len(c) for c in classes)
    details = {}
    if len(classes) == 4:
        name = "generic"
    elif len(classes) == 3:
        name = "two-conics"
        pair = next(c for c in classes if len(c) == 2)
        details["line_through"] = [f"P{i}" for i in pair]
    elif sizes == [1, 3]:
        name = "plane"
        triple = next(c for c in classes if len(c) == 3)
        details["plane_through"] = [f"P{i}" for i in triple]
        if all(lam[i] == lam[triple[0]] for i in triple):
            details["central_generator"] = f"z{next(c for c in classes if len(c) == 1)[0]}"
    elif sizes == [2, 2]:
        same = [lam[c[0]] == lam[c[1]] for c in classes]
        name = "paired" if same[0] == same[1] else "coarse"
    else:
        minus = sum(1 for x in lam if x == -lam[0])
        if minus % 2 == 0:
            name = "commutative"
            details["twisted"] = minus == 2
        else:
            name = "three-relations"
    return CaseTag(name, partition, tuple(flags), details)
