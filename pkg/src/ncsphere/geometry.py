"""Characteristic variety, the correspondence σ and the elliptic identification.

Two coordinate systems on the dual projective space are used:

* ``y`` dual to the generators z (the 6×4 matrix of the relations), and
* ``Y`` dual to the rescaled generators Z_μ = ρ_μ z_μ, where σ is given by
  3×3 minors of a parameter-free 3×4 block and the curve is B ∝ a with
  B_k = Y0² − Yk².

All polynomial identities are decided exactly, either by expansion or by
reduction modulo a Groebner basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from gmpy2 import is_square, isqrt, mpq

from .commpoly import CommPoly, GroebnerBasis, groebner_basis, poly_vars
from .exact import ONE, GaussRat, ParamScalar, coerce, is_zero
from .freealg import FreeElt
from .linalg import SparseEchelon, det, nullspace
from .sphere import (
    CYCLIC,
    ModuliParams,
    SpecialCaseError,
    classify_case,
    rescale_sklyanin,
    relation_sextet,
    skly_relations,
    sklyanin_a,
)

Y_NAMES = ("y0", "y1", "y2", "y3")
SCALED_NAMES = ("Y0", "Y1", "Y2", "Y3")
PRIMED_NAMES = ("W0", "W1", "W2", "W3")

ROW_QUADRUPLES = tuple(itertools.combinations(range(6), 4))

__all__ = [
    "ProjPoint",
    "CurveIdeal",
    "char_matrix",
    "bilinear_matrix",
    "det_1245_factorization",
    "verify_det_1245",
    "block_minor_factors",
    "minors_in_ideal",
    "curve_quadrics",
    "special_points",
    "M_MATRIX",
    "M_DEGENERATE",
    "n_matrix",
    "sigma_N",
    "sigma_inverse_N",
    "sigma_II0",
    "sigma_apply",
    "sigma_y",
    "sigma_inverse_y",
    "reality_j",
    "reality_checks",
    "curve_identification",
    "central_form_check",
    "classify_variety",
    "gauss_sqrt",
]


def _lam(params):
    return params.lam if isinstance(params, ModuliParams) else tuple(coerce(x) for x in params)


def _const(c, names):
    return CommPoly.constant(c, names)


# ----------------------------------------------------------------------
# points
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    coords: tuple
    tag: str = "y"

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("projective points here have four coordinates")
        object.__setattr__(self, "coords", tuple(
            c if isinstance(c, CommPoly) else coerce(c) for c in self.coords))
        if all(is_zero(c) for c in self.coords):
            raise ValueError("all homogeneous coordinates are zero")

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        a, b = self.coords, other.coords
        return all(is_zero(a[i] * b[j] - a[j] * b[i]) for i in range(4) for j in range(i + 1, 4))

    def __hash__(self):
        return hash(self.tag)

    def to_json(self):
        from .serialize import scalar_to_json

        return [str(c) if isinstance(c, CommPoly) else scalar_to_json(c) for c in self.coords]


def proportional_mod(a, b, reducer) -> bool:
    """Do the 2×2 minors of two coordinate vectors reduce to zero?"""
    return all(
        reducer(a[i] * b[j] - a[j] * b[i]).is_zero()
        for i in range(len(a)) for j in range(i + 1, len(a))
    )


# ----------------------------------------------------------------------
# the relation matrix
# ----------------------------------------------------------------------

def char_matrix(params, names=Y_NAMES):
    """The 6×4 matrix whose rank drops on the characteristic variety (written out)."""
    l0, l1, l2, l3 = _lam(params)
    y0, y1, y2, y3 = poly_vars(names)
    return [
        [y1 * l0, -(y0 * l1), -(y3 * l2), y2 * l3],
        [y2 * l0, y3 * l1, -(y0 * l2), -(y1 * l3)],
        [y3 * l0, -(y2 * l1), y1 * l2, -(y0 * l3)],
        [-(y1 * l1), y0 * l0, -(y3 * l3), y2 * l2],
        [-(y2 * l2), y3 * l3, y0 * l0, -(y1 * l1)],
        [-(y3 * l3), -(y2 * l2), y1 * l1, y0 * l0],
    ]


def bilinear_matrix(relations, names=Y_NAMES, transpose=False):
    """Row r, column b: Σ_a coeff_r(z_a z_b) y_a  (or the a/b roles swapped)."""
    ys = poly_vars(names)
    rows = []
    for rel in relations:
        row = [_const(0, names) for _ in range(4)]
        for w, c in rel.terms.items():
            if len(w) != 2:
                raise ValueError("bilinear_matrix needs quadratic relations")
            a, b = (w[1], w[0]) if transpose else w
            row[b] = row[b] + ys[a] * c
        rows.append(row)
    return rows


def submatrix(mat, rows, cols=range(4)):
    return [[mat[r][c] for c in cols] for r in rows]


def det_1245_factorization(params, names=Y_NAMES):
    """(λ0λ3 + λ1λ2)[(y1² + y2²)(λ0²y0² + λ3²y3²) − (y0² + y3²)(λ1²y1² + λ2²y2²)]."""
    l0, l1, l2, l3 = _lam(params)
    y0, y1, y2, y3 = poly_vars(names)
    s = [y * y for y in (y0, y1, y2, y3)]
    bracket = (s[1] + s[2]) * (s[0] * (l0 * l0) + s[3] * (l3 * l3)) - (s[0] + s[3]) * (
        s[1] * (l1 * l1) + s[2] * (l2 * l2))
    return bracket * (l0 * l3 + l1 * l2)


def verify_det_1245(params):
    """Compare det(rows 1,2,4,5) with the factorised form.

    Returns (ok, sign): ok when the determinant equals sign times the
    factorised expression for sign = ±1.  With rows taken in increasing
    order the sign is −1.
    """
    mat = char_matrix(params)
    d = det(submatrix(mat, (0, 1, 3, 4)))
    f = det_1245_factorization(params)
    if (d - f).is_zero():
        return True, 1
    if (d + f).is_zero():
        return True, -1
    return False, 0


def curve_quadrics(params, names=Y_NAMES):
    """Σ y_μ² and Σ λ_μ² y_μ²."""
    lam = _lam(params)
    ys = poly_vars(names)
    q1 = _const(0, names)
    q2 = _const(0, names)
    for l, y in zip(lam, ys):
        q1 = q1 + y * y
        q2 = q2 + y * y * (l * l)
    return q1, q2


def _divisible(p, q):
    """Exact divisibility of CommPoly p by q (principal ideal membership)."""
    gb = groebner_basis([q])
    return gb.reduce(p).is_zero()


def block_minor_factors(params):
    """Check that the 3×3 minors of rows 1–3 contain Σy² and those of rows 4–6 contain Σλ²y²."""
    mat = char_matrix(params)
    q1, q2 = curve_quadrics(params)
    out = {"upper": [], "lower": []}
    for cols in itertools.combinations(range(4), 3):
        up = det(submatrix(mat, (0, 1, 2), cols))
        lo = det(submatrix(mat, (3, 4, 5), cols))
        out["upper"].append(up.is_zero() or _divisible(up, q1))
        out["lower"].append(lo.is_zero() or _divisible(lo, q2))
    out["ok"] = all(out["upper"]) and all(out["lower"])
    return out


@dataclass
class CurveIdeal:
    generators: tuple
    gb: GroebnerBasis = None
    names: tuple = Y_NAMES

    @classmethod
    def from_params(cls, params, names=Y_NAMES, budget=None):
        gens = curve_quadrics(params, names)
        return cls(gens, groebner_basis(list(gens), budget=budget), names)

    def reduce(self, p):
        return self.gb.reduce(p)

    def contains(self, p):
        return self.gb.reduce(p).is_zero()


def minors_in_ideal(params, budget=None, workers=None):
    """Reduce all fifteen 4×4 minors of the relation matrix modulo (q1, q2)."""
    mat = char_matrix(params)
    ideal = CurveIdeal.from_params(params, budget=budget)
    results = []
    for rows in ROW_QUADRUPLES:
        m = det(submatrix(mat, rows))
        r = ideal.reduce(m)
        results.append({"rows": [i + 1 for i in rows], "zero": r.is_zero(),
                        "normal_form": None if r.is_zero() else str(r)})
    return {"ok": all(r["zero"] for r in results), "minors": results}


def matrix_rank_at(mat, point):
    """Exact rank of a polynomial matrix evaluated at a point."""
    ech = SparseEchelon()
    for row in mat:
        ech.add({j: e.evaluate(point) for j, e in enumerate(row)})
    return len(ech)


# ----------------------------------------------------------------------
# special points
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpecialPoint:
    """A point given by its squared coordinates and, for all-nonzero points,
    the products y_l y_m = γ_k y0 y_k, with y0 y_k a square root chosen per sign pattern."""

    label: str
    squares: tuple
    gammas: tuple = None  # γ_k such that y_l y_m = γ_k y0 y_k
    coords: tuple = None  # exact coordinates when available (the P_μ)


def special_points(params):
    lam = _lam(params)
    sq = [l * l for l in lam]
    for i, j in itertools.combinations(range(4), 2):
        if sq[i] == sq[j]:
            raise SpecialCaseError(f"λ{i}²-λ{j}²", "coincident λ²: use classify_case / classify_variety")
    pts = []
    for mu in range(4):
        c = tuple(ONE if i == mu else coerce(0) for i in range(4))
        pts.append(SpecialPoint(f"P{mu}", tuple(x * x for x in c), None, c))
    d = lambda i, j: sq[i] - sq[j]  # noqa: E731
    squares = (
        d(2, 3) * d(3, 1) * d(1, 2),
        d(2, 3) * d(0, 2) * d(0, 3),
        d(0, 1) * d(3, 1) * d(0, 3),
        d(0, 1) * d(0, 2) * d(1, 2),
    )
    gammas = tuple(d(0, k) / d(l, m) for k, l, m in CYCLIC)
    # the four points differ by sign changes of pairs of coordinates; each
    # choice of signs (s1, s2) for y0y1, y0y2 fixes the third product
    for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        pts.append(SpecialPoint(f"S{'+' if s1 > 0 else '-'}{'+' if s2 > 0 else '-'}", squares, gammas))
    return pts


def special_point_report(params):
    """Membership and σ-fixedness for the eight special points."""
    lam = _lam(params)
    pts = special_points(params)
    sq = [l * l for l in lam]
    mat = char_matrix(params)
    rels = relation_sextet(params)
    out = []
    for p in pts:
        entry = {"label": p.label}
        if p.coords is not None:
            entry["in_E"] = matrix_rank_at(mat, p.coords) < 4
            kern = nullspace([[e.evaluate(p.coords) for e in row] for row in mat])
            entry["sigma_fixed"] = len(kern) == 1 and ProjPoint(tuple(kern[0])) == ProjPoint(p.coords)
        else:
            s = p.squares
            entry["sum_sq"] = s[0] + s[1] + s[2] + s[3]
            entry["sum_lam_sq"] = sum((sq[i] * s[i] for i in range(4)), coerce(0))
            entry["in_E"] = is_zero(entry["sum_sq"]) and is_zero(entry["sum_lam_sq"])
            # consistency of the products with the squares: (y_l y_m)² = γ_k² y0² y_k²
            entry["products_consistent"] = all(
                s[l] * s[m] == p.gammas[k - 1] ** 2 * s[0] * s[k] for k, l, m in CYCLIC)
            # rows evaluated at (y, y): α y0 yk + β yl ym = (α + β γk) y0 yk, and y0 yk ≠ 0
            coeffs = []
            for rel in rels:
                k = next(i for i in (1, 2, 3) if any(set(w) == {0, i} for w in rel.terms))
                _, l, m = CYCLIC[k - 1]
                alpha = sum((c for w, c in rel.terms.items() if set(w) == {0, k}), coerce(0))
                beta = sum((c for w, c in rel.terms.items() if set(w) == {l, m}), coerce(0))
                coeffs.append(alpha + beta * p.gammas[k - 1])
            entry["sigma_fixed"] = all(is_zero(c) for c in coeffs)
        out.append(entry)
    return out


# ----------------------------------------------------------------------
# scaled coordinates: M, N(Z), σ
# ----------------------------------------------------------------------

_h = GaussRat(mpq(1, 2))
M_MATRIX = tuple(tuple(x * _h for x in row) for row in (
    (1, 1, 1, 1),
    (1, 1, -1, -1),
    (1, -1, 1, -1),
    (1, -1, -1, 1),
))
# a sign slip in row 3 makes rows 3 and 4 equal; kept as a negative control
M_DEGENERATE = tuple(tuple(x * _h for x in row) for row in (
    (1, 1, 1, 1),
    (1, 1, -1, -1),
    (1, -1, -1, 1),
    (1, -1, -1, 1),
))


def mat_apply(m, v):
    return [sum((m[i][j] * v[j] for j in range(len(v)) if not is_zero(m[i][j])), v[0] * 0)
            for i in range(len(m))]


def mat_product(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), coerce(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def n_matrix(a, names=SCALED_NAMES):
    """The 6×4 matrix of the scaled relations in Y (rows 1–3 do not depend on a)."""
    a1, a2, a3 = (coerce(x) for x in a)
    Y0, Y1, Y2, Y3 = poly_vars(names)
    return [
        [Y1, -Y0, Y3, Y2],
        [Y2, Y3, -Y0, Y1],
        [Y3, Y2, Y1, -Y0],
        [Y1 * (a2 - a3), Y0 * (a2 - a3), -(Y3 * a1), Y2 * a1],
        [Y2 * (a3 - a1), Y3 * a2, Y0 * (a3 - a1), -(Y1 * a2)],
        [Y3 * (a1 - a2), -(Y2 * a3), Y1 * a3, Y0 * (a1 - a2)],
    ]


def kernel_by_minors(rows3):
    """Signed 3×3 minors: a vector annihilated by the three given rows."""
    out = []
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        d = det([[r[c] for c in cols] for r in rows3])
        out.append(d if j % 2 == 0 else -d)
    return out


def sigma_N(names=SCALED_NAMES):
    """σ(Y) from the first three rows of N(Z): cubic in Y, free of parameters."""
    return kernel_by_minors(n_matrix((0, 0, 0), names)[:3])


def _i0(v):
    return [-v[0], v[1], v[2], v[3]]


def sigma_inverse_N(names=SCALED_NAMES):
    """σ⁻¹ = I0 ∘ σ ∘ I0 in Y coordinates."""
    Y = list(poly_vars(names))
    s = sigma_N(names)
    return _i0([p.subs(_i0(Y), names) for p in s])


def _proj_inverse(v):
    return [v[1] * v[2] * v[3], v[0] * v[2] * v[3], v[0] * v[1] * v[3], v[0] * v[1] * v[2]]


def sigma_II0(names=SCALED_NAMES):
    """σ = I ∘ I0: flip Y0, pass to λ-coordinates with M, invert them, come back."""
    Y = list(poly_vars(names))
    return mat_apply(M_MATRIX, _proj_inverse(mat_apply(M_MATRIX, _i0(Y))))


def sigma_inverse_II0(names=SCALED_NAMES):
    """σ⁻¹ = I0 ∘ I."""
    Y = list(poly_vars(names))
    return _i0(mat_apply(M_MATRIX, _proj_inverse(mat_apply(M_MATRIX, Y))))


def scaled_curve(a, names=SCALED_NAMES):
    """The curve B ∝ a as two quadrics a2 B1 − a1 B2 and a3 B2 − a2 B3."""
    a = [coerce(x) for x in a]
    Y = poly_vars(names)
    B = [Y[0] * Y[0] - Y[k] * Y[k] for k in (1, 2, 3)]
    return B[0] * a[1] - B[1] * a[0], B[1] * a[2] - B[2] * a[1]


class SquareSubstitution:
    """Normal form modulo Y_k² − Y0² + t·a_k (t a fresh variable).

    The leading terms Y_k² are pairwise coprime, so this is a Groebner
    basis of the ideal in (Y, t); a polynomial in Y lies in the curve
    ideal exactly when its normal form vanishes.  ``groups`` lists the
    (Y0, Y1, Y2, Y3) positions of each copy of the coordinates and
    ``t_positions`` the positions of their auxiliary variables.
    """

    def __init__(self, a, names, groups, t_positions):
        self.a = [coerce(x) for x in a]
        self.names = tuple(names)
        self.groups = groups
        self.t_positions = t_positions
        self._memo = {}

    @classmethod
    def single(cls, a, names=SCALED_NAMES):
        return cls(a, tuple(names) + ("t",), [(0, 1, 2, 3)], [4])

    @classmethod
    def double(cls, a, names=SCALED_NAMES + PRIMED_NAMES):
        return cls(a, tuple(names) + ("t", "t'"), [(0, 1, 2, 3), (4, 5, 6, 7)], [8, 9])

    def _nf_exponent(self, e):
        hit = self._memo.get(e)
        if hit is not None:
            return hit
        terms = {tuple(e): ONE}
        for grp, tp in zip(self.groups, self.t_positions):
            for k in (1, 2, 3):
                pos, p0 = grp[k], grp[0]
                new = {}
                for ex, c in terms.items():
                    q, r = divmod(ex[pos], 2)
                    if q == 0:
                        new[ex] = new.get(ex, 0) + c if ex in new else c
                        continue
                    # (Y0² − t a_k)^q expanded binomially
                    base = list(ex)
                    base[pos] = r
                    binom = 1
                    for i in range(q + 1):
                        # term: C(q,i) Y0^{2(q−i)} (−t a_k)^i
                        ne = list(base)
                        ne[p0] += 2 * (q - i)
                        ne[tp] += i
                        coef = c * binom * (-self.a[k - 1]) ** i if i else c * binom
                        ne = tuple(ne)
                        v = new.get(ne)
                        new[ne] = coef if v is None else v + coef
                        binom = binom * (q - i) // (i + 1)
                terms = {k2: v for k2, v in new.items() if not is_zero(v)}
        self._memo[tuple(e)] = terms
        return terms

    def reduce(self, p: CommPoly) -> CommPoly:
        names = self.names
        extra = len(names) - len(p.names)
        acc = {}
        for e, c in p.terms.items():
            for ne, v in self._nf_exponent(tuple(e) + (0,) * extra).items():
                x = acc.get(ne)
                x = c * v if x is None else x + c * v
                if is_zero(x):
                    acc.pop(ne, None)
                else:
                    acc[ne] = x
        return CommPoly._make(acc, names)


def sigma_apply(a, point):
    """σ of an explicit point (coordinates in Y), via the 3×3 minors of N(Z)."""
    coords = [coerce(c) for c in (point.coords if isinstance(point, ProjPoint) else point)]
    rows = [[e.evaluate(coords) for e in row] for row in n_matrix(a)[:3]]
    img = kernel_by_minors(rows)
    if all(is_zero(c) for c in img):
        raise SpecialCaseError("rank(N rows 1-3)", "first three rows of N(Z) drop rank at this point")
    return ProjPoint(tuple(img), "Y")


def sigma_y(params, names=Y_NAMES):
    """σ in y coordinates: kernel of rows 1, 2, 4 of the relation matrix."""
    mat = char_matrix(params, names)
    return kernel_by_minors([mat[0], mat[1], mat[3]])


def sigma_inverse_y(params, names=Y_NAMES):
    """σ⁻¹ in y coordinates from the transposed bilinear system (rows 1, 2, 4)."""
    mat = bilinear_matrix(relation_sextet(params), names, transpose=True)
    return kernel_by_minors([mat[0], mat[1], mat[3]])


def scaled_checks(params, budget=None):
    """σ preserves the scaled curve; σ_N agrees with I∘I0; σ∘σ⁻¹ = id on the curve."""
    a = sklyanin_a(params)
    names = SCALED_NAMES
    Y = list(poly_vars(names))
    gens = scaled_curve(a, names)
    gb = groebner_basis(list(gens), budget=budget)
    ss = SquareSubstitution.single(a, names)
    s = sigma_N(names)
    s_ii0 = sigma_II0(names)
    s_inv = sigma_inverse_N(names)
    on_curve = [gb.reduce(g.subs(s, names)).is_zero() for g in gens]
    on_curve_ss = [ss.reduce(g.subs(s, names)).is_zero() for g in gens]
    agree = proportional_mod(s, s_ii0, gb.reduce)
    inv_agree = proportional_mod(s_inv, sigma_inverse_II0(names), gb.reduce)
    comp = [p.subs(s_inv, names) for p in s]
    round_trip = proportional_mod(comp, Y, gb.reduce)
    return {
        "sigma_on_curve": all(on_curve),
        "sigma_on_curve_square_substitution": all(on_curve_ss),
        "sigma_equals_I_I0": agree,
        "sigma_inverse_equals_I0_I": inv_agree,
        "sigma_sigma_inverse_identity": round_trip,
        "ok": all(on_curve) and all(on_curve_ss) and agree and inv_agree and round_trip,
    }


# ----------------------------------------------------------------------
# reality
# ----------------------------------------------------------------------

def reality_j(params, point):
    """(y_μ) ↦ (λ_μ* y_μ*) for a numeric point."""
    lam = _lam(params)
    coords = point.coords if isinstance(point, ProjPoint) else point
    return ProjPoint(tuple(l.conjugate() * coerce(y).conjugate() for l, y in zip(lam, coords)))


def reality_checks(params, budget=None):
    """j² = id, j(E) ⊆ E and j∘σ = σ⁻¹∘j on the curve (numeric λ only).

    With u the conjugate of a point w of E, u runs over the conjugate curve
    Ē and j(w) = D u with D = diag(1/λ); so both sides are polynomial in u
    and are compared modulo the ideal of Ē.
    """
    lam = _lam(params)
    if not all(isinstance(l, GaussRat) for l in lam):
        raise ValueError("reality checks need numeric λ")
    names = Y_NAMES
    u = list(poly_vars(names))
    dinv = [l.inverse() for l in lam]
    du = [x * d for x, d in zip(u, dinv)]
    q1, q2 = curve_quadrics(params, names)
    bar_ideal = groebner_basis([q1.conjugate(), q2.conjugate()], budget=budget)
    # j(j(y)) = D conj(D) y and |λ| = 1
    j_squared = all(d * d.conjugate() == ONE for d in dinv)
    j_preserves = all(bar_ideal.reduce(q.subs(du, names)).is_zero() for q in (q1, q2))
    s = sigma_y(params, names)
    s_inv = sigma_inverse_y(params, names)
    lhs = [p.conjugate() * d for p, d in zip(s, dinv)]
    rhs = [p.subs(du, names) for p in s_inv]
    intertwine = proportional_mod(lhs, rhs, bar_ideal.reduce)
    # σ⁻¹ is σ conjugated by the sign change of y0
    e_ideal = groebner_basis([q1, q2], budget=budget)
    y = list(poly_vars(names))
    conj = _i0([p.subs(_i0(y), names) for p in s])
    opposite = proportional_mod(conj, s_inv, e_ideal.reduce)
    sigma_preserves = all(e_ideal.reduce(q.subs(s, names)).is_zero() for q in (q1, q2))
    return {
        "j_squared_identity": j_squared,
        "j_preserves_E": j_preserves,
        "j_sigma_equals_sigma_inverse_j": intertwine,
        "sigma_inverse_is_I0_sigma_I0": opposite,
        "sigma_y_preserves_E": sigma_preserves,
        "ok": j_squared and j_preserves and intertwine and opposite and sigma_preserves,
    }


# ----------------------------------------------------------------------
# identification of the two curves
# ----------------------------------------------------------------------

def genscale(params, names=SCALED_NAMES):
    """The two curve equations in scaled coordinates, denominators cleared."""
    lam = _lam(params)
    Y = poly_vars(names)
    c0 = ONE
    for k, l, m in CYCLIC:
        c0 = c0 * (lam[m] - lam[l])
    ck = [(lam[0] + lam[m]) * (lam[0] + lam[l]) * (lam[m] - lam[l]) for k, l, m in CYCLIC]
    g1 = Y[0] * Y[0] * c0
    g2 = Y[0] * Y[0] * (lam[0] * lam[0] * c0)
    for k in (1, 2, 3):
        g1 = g1 + Y[k] * Y[k] * ck[k - 1]
        g2 = g2 + Y[k] * Y[k] * (lam[k] * lam[k] * ck[k - 1])
    return g1, g2, (c0, *ck)


def _square_coeffs(p, names):
    out = []
    for i in range(4):
        e = tuple(2 if j == i else 0 for j in range(4))
        out.append(p.terms.get(e, coerce(0)))
    return out


def curve_identification(params):
    """Report on the identification of the parameter curve with E."""
    lam = _lam(params)
    rescale_sklyanin(params)  # raises on special λ
    a = sklyanin_a(params)
    names = SCALED_NAMES
    Y = list(poly_vars(names))
    g1, g2, _ = genscale(params, names)
    rep = {}
    c1 = _square_coeffs(g1, names)
    c2 = _square_coeffs(g2, names)
    rep["coefficient_sums_vanish"] = is_zero(sum(c1, coerce(0))) and is_zero(sum(c2, coerce(0)))
    # the scaled equations are the y-quadrics with y_μ = Y_μ/ρ_μ, up to a factor
    sk = rescale_sklyanin(params)
    q1 = [ONE / r for r in sk.rho_sq]
    q2 = [lam[i] * lam[i] / sk.rho_sq[i] for i in range(4)]
    rep["genscale_matches_quadrics"] = _proportional(c1, q1) and _proportional(c2, q2)
    # eliminate Y3² and compare with a2 B1 − a1 B2
    elim = g1 * (lam[3] * lam[3]) - g2
    B = [Y[0] * Y[0] - Y[k] * Y[k] for k in (1, 2, 3)]
    target = B[0] * a[1] - B[1] * a[0]
    rep["ratio_B1_B2_equals_a1_a2"] = _poly_proportional(elim, target)
    # M
    m2 = mat_product(M_MATRIX, M_MATRIX)
    rep["M_squared_identity"] = all(m2[i][j] == (ONE if i == j else 0) for i in range(4) for j in range(4))
    rep["degenerate_M_singular"] = is_zero(det([list(r) for r in M_DEGENERATE]))
    v = list(poly_vars(("v0", "v1", "v2", "v3")))
    Mv = mat_apply(M_MATRIX, v)
    rep["M_maps_B_to_a"] = all(
        Mv[0] * Mv[0] - Mv[k] * Mv[k] == (v[k] + v[0]) * (v[l] + v[m]) for k, l, m in CYCLIC)
    rep["N_M_rows_display"] = n_m_display_holds(M_MATRIX)
    rep["N_M_rows_display_degenerate_M"] = n_m_display_holds(M_DEGENERATE)
    rep["ok"] = all(v for k, v in rep.items() if k not in ("degenerate_M_singular", "N_M_rows_display_degenerate_M"))
    return rep


def n_m_display_holds(m, names=SCALED_NAMES):
    """After Y0 → −Y0 the first rows of N(Z)·M are the λ-row display, λ = M·Y."""
    Y = list(poly_vars(names))
    N = n_matrix((0, 0, 0), names)[:3]
    N_flip = [[e.subs(_i0(Y), names) for e in row] for row in N]
    prod = [[sum((row[k] * m[k][j] for k in range(4)), _const(0, names)) for j in range(4)] for row in N_flip]
    lam = mat_apply(m, Y)
    signs = ((1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))
    want = [[lam[j] * s for j, s in enumerate(row)] for row in signs]
    return all(prod[i][j] == want[i][j] for i in range(3) for j in range(4))


def _proportional(u, v):
    pivot = next((i for i in range(len(u)) if not is_zero(v[i])), None)
    if pivot is None:
        return all(is_zero(x) for x in u)
    r = u[pivot] / v[pivot]
    return all(u[i] == r * v[i] for i in range(len(u)))


def _poly_proportional(p, q):
    keys = set(p.terms) | set(q.terms)
    if set(p.terms) != set(q.terms):
        return False
    ks = sorted(keys)
    return _proportional([p.terms[k] for k in ks], [q.terms[k] for k in ks])


# ----------------------------------------------------------------------
# central quadratic forms
# ----------------------------------------------------------------------

def central_quadratic_form(a, k):
    """Diagonal coefficients of the commutative image of Q_k."""
    a = [coerce(x) for x in a]
    _, l, m = CYCLIC[k - 1]
    q = [coerce(0)] * 4
    q[0] = a[m - 1] - a[l - 1]
    q[k] = a[m - 1] - a[l - 1]
    q[m] = a[k - 1]
    q[l] = -a[k - 1]
    return q


def _bilinear(rel: FreeElt, u, v):
    total = u[0] * 0
    for (i, j), c in rel.terms.items():
        total = total + u[i] * v[j] * c
    return total


def central_form_check(params, k, omegas=None, cross_check=True, budget=None):
    """Verify the twisted identity for Q_k on E × E, and Q_k(Z, σZ) on E."""
    a = sklyanin_a(params)
    q = central_quadratic_form(a, k)
    names = SCALED_NAMES + PRIMED_NAMES
    Z = list(poly_vars(names))[:4]
    W = list(poly_vars(names))[4:]
    s_single = sigma_N(SCALED_NAMES)
    s_inv_single = sigma_inverse_N(SCALED_NAMES)
    pos_Y = list(range(4))
    pos_W = list(range(4, 8))
    sW = [p.rename(names, pos_W) for p in s_single]
    siZ = [p.rename(names, pos_Y) for p in s_inv_single]

    def Q(u, v):
        return sum((u[i] * v[i] * q[i] for i in range(4) if not is_zero(q[i])), u[0] * 0)

    if omegas is None:
        omegas = skly_relations(a)
    ss = SquareSubstitution.double(a, names)
    gb = None
    if cross_check:
        gy = scaled_curve(a, SCALED_NAMES)
        gens = [g.rename(names, pos_Y) for g in gy] + [g.rename(names, pos_W) for g in gy]
        gb = groebner_basis(gens, budget=budget)
    QsW = Q(sW, siZ)
    QZW = Q(Z, W)
    results = []
    for idx, om in enumerate(omegas):
        F = _bilinear(om, Z, W) * QsW + _bilinear(om, sW, siZ) * QZW
        nf = ss.reduce(F)
        entry = {"omega": idx, "zero": nf.is_zero()}
        if gb is not None:
            entry["groebner_zero"] = gb.reduce(F).is_zero()
        if not nf.is_zero():
            entry["normal_form_terms"] = len(nf.terms)
        results.append(entry)
    # Q(Z, σ(Z)) on the curve
    ss1 = SquareSubstitution.single(a)
    Y = list(poly_vars(SCALED_NAMES))
    qzs = Q(Y, s_single)
    q_sigma_zero = ss1.reduce(qzs).is_zero()
    ok = all(r["zero"] for r in results) and q_sigma_zero
    if cross_check:
        ok = ok and all(r["groebner_zero"] == r["zero"] for r in results)
    return {"k": k, "omegas": results, "Q_Z_sigmaZ_zero": q_sigma_zero, "ok": ok}


def central_form_at_special(params, k):
    """Evaluate the identity at Z = P_μ with Z' on the curve; reported, not asserted."""
    a = sklyanin_a(params)
    q = central_quadratic_form(a, k)
    names = SCALED_NAMES
    W = list(poly_vars(names))
    s = sigma_N(names)
    ss = SquareSubstitution.single(a, names)
    omegas = skly_relations(a)
    out = []
    for mu in range(4):
        P = [coerce(1 if i == mu else 0) for i in range(4)]
        Pc = [_const(c, names) for c in P]
        try:
            siP = sigma_apply(a, [-P[0], P[1], P[2], P[3]]).coords
            siP = [_const(-siP[0], names)] + [_const(c, names) for c in siP[1:]]
        except SpecialCaseError:
            out.append({"point": f"P{mu}", "status": "sigma undefined"})
            continue
        QsP = sum((s[i] * siP[i] * q[i] for i in range(4)), _const(0, names))
        QPW = sum((Pc[i] * W[i] * q[i] for i in range(4)), _const(0, names))
        zero = [ss.reduce(_bilinear(om, Pc, W) * QsP + _bilinear(om, s, siP) * QPW).is_zero()
                for om in omegas]
        out.append({"point": f"P{mu}", "vanishes": zero})
    return out


# ----------------------------------------------------------------------
# degenerate cases
# ----------------------------------------------------------------------

def gauss_sqrt(z):
    """Exact square root in Q(i), or None."""
    z = coerce(z)
    if not isinstance(z, GaussRat):
        return None
    a, b = z.re, z.im
    n2 = a * a + b * b
    r = _rat_sqrt(n2)
    if r is None:
        return None
    for x2 in ((a + r) / 2, (a - r) / 2):
        x = _rat_sqrt(x2)
        if x is None:
            continue
        if x == 0:
            y = _rat_sqrt(-a)
            if y is not None and y * y == -a and b == 0:
                return GaussRat(0, y)
            continue
        y = b / (2 * x)
        cand = GaussRat(x, y)
        if cand * cand == z:
            return cand
    return None


def _rat_sqrt(q):
    q = mpq(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if is_square(n) and is_square(d):
        return mpq(isqrt(n), isqrt(d))
    return None


def _split_binary_quadric(coeffs, names=Y_NAMES):
    """α y_i² + β y_j² = α (y_i − r y_j)(y_i + r y_j) when −β/α is a square in Q(i)."""
    (i, alpha), (j, beta) = coeffs
    r = gauss_sqrt(-beta / alpha)
    if r is None:
        return None
    ys = poly_vars(names)
    return [ys[i] - ys[j] * r, ys[i] + ys[j] * r]


def classify_variety(params, samples=None):
    """Components of E and rank data of the relation matrix for specialized λ."""
    lam = _lam(params)
    tag = classify_case(params)
    mat = char_matrix(params)
    q1, q2 = curve_quadrics(params)
    sq = [l * l for l in lam]
    rep = {"case": tag.name, "partition": [list(c) for c in tag.partition]}
    # rank of the relation matrix over the function field
    ech = SparseEchelon()
    for row in mat:
        vec = {}
        for j, e in enumerate(row):
            for ex, c in e.terms.items():
                vec[(j, ex)] = c
        ech.add(vec)
    rep["independent_rows"] = len(ech)
    name = tag.name
    if name == "generic":
        rep["components"] = ["elliptic curve q1 = q2 = 0", "P0", "P1", "P2", "P3"]
    elif name == "commutative":
        minors = [det(submatrix(mat, rows)) for rows in ROW_QUADRUPLES]
        rep["all_minors_vanish"] = all(m.is_zero() for m in minors)
        rep["components"] = ["projective space"]
    elif name == "three-relations":
        rep["components"] = ["projective space (rank ≤ 3 everywhere)"]
        on = samples or _quadric_samples()
        rep["rank_on_sum_sq_zero"] = sorted({matrix_rank_at(mat, p) for p in on})
        rep["rank_off_quadric"] = matrix_rank_at(mat, (1, 2, 3, 5))
    elif name == "two-conics":
        pair = next(c for c in tag.partition if len(c) == 2)
        others = [i for i in range(4) if i not in pair]
        split = q2 - q1 * sq[pair[0]]
        rep["split_quadric"] = str(split)
        lin = _split_binary_quadric([(i, sq[i] - sq[pair[0]]) for i in others])
        rep["split_factors"] = None if lin is None else [str(f) for f in lin]
        rep["components"] = [
            "conic in the first plane of the split quadric",
            "conic in the second plane of the split quadric",
            f"line P{pair[0]}P{pair[1]}",
            "P0", "P1", "P2", "P3",
        ]
    elif name == "plane":
        single = next(c for c in tag.partition if len(c) == 1)[0]
        triple = [i for i in range(4) if i != single]
        split = q2 - q1 * sq[triple[0]]
        rep["split_quadric"] = str(split)
        rep["components"] = [
            f"conic y{single} = 0, Σy² = 0",
            "plane through " + ", ".join(f"P{i}" for i in triple),
            f"P{single}",
        ]
        if all(lam[i] == lam[triple[0]] for i in triple):
            pts = samples or _plane_samples(single, lam)
            rep["sigma_identity_on_plane"] = all(
                _kernel_is_point(mat, p) for p in pts)
    else:  # paired or coarse
        c1, c2 = tag.partition
        rep["split_quadrics"] = [str(q2 - q1 * sq[c1[0]]), str(q2 - q1 * sq[c2[0]])]
        lines = []
        f1 = _split_binary_quadric([(i, ONE) for i in c2])  # Σ over the other class
        f2 = _split_binary_quadric([(i, ONE) for i in c1])
        if f1 and f2:
            for u in f1:
                for v in f2:
                    lines.append(f"{u} = {v} = 0")
        rep["components"] = lines + ["P0", "P1", "P2", "P3"]
        pts = samples or _line_samples(c1, c2)
        ranks = [matrix_rank_at(mat, p) for p in pts]
        rep["rank_profile_on_lines"] = sorted(set(ranks))
        rep["coarse_points"] = sum(1 for r in ranks if r <= 2)
    return rep


def _kernel_is_point(mat, p):
    kern = nullspace([[e.evaluate(p) for e in row] for row in mat])
    return len(kern) == 1 and ProjPoint(tuple(kern[0])) == ProjPoint(tuple(coerce(x) for x in p))


def _quadric_samples():
    i = GaussRat(0, 1)
    return [(1, i, 0, 0), (0, 1, 0, i), (3, 4, 5 * i, 0), (2, 1, 2, 3 * i), (1, 2, 2, 3 * i),
            (2, 3, 6, 7 * i), (i, 1, 1, i), (0, 3, 4, 5 * i)]


def _plane_samples(single, lam):
    pts = []
    for v in ((1, 2, 3), (2, -1, 5), (3, 4, 0)):
        p = [0, 0, 0, 0]
        it = iter(v)
        for i in range(4):
            if i != single:
                p[i] = next(it)
        if any(p):
            pts.append(tuple(p))
    return pts


def _line_samples(c1, c2):
    i = GaussRat(0, 1)
    pts = []
    for s, t in ((1, 2), (3, 1), (2, 5), (1, 0), (0, 1)):
        for e1 in (1, -1):
            for e2 in (1, -1):
                p = [coerce(0)] * 4
                p[c1[0]] = coerce(s)
                p[c1[1]] = i * s * e1
                p[c2[0]] = coerce(t)
                p[c2[1]] = i * t * e2
                pts.append(tuple(p))
    return pts
