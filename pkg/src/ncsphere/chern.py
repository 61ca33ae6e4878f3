"""Low-degree Chern characters and the matrix models around them.

ch0(s) is the trace of s.  ch1(U, U*) is ½ Tr(U ⊚ U* − U* ⊚ U), where ⊚
multiplies matrices while concatenating tensor factors of the entries.
The ½ makes the result equal to Σ z_μ ⊗ z*_μ − Σ z*_μ ⊗ z_μ for
U = z0 𝕀 + i Σ z_j σ_j.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import I, ONE, ZERO, GaussRat, coerce
from .freealg import (
    Alphabet,
    FreeElt,
    MatFree,
    TensorElt,
    clifford_generators,
    mat_mul,
    pauli_matrices,
)
from .linalg import row_space_equal

__all__ = [
    "MatTensor",
    "ChernResult",
    "ocirc",
    "ch0",
    "ch1",
    "STAR_ALPHABET",
    "generic_unitary",
    "cond_expression",
    "substitute_star",
    "two_sphere_rigidity",
    "fuzzy_casimir",
    "spin_matrices",
    "clifford_checks",
    "block_diag",
]

# z0..z3 together with independent letters for their adjoints
STAR_ALPHABET = Alphabet(("z0", "z1", "z2", "z3", "z0*", "z1*", "z2*", "z3*"))


class MatTensor:
    """n×n matrix whose entries are k-fold tensors."""

    def __init__(self, rows, alphabet, k):
        self.rows = [list(r) for r in rows]
        self.alphabet = alphabet
        self.k = k
        if any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("MatTensor must be square")

    @property
    def n(self):
        return len(self.rows)

    @classmethod
    def from_matfree(cls, m: MatFree):
        rows = [[TensorElt.pure(e) for e in row] for row in m.rows]
        return cls(rows, m.alphabet, 1)

    def trace(self) -> TensorElt:
        out = TensorElt.zero(self.alphabet, self.k)
        for i in range(self.n):
            out = out + self.rows[i][i]
        return out

    def __sub__(self, other):
        return MatTensor([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.alphabet, self.k)

    def __add__(self, other):
        return MatTensor([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.alphabet, self.k)

    def __eq__(self, other):
        return (isinstance(other, MatTensor) and self.n == other.n and self.k == other.k
                and all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)))

    __hash__ = None


def _as_mt(x):
    return MatTensor.from_matfree(x) if isinstance(x, MatFree) else x


def ocirc(a, b) -> MatTensor:
    """(a ⊚ b)_ij = Σ_k a_ik ⊗ b_kj."""
    a, b = _as_mt(a), _as_mt(b)
    if a.n != b.n:
        raise ValueError(f"matrix dimension mismatch: {a.n} vs {b.n}")
    if a.alphabet != b.alphabet:
        raise ValueError("matrices over different alphabets")
    k = a.k + b.k
    if k > 4:
        raise ValueError("tensor rank above 4 is not supported")
    rows = []
    for i in range(a.n):
        row = []
        for j in range(a.n):
            acc = TensorElt.zero(a.alphabet, k)
            for m in range(a.n):
                x, y = a.rows[i][m], b.rows[m][j]
                if x.terms and y.terms:
                    acc = acc + x.tensor(y)
            row.append(acc)
        rows.append(row)
    return MatTensor(rows, a.alphabet, k)


@dataclass(frozen=True)
class ChernResult:
    value: object  # FreeElt for ch0, TensorElt for ch1
    degree: int

    def is_zero(self):
        return self.value.is_zero()


def ch0(s: MatFree) -> ChernResult:
    return ChernResult(s.trace(), 0)


def ch1(U: MatFree, Ustar: MatFree) -> ChernResult:
    if U.n != Ustar.n:
        raise ValueError("U and U* must have the same size")
    val = (ocirc(U, Ustar) - ocirc(Ustar, U)).trace() * (GaussRat(1) / 2)
    return ChernResult(val, 1)


def generic_unitary(alphabet=STAR_ALPHABET):
    """U = z0 𝕀 + i Σ z_j σ_j and U* = z0* 𝕀 − i Σ z_j* σ_j with independent z*."""
    z = [FreeElt.gen(i, alphabet) for i in range(8)]
    p = pauli_matrices()
    U = MatFree.constant(p[0], alphabet) * z[0]
    Us = MatFree.constant(p[0], alphabet) * z[4]
    for j in (1, 2, 3):
        s = MatFree.constant(p[j], alphabet)
        U = U + s * (z[j] * I)
        Us = Us - s * (z[4 + j] * I)
    return U, Us


def cond_expression(alphabet=STAR_ALPHABET) -> TensorElt:
    """Σ z_μ ⊗ z*_μ − Σ z*_μ ⊗ z_μ."""
    z = [FreeElt.gen(i, alphabet) for i in range(8)]
    out = TensorElt.zero(alphabet, 2)
    for mu in range(4):
        out = out + TensorElt.pure(z[mu], z[4 + mu]) - TensorElt.pure(z[4 + mu], z[mu])
    return out


def substitute_star(t: TensorElt, lam) -> TensorElt:
    """Replace every z*_μ by λ_μ z_μ in each tensor factor."""
    alphabet = t.alphabet
    images = [FreeElt.gen(i, alphabet) for i in range(4)]
    images += [FreeElt.gen(i, alphabet) * coerce(lam[i]) for i in range(4)]

    def f(word):
        out = FreeElt.scalar(1, alphabet)
        for letter in word:
            out = out * images[letter]
        return out

    return t.map_factors(f)


def block_diag(a: MatFree, b: MatFree) -> MatFree:
    if a.alphabet != b.alphabet:
        raise ValueError("matrices over different alphabets")
    zero = FreeElt.scalar(0, a.alphabet)
    n, m = a.n, b.n
    rows = [list(a.rows[i]) + [zero] * m for i in range(n)]
    rows += [[zero] * n + list(b.rows[i]) for i in range(m)]
    return MatFree(rows, a.alphabet)


def two_sphere_rigidity():
    """Expand s² − 𝕀 for s = [[x, y], [y*, −x]] over free x, y, y*."""
    alph = Alphabet(("x", "y", "y*"))
    x, y, ys = (FreeElt.gen(i, alph) for i in range(3))
    s = MatFree([[x, y], [ys, -x]], alph)
    d = mat_mul(s, s) - MatFree.identity(2, alph)
    entries = {"11": d.rows[0][0], "12": d.rows[0][1], "21": d.rows[1][0], "22": d.rows[1][1]}
    derived = {
        "xy-yx": entries["12"],
        "y*x-xy*": entries["21"],
        "yy*-y*y": entries["11"] - entries["22"],
        "x2+yy*-1": entries["11"],
    }
    expected = [x * y - y * x, ys * x - x * ys, y * ys - ys * y, x * x + y * ys - 1]
    same_span = row_space_equal([e.to_vector() for e in entries.values()],
                                [e.to_vector() for e in expected])
    return {"entries": entries, "derived": derived, "expected": expected, "same_span": same_span}


def spin_matrices(n: int):
    """Constant matrices S_i = 2 J_i for the n-dimensional representation, n ≤ 3."""
    if n == 1:
        return [[[ZERO]]] * 3
    if n == 2:
        return [m for m in pauli_matrices()[1:]]
    if n == 3:
        out = []
        for i in range(3):
            m = [[ZERO] * 3 for _ in range(3)]
            for j in range(3):
                for k in range(3):
                    e = _levi(i, j, k)
                    if e:
                        m[j][k] = I * (-2 * e)
            out.append(m)
        return out
    raise ValueError(f"exact spin matrices are provided for n = 1, 2, 3, not {n}")


def _levi(i, j, k):
    if len({i, j, k}) < 3:
        return 0
    return 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


def fuzzy_casimir(n: int):
    """z_i = S_i z0: check Σ z_i² = (n² − 1) z0² 𝕀 and [S_i, S_j] = 2i ε_ijk S_k."""
    S = spin_matrices(n)
    alph = Alphabet(("z0",))
    z0 = FreeElt.gen(0, alph)
    zs = [MatFree.constant(s, alph) * z0 for s in S]
    total = MatFree.identity(n, alph, ZERO)
    for z in zs:
        total = total + mat_mul(z, z)
    target = MatFree.identity(n, alph) * (z0 * z0 * (n * n - 1))
    consts = [MatFree.constant(s, alph) for s in S]
    su2 = True
    for i in range(3):
        for j in range(3):
            lhs = mat_mul(consts[i], consts[j]) - mat_mul(consts[j], consts[i])
            rhs = MatFree.identity(n, alph, ZERO)
            for k in range(3):
                e = _levi(i, j, k)
                if e:
                    rhs = rhs + consts[k] * (I * (2 * e))
            su2 = su2 and lhs == rhs
    hermitian = all(s[j][k] == s[k][j].conjugate() for s in S for j in range(n) for k in range(n))
    return {"n": n, "casimir_holds": total == target, "su2_relations": su2,
            "hermitian": hermitian, "sum": total}


def clifford_checks(dim: int):
    """s = Σ x_j γ_j squares to Σ x_j²; U = x_d + i Σ x_j γ_j has UU* = U*U = Σ x²."""
    names = tuple(f"x{j}" for j in range(dim + 1))
    alph = Alphabet(names, frozenset(range(dim + 1)))  # commuting coordinates
    gam = clifford_generators(dim, alph)
    x = [FreeElt.gen(j, alph) for j in range(dim + 1)]
    n = gam[0].n
    anti = all(
        mat_mul(gam[a], gam[b]) + mat_mul(gam[b], gam[a])
        == MatFree.identity(n, alph, 2 * ONE if a == b else ZERO)
        for a in range(dim) for b in range(dim)
    )
    s = MatFree.identity(n, alph, ZERO)
    for j in range(dim):
        s = s + gam[j] * x[j]
    sq = FreeElt.scalar(0, alph)
    for j in range(dim):
        sq = sq + x[j] * x[j]
    s_ok = mat_mul(s, s) == MatFree.identity(n, alph) * sq
    U = MatFree.identity(n, alph) * x[dim] + s * I
    Us = MatFree.identity(n, alph) * x[dim] - s * I
    full = sq + x[dim] * x[dim]
    target = MatFree.identity(n, alph) * full
    u_ok = mat_mul(U, Us) == target and mat_mul(Us, U) == target
    return {"dim": dim, "anticommute": anti, "s_squared": s_ok, "unitary": u_ok}
