"""Free associative algebra, tensor elements and small matrices over it.

Words are tuples of letter indices into an :class:`Alphabet`.  Letters
flagged as central are kept sorted at the front of every word, which is
how adjoined central symbols (the suspension coordinate ``x``) commute
without extra relations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import I, ONE, ZERO, GaussRat, coerce, is_zero

__all__ = [
    "Alphabet",
    "FreeElt",
    "TensorElt",
    "MatFree",
    "Z_ALPHABET",
    "SCALED_ALPHABET",
    "word_key",
    "pauli_matrices",
    "pauli_expand",
    "pauli_reconstruct",
    "clifford_generators",
    "mat_mul",
    "free_mul",
    "adjoint",
    "commutator",
    "anticommutator",
]


@dataclass(frozen=True)
class Alphabet:
    names: tuple
    central: frozenset = frozenset()

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def normalize(self, word: tuple) -> tuple:
        if not self.central or not any(w in self.central for w in word):
            return word
        c = sorted(w for w in word if w in self.central)
        return tuple(c) + tuple(w for w in word if w not in self.central)

    def extend(self, name: str, central: bool = False) -> Alphabet:
        if name in self.names:
            raise ValueError(f"letter {name!r} already in alphabet")
        cen = set(self.central)
        if central:
            cen.add(len(self.names))
        return Alphabet(self.names + (name,), frozenset(cen))

    def render_word(self, word: tuple) -> str:
        return ".".join(self.names[w] for w in word)


Z_ALPHABET = Alphabet(("z0", "z1", "z2", "z3"))
SCALED_ALPHABET = Alphabet(("Z0", "Z1", "Z2", "Z3"))


def word_key(word: tuple):
    """Canonical term order: degree, then lexicographic word."""
    return (len(word), word)


class FreeElt:
    """Finite linear combination of words with exact scalar coefficients."""

    __slots__ = ("terms", "alphabet")

    def __init__(self, terms=None, alphabet: Alphabet = Z_ALPHABET):
        self.alphabet = alphabet
        out = {}
        if terms:
            for w, c in terms.items():
                w = alphabet.normalize(tuple(w))
                c = coerce(c)
                v = out.get(w)
                v = c if v is None else v + c
                if is_zero(v):
                    out.pop(w, None)
                else:
                    out[w] = v
        self.terms = out

    @classmethod
    def _make(cls, terms, alphabet):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.alphabet = alphabet
        return obj

    @classmethod
    def gen(cls, i: int, alphabet: Alphabet = Z_ALPHABET):
        return cls._make({(i,): ONE}, alphabet)

    @classmethod
    def scalar(cls, c, alphabet: Alphabet = Z_ALPHABET):
        c = coerce(c)
        return cls._make({} if is_zero(c) else {(): c}, alphabet)

    @classmethod
    def word(cls, w, alphabet: Alphabet = Z_ALPHABET, c=ONE):
        return cls({tuple(w): c}, alphabet)

    # -- ring structure -------------------------------------------------
    def _lift(self, other):
        if isinstance(other, FreeElt):
            if other.alphabet != self.alphabet:
                raise ValueError("free algebra elements over different alphabets")
            return other
        return FreeElt.scalar(other, self.alphabet)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if is_zero(v):
                    del out[w]
                else:
                    out[w] = v
        return FreeElt._make(out, self.alphabet)

    __radd__ = __add__

    def __neg__(self):
        return FreeElt._make({w: -c for w, c in self.terms.items()}, self.alphabet)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, FreeElt):
            c = coerce(other)
            if is_zero(c):
                return FreeElt._make({}, self.alphabet)
            return FreeElt._make({w: v * c for w, v in self.terms.items()}, self.alphabet)
        other = self._lift(other)
        norm = self.alphabet.normalize if self.alphabet.central else None
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                if norm is not None:
                    w = norm(w)
                v = out.get(w)
                out[w] = c1 * c2 if v is None else v + c1 * c2
        return FreeElt._make({w: c for w, c in out.items() if not is_zero(c)}, self.alphabet)

    def __rmul__(self, other):
        # scalar * elt; scalars commute with everything
        return self.__mul__(other)

    def __pow__(self, n: int):
        out = FreeElt.scalar(1, self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, FreeElt):
            if other.alphabet != self.alphabet:
                return False
            return (self - other).is_zero()
        try:
            return (self - other).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.alphabet)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- structure ------------------------------------------------------
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def component(self, d: int) -> FreeElt:
        return FreeElt._make({w: c for w, c in self.terms.items() if len(w) == d}, self.alphabet)

    def coefficient(self, word) -> object:
        return self.terms.get(tuple(word), ZERO)

    def map_coeffs(self, f) -> FreeElt:
        out = {}
        for w, c in self.terms.items():
            v = coerce(f(c))
            if not is_zero(v):
                out[w] = v
        return FreeElt._make(out, self.alphabet)

    def reverse(self) -> FreeElt:
        """Image in the opposite algebra (every word reversed)."""
        return FreeElt({w[::-1]: c for w, c in self.terms.items()}, self.alphabet)

    def substitute(self, images, alphabet: Alphabet | None = None) -> FreeElt:
        """Algebra map sending letter i to ``images[i]`` (FreeElts)."""
        alphabet = alphabet or images[0].alphabet
        total = FreeElt._make({}, alphabet)
        for w, c in self.terms.items():
            t = FreeElt.scalar(c, alphabet)
            for letter in w:
                t = t * images[letter]
            total = total + t
        return total

    def relabel(self, alphabet: Alphabet) -> FreeElt:
        """Same words, read in another alphabet of the same size (e.g. z -> Z)."""
        if len(alphabet) < len(self.alphabet):
            raise ValueError("target alphabet too small")
        return FreeElt(dict(self.terms), alphabet)

    def to_vector(self) -> dict:
        return dict(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            ws = self.alphabet.render_word(w) if w else "1"
            parts.append(f"({c})·{ws}")
        return " + ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"FreeElt({self.render()})"


def free_mul(a: FreeElt, b: FreeElt) -> FreeElt:
    return a * b


def commutator(a: FreeElt, b: FreeElt) -> FreeElt:
    return a * b - b * a


def anticommutator(a: FreeElt, b: FreeElt) -> FreeElt:
    return a * b + b * a


def adjoint(a: FreeElt, lam) -> FreeElt:
    """Anti-automorphism with ``z_mu* = lam_mu z_mu`` and starred coefficients."""
    out = {}
    for w, c in a.terms.items():
        coeff = c.star()
        for letter in w:
            coeff = coeff * lam[letter]
        out[w[::-1]] = coeff
    return FreeElt(out, a.alphabet)


# ----------------------------------------------------------------------
# k-fold tensors
# ----------------------------------------------------------------------


class TensorElt:
    """Element of A ⊗ ... ⊗ A, keyed by tuples of words."""

    __slots__ = ("terms", "alphabet", "k")

    def __init__(self, terms=None, alphabet: Alphabet = Z_ALPHABET, k: int = 2):
        if not 1 <= k <= 4:
            raise ValueError("tensor rank must be between 1 and 4")
        self.alphabet = alphabet
        self.k = k
        out = {}
        for key, c in (terms or {}).items():
            key = tuple(alphabet.normalize(tuple(w)) for w in key)
            if len(key) != k:
                raise ValueError("tensor key has wrong number of factors")
            c = coerce(c)
            v = out.get(key)
            v = c if v is None else v + c
            if is_zero(v):
                out.pop(key, None)
            else:
                out[key] = v
        self.terms = out

    @classmethod
    def pure(cls, *factors: FreeElt) -> TensorElt:
        alphabet = factors[0].alphabet
        terms = {(): ONE}
        for f in factors:
            nxt = {}
            for key, c in terms.items():
                for w, d in f.terms.items():
                    nk = key + (w,)
                    v = nxt.get(nk)
                    nxt[nk] = c * d if v is None else v + c * d
            terms = nxt
        return cls(terms, alphabet, len(factors))

    @classmethod
    def zero(cls, alphabet, k):
        return cls({}, alphabet, k)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if other.k != self.k or other.alphabet != self.alphabet:
            raise ValueError("incompatible tensors")
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key)
            v = c if v is None else v + c
            if is_zero(v):
                out.pop(key, None)
            else:
                out[key] = v
        return TensorElt(out, self.alphabet, self.k)

    __radd__ = __add__

    def __neg__(self):
        return TensorElt({key: -c for key, c in self.terms.items()}, self.alphabet, self.k)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElt):
            if other.k != self.k:
                raise ValueError("tensor ranks differ")
            out = {}
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    key = tuple(a + b for a, b in zip(k1, k2))
                    v = out.get(key)
                    out[key] = c1 * c2 if v is None else v + c1 * c2
            return TensorElt(out, self.alphabet, self.k)
        c = coerce(other)
        return TensorElt({key: v * c for key, v in self.terms.items()}, self.alphabet, self.k)

    def __rmul__(self, other):
        c = coerce(other)
        return TensorElt({key: v * c for key, v in self.terms.items()}, self.alphabet, self.k)

    def tensor(self, other: TensorElt) -> TensorElt:
        """Outer tensor product, concatenating the factor lists."""
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = c1 * c2
        return TensorElt(out, self.alphabet, self.k + other.k)

    def flip(self) -> TensorElt:
        if self.k != 2:
            raise ValueError("flip is defined on 2-fold tensors")
        return TensorElt({(b, a): c for (a, b), c in self.terms.items()}, self.alphabet, 2)

    def map_factors(self, f) -> TensorElt:
        """Apply a linear map on words (word -> FreeElt) to every factor."""
        out = TensorElt.zero(self.alphabet, self.k)
        for key, c in self.terms.items():
            t = TensorElt.pure(*[f(w) for w in key]) * c
            out = out + t
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElt):
            return NotImplemented
        return self.k == other.k and (self - other).is_zero()

    def __hash__(self):
        return hash((self.alphabet, self.k))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda t: tuple(word_key(w) for w in t)):
            ws = " ⊗ ".join(self.alphabet.render_word(w) if w else "1" for w in key)
            parts.append(f"({self.terms[key]})·{ws}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorElt({self.render()})"


# ----------------------------------------------------------------------
# matrices with free-algebra entries
# ----------------------------------------------------------------------


class MatFree:
    """Square matrix of FreeElt entries (n = 1..4)."""

    __slots__ = ("rows", "alphabet")

    def __init__(self, rows, alphabet: Alphabet = Z_ALPHABET):
        self.alphabet = alphabet
        n = len(rows)
        if not 1 <= n <= 4 or any(len(r) != n for r in rows):
            raise ValueError("MatFree must be square of size 1..4")
        self.rows = tuple(
            tuple(e if isinstance(e, FreeElt) else FreeElt.scalar(e, alphabet) for e in r)
            for r in rows
        )

    @property
    def n(self):
        return len(self.rows)

    @classmethod
    def identity(cls, n, alphabet=Z_ALPHABET, c=ONE):
        return cls([[c if i == j else ZERO for j in range(n)] for i in range(n)], alphabet)

    @classmethod
    def constant(cls, m, alphabet=Z_ALPHABET):
        return cls([[coerce(x) for x in r] for r in m], alphabet)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        _check_dims(self, other)
        return MatFree([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                       self.alphabet)

    def __sub__(self, other):
        _check_dims(self, other)
        return MatFree([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                       self.alphabet)

    def __neg__(self):
        return MatFree([[-a for a in r] for r in self.rows], self.alphabet)

    def __mul__(self, other):
        if isinstance(other, MatFree):
            return mat_mul(self, other)
        if isinstance(other, FreeElt):
            return MatFree([[a * other for a in r] for r in self.rows], self.alphabet)
        c = coerce(other)
        return MatFree([[a * c for a in r] for r in self.rows], self.alphabet)

    def __rmul__(self, other):
        if isinstance(other, FreeElt):
            return MatFree([[other * a for a in r] for r in self.rows], self.alphabet)
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, MatFree) or other.n != self.n:
            return NotImplemented
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash((self.alphabet, self.n))

    def trace(self) -> FreeElt:
        total = FreeElt.scalar(0, self.alphabet)
        for i in range(self.n):
            total = total + self.rows[i][i]
        return total

    def map_entries(self, f) -> MatFree:
        return MatFree([[f(a) for a in r] for r in self.rows], self.alphabet)

    def relabel(self, alphabet: Alphabet) -> MatFree:
        return MatFree([[a.relabel(alphabet) for a in r] for r in self.rows], alphabet)

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def __repr__(self):
        body = "; ".join(", ".join(a.render() for a in r) for r in self.rows)
        return f"MatFree[{body}]"


def _check_dims(a, b):
    if a.n != b.n:
        raise ValueError(f"matrix dimension mismatch: {a.n} vs {b.n}")
    if a.alphabet != b.alphabet:
        raise ValueError("matrices over different alphabets")


def mat_mul(a: MatFree, b: MatFree) -> MatFree:
    _check_dims(a, b)
    n = a.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = FreeElt.scalar(0, a.alphabet)
            for k in range(n):
                x, y = a.rows[i][k], b.rows[k][j]
                if x.terms and y.terms:
                    acc = acc + x * y
            row.append(acc)
        rows.append(row)
    return MatFree(rows, a.alphabet)


def pauli_matrices():
    """(𝕀, σ1, σ2, σ3) as nested lists of GaussRat."""
    o, z = ONE, ZERO
    return (
        [[o, z], [z, o]],
        [[z, o], [o, z]],
        [[z, -I], [I, z]],
        [[o, z], [z, -o]],
    )


def pauli_expand(m: MatFree):
    """Coefficients (c0, c1, c2, c3) with m = c0 𝕀 + Σ c_j σ_j."""
    if m.n != 2:
        raise ValueError("Pauli expansion needs a 2x2 matrix")
    half = GaussRat(1, 0) / 2
    a, b = m.rows[0]
    c, d = m.rows[1]
    return ((a + d) * half, (b + c) * half, (b - c) * (I * half), (a - d) * half)


def pauli_reconstruct(coeffs, alphabet=Z_ALPHABET) -> MatFree:
    out = MatFree.identity(2, alphabet, ZERO)
    for c, p in zip(coeffs, pauli_matrices()):
        out = out + MatFree.constant(p, alphabet) * c
    return out


def clifford_generators(dim: int, alphabet: Alphabet = Z_ALPHABET):
    """Pairwise anticommuting hermitian constant matrices squaring to 𝕀."""
    if dim == 1:
        return [MatFree.constant([[ONE]], alphabet)]
    if dim in (2, 3):
        return [MatFree.constant(p, alphabet) for p in pauli_matrices()[1: dim + 1]]
    raise ValueError(f"Clifford systems are provided for 1 to 3 generators, not {dim}")


def parse_free(text: str, alphabet: Alphabet = Z_ALPHABET) -> FreeElt:
    """Parse ``"z0.z1 - 3/2*z2.z3 + 1"`` (rational coefficients, '.'-joined words)."""
    from fractions import Fraction

    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty expression")
    out = FreeElt.scalar(0, alphabet)
    pos = 0
    while pos < len(src):
        sign = 1
        if src[pos] in "+-":
            sign = -1 if src[pos] == "-" else 1
            pos += 1
        end = pos
        while end < len(src) and src[end] not in "+-":
            end += 1
        term = src[pos:end]
        if not term:
            raise ValueError(f"missing term at position {pos}")
        coef, _, word = term.rpartition("*")
        if not coef and word and (word[0].isdigit()):
            coef, word = word, ""
        try:
            c = Fraction(coef) if coef else Fraction(1)
        except ValueError:
            raise ValueError(f"bad coefficient {coef!r} at position {pos}") from None
        letters = []
        for name in (word.split(".") if word else []):
            try:
                letters.append(alphabet.index(name))
            except ValueError:
                raise ValueError(f"unknown letter {name!r} at position {pos}") from None
        out = out + FreeElt({alphabet.normalize(tuple(letters)): coerce(c * sign)}, alphabet)
        pos = end
    return out
