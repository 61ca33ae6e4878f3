import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncsphere.exact import ONE, GaussRat, I
from ncsphere.freealg import (
    Z_ALPHABET,
    Alphabet,
    FreeElt,
    MatFree,
    TensorElt,
    adjoint,
    anticommutator,
    clifford_generators,
    commutator,
    mat_mul,
    parse_free,
    pauli_expand,
    pauli_matrices,
    pauli_reconstruct,
)
from ncsphere.linalg import det, in_span, nullspace, rank, row_space_equal
from ncsphere.sphere import GENERIC_SAMPLES

coef = st.builds(GaussRat, st.integers(-5, 5), st.integers(-5, 5))
word = st.lists(st.integers(0, 3), max_size=3).map(tuple)
elts = st.dictionaries(word, coef, max_size=4).map(lambda d: FreeElt(d, Z_ALPHABET))


@settings(max_examples=60)
@given(elts, elts, elts)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a - a == FreeElt.scalar(0)


@settings(max_examples=60)
@given(elts, elts)
def test_adjoint_is_involutive_anti_automorphism(a, b):
    lam = GENERIC_SAMPLES[1].lam
    assert adjoint(adjoint(a, lam), lam) == a
    assert adjoint(a * b, lam) == adjoint(b, lam) * adjoint(a, lam)


@given(elts, elts)
def test_bracket_symmetries(a, b):
    assert commutator(a, b) == -commutator(b, a)
    assert anticommutator(a, b) == anticommutator(b, a)
    assert commutator(a, b) + anticommutator(a, b) == a * b * 2


@given(elts)
def test_reverse_twice(a):
    assert a.reverse().reverse() == a


def test_words_and_rendering():
    z0, z1 = FreeElt.gen(0), FreeElt.gen(1)
    x = z0 * z1 * 2 - z1 * z0
    assert x.degree() == 2 and x.is_homogeneous()
    assert x.coefficient((0, 1)) == 2
    assert x.render() == "(2)·z0.z1 + (-1)·z1.z0"
    assert FreeElt.scalar(0).render() == "0"


def test_central_letters_commute_to_the_right():
    alph = Z_ALPHABET.extend("x", central=True)
    x = FreeElt.gen(4, alph)
    z0 = FreeElt.gen(0, alph)
    assert x * z0 == z0 * x


def test_parse_free():
    z = [FreeElt.gen(i) for i in range(4)]
    e = parse_free("z0.z1 - 3/2*z2.z3 + 1")
    assert e == z[0] * z[1] - z[2] * z[3] * (GaussRat(3) / 2) + 1
    assert parse_free("-z0") == -z[0]
    with pytest.raises(ValueError, match="unknown letter"):
        parse_free("z0.z9")
    with pytest.raises(ValueError, match="bad coefficient"):
        parse_free("x/y*z0")
    with pytest.raises(ValueError):
        parse_free("")


def test_pauli_round_trip():
    z = [FreeElt.gen(i) for i in range(4)]
    coeffs = [z[0], z[1] * z[2], z[3] - 1, z[0] * I]
    m = pauli_reconstruct(coeffs)
    assert list(pauli_expand(m)) == coeffs


def test_pauli_algebra():
    s = [MatFree.constant(p) for p in pauli_matrices()]
    ident = MatFree.identity(2)
    for j in (1, 2, 3):
        assert mat_mul(s[j], s[j]) == ident
    assert mat_mul(s[1], s[2]) == s[3] * I


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_clifford_generators_anticommute(dim):
    alph = Alphabet(("x",))
    g = clifford_generators(dim, alph)
    n = g[0].n
    for a in range(dim):
        for b in range(dim):
            want = MatFree.identity(n, alph, 2 * ONE if a == b else 0 * ONE)
            assert mat_mul(g[a], g[b]) + mat_mul(g[b], g[a]) == want


def test_clifford_dimension_limit():
    with pytest.raises(ValueError):
        clifford_generators(4)


def test_tensor_flip():
    z0, z1 = FreeElt.gen(0), FreeElt.gen(1)
    t = TensorElt.pure(z0, z1 * z1) - TensorElt.pure(z1, z0)
    assert t.flip().flip() == t
    assert t.flip() == TensorElt.pure(z1 * z1, z0) - TensorElt.pure(z0, z1)


def test_linear_algebra_helpers():
    vecs = [{0: ONE, 1: ONE}, {1: ONE, 2: ONE}, {0: ONE, 2: -ONE}]
    assert rank(vecs) == 2
    assert in_span({0: ONE, 2: -ONE}, vecs[:2])
    assert row_space_equal(vecs, vecs[:2])
    m = [[ONE, 2 * ONE], [3 * ONE, 4 * ONE]]
    assert det(m) == -2
    ns = nullspace([[ONE, ONE, ONE]])
    assert len(ns) == 2
