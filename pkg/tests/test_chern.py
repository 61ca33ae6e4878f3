import pytest

from ncsphere.chern import (
    STAR_ALPHABET,
    block_diag,
    ch0,
    ch1,
    clifford_checks,
    cond_expression,
    fuzzy_casimir,
    generic_unitary,
    ocirc,
    spin_matrices,
    substitute_star,
    two_sphere_rigidity,
)
from ncsphere.exact import ONE, GaussRat, I
from ncsphere.freealg import FreeElt, MatFree, mat_mul, pauli_matrices
from ncsphere.sphere import GENERIC_SAMPLES, PRESETS


def test_ch1_of_generic_unitary_is_cond():
    U, Us = generic_unitary()
    assert ch1(U, Us).value == cond_expression()


def test_ch1_is_antisymmetric_under_flip():
    U, Us = generic_unitary()
    c = ch1(U, Us).value
    assert c.flip() == -c


@pytest.mark.parametrize("p", GENERIC_SAMPLES[:2] + (PRESETS["commutative"],), ids=str)
def test_ch1_vanishes_when_star_is_lambda_z(p):
    U, Us = generic_unitary()
    assert substitute_star(ch1(U, Us).value, p.lam).is_zero()


def test_ch1_does_not_vanish_for_generic_star():
    # control: with independent z* the character is nonzero
    assert not cond_expression().is_zero()


def test_ch1_invariant_under_constant_unitaries():
    U, Us = generic_unitary()
    alph = STAR_ALPHABET
    h = GaussRat(3, 4) / 5  # unit complex phase
    A = MatFree.constant([[h, 0 * ONE], [0 * ONE, h.conjugate()]], alph)
    As = MatFree.constant([[h.conjugate(), 0 * ONE], [0 * ONE, h]], alph)
    s = MatFree.constant(pauli_matrices()[1], alph)
    U2 = mat_mul(mat_mul(A, U), s)
    Us2 = mat_mul(mat_mul(s, Us), As)
    assert ch1(U2, Us2).value == ch1(U, Us).value


def test_ch1_additive_on_block_sums():
    U, Us = generic_unitary()
    big = ch1(block_diag(U, U), block_diag(Us, Us)).value
    assert big == ch1(U, Us).value * 2


def test_ch0_is_the_trace():
    alph = STAR_ALPHABET
    s = MatFree.constant(pauli_matrices()[3], alph)
    assert ch0(s).value.is_zero()
    assert ch0(MatFree.identity(3, alph)).value == FreeElt.scalar(3, alph)


def test_ocirc_dimension_checks():
    U, Us = generic_unitary()
    with pytest.raises(ValueError):
        ocirc(U, block_diag(U, U))


def test_two_sphere_rigidity():
    rep = two_sphere_rigidity()
    assert rep["same_span"]
    assert all(not e.is_zero() for e in rep["expected"])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fuzzy_casimir(n):
    rep = fuzzy_casimir(n)
    assert rep["casimir_holds"] and rep["su2_relations"] and rep["hermitian"]


def test_spin_matrix_limits():
    with pytest.raises(ValueError):
        spin_matrices(4)
    assert spin_matrices(2)[0][0][1] == ONE and spin_matrices(2)[1][0][1] == -I


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_clifford_models(dim):
    rep = clifford_checks(dim)
    assert rep["anticommute"] and rep["s_squared"] and rep["unitary"]
