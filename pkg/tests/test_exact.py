from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncsphere.exact import (
    GaussRat,
    LaurentPoly,
    ParamScalar,
    coerce,
    gauss_to_json,
    lambda_vars,
    parse_gauss,
    star,
    unit_circle_from_pythagorean,
)

rats = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)
gauss = st.builds(GaussRat, rats, rats)
nonzero = gauss.filter(lambda z: not z.is_zero())


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == GaussRat(0)


@given(nonzero)
def test_inverse(a):
    assert a * a.inverse() == GaussRat(1)
    assert (1 / a) * a == 1


@given(gauss, gauss)
def test_conjugation_is_an_involutive_automorphism(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.norm() == (a * a.conjugate()).re


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_pythagorean_points_have_norm_one(p, q):
    if p == 0 and q == 0:
        with pytest.raises(ValueError):
            unit_circle_from_pythagorean(p, q)
        return
    z = unit_circle_from_pythagorean(p, q)
    assert z.norm() == 1


def test_pythagorean_examples():
    assert unit_circle_from_pythagorean(2, 1) == GaussRat(Fraction(3, 5), Fraction(4, 5))
    assert unit_circle_from_pythagorean(1, 0) == 1


@given(gauss)
def test_json_round_trip(a):
    assert parse_gauss(gauss_to_json(a)) == a


def test_parse_gauss_forms():
    assert parse_gauss(3) == 3
    assert parse_gauss("-2/6") == GaussRat(Fraction(-1, 3))
    assert parse_gauss({"re": "1/2", "im": "-1"}) == GaussRat(Fraction(1, 2), -1)
    with pytest.raises(ValueError):
        parse_gauss({"re": 1, "imag": 2})
    with pytest.raises(TypeError):
        parse_gauss(True)
    with pytest.raises(TypeError):
        coerce(1.5 + 0j)


def test_str_forms():
    assert str(GaussRat(0, 1)) == "i"
    assert str(GaussRat(Fraction(1, 2), -2)) == "1/2-2i"
    assert str(GaussRat(-3)) == "-3"


def test_laurent_star_inverts_parameters():
    l0, l1 = (LaurentPoly.var(i) for i in (0, 1))
    p = l0 * l1 * GaussRat(0, 1) + l0
    s = p.star()
    assert s == LaurentPoly.var(0, power=-1) * LaurentPoly.var(1, power=-1) * GaussRat(0, -1) + LaurentPoly.var(0, power=-1)
    assert s.star() == p


def test_param_scalar_arithmetic():
    lam = lambda_vars()
    x = (lam[0] + lam[1]) / (lam[2] - lam[3])
    y = x * (lam[2] - lam[3])
    assert y == lam[0] + lam[1]
    assert (x - x).is_zero()
    assert x * x.inverse() == 1
    # star: λ -> 1/λ, applied twice is the identity
    assert star(star(x)) == x


def test_param_scalar_evaluate_matches_numeric():
    lam = lambda_vars()
    vals = [GaussRat(1), unit_circle_from_pythagorean(2, 1), unit_circle_from_pythagorean(3, 2),
            unit_circle_from_pythagorean(4, 1)]
    x = (lam[0] * lam[3] + lam[1] * lam[2]) / (lam[1] - lam[2])
    want = (vals[0] * vals[3] + vals[1] * vals[2]) / (vals[1] - vals[2])
    assert x.evaluate(vals) == want


def test_param_scalar_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        ParamScalar(1, LaurentPoly())


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(1, 9), st.integers(0, 9)), min_size=4, max_size=4))
def test_star_on_unit_circle_is_inverse(pairs):
    for p, q in pairs:
        z = unit_circle_from_pythagorean(p, q)
        assert star(z) == z.inverse()
