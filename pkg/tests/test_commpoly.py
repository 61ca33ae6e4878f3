import pytest

from ncsphere.budget import Budget, BudgetExceeded
from ncsphere.commpoly import CommPoly, groebner_basis, poly_vars
from ncsphere.exact import GaussRat, I

NAMES = ("x", "y", "z")


def test_arithmetic_and_substitution():
    x, y, z = poly_vars(NAMES)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.subs([y, x, z], NAMES) == -p
    assert p.evaluate([GaussRat(3), GaussRat(2), GaussRat(0)]) == 5
    assert (x * I).conjugate() == x * (-I)


def test_twisted_cubic_ideal():
    x, y, z = poly_vars(NAMES)
    gb = groebner_basis([y - x * x, z - x * x * x], order="lex")
    assert gb.s_polynomials_vanish()
    assert gb.contains(y * y - x * z)
    assert gb.contains(x * y - z)
    assert not gb.contains(x - y)


def test_reduce_is_canonical():
    x, y, _ = poly_vars(NAMES)
    gb = groebner_basis([x * x + y * y - 1, x - y])
    a = gb.reduce(x * x)
    b = gb.reduce(y * y)
    assert a == b


def test_unit_ideal():
    x, y, _ = poly_vars(NAMES)
    gb = groebner_basis([x * y - 1, x])
    assert gb.contains(CommPoly.constant(1, NAMES))


def test_budget_stops_groebner():
    x, y, z = poly_vars(NAMES)
    gens = [x ** 3 - y * z + 2, y ** 3 - x * z * z, z ** 3 - x * x * y + x]
    with pytest.raises(BudgetExceeded):
        groebner_basis(gens, budget=Budget(max_steps=5))
