import pytest

from ncsphere.budget import Budget, BudgetExceeded
from ncsphere.exact import GaussRat
from ncsphere.freealg import Alphabet, FreeElt, commutator
from ncsphere.rewrite import (
    MonomialOrder,
    ResourceLimit,
    commutative_dims,
    complete,
    filtered_dimensions,
    graded_dimension,
    is_central,
    normal_word_counts,
    oracle_dimension,
)
from ncsphere.sphere import GENERIC_SAMPLES, PRESETS, casimir, relation_sextet, twist

XY = Alphabet(("x", "y"))
x, y = FreeElt.gen(0, XY), FreeElt.gen(1, XY)


def test_quantum_plane():
    q = GaussRat(2, 1)
    rs = complete([y * x - x * y * q], 6)
    assert normal_word_counts(rs) == [1, 2, 3, 4, 5, 6, 7]
    assert rs.normal_form(y * x) == x * y * q
    assert rs.check_confluence() == []


def test_completion_adds_overlap_rules():
    # y x = x x forces new degree-3 rules from the overlap y x x
    rels = [y * x - x * x, y * y - x * y]
    rs = complete(rels, 4)
    assert rs.check_confluence() == []
    assert normal_word_counts(rs, 4) == [oracle_dimension(rels, n) for n in range(5)]


def test_normal_form_respects_degree_bound():
    rs = complete([y * x - x * y], 3)
    with pytest.raises(ValueError, match="exceeds"):
        rs.normal_form(x * x * x * y)


def test_resource_limit_carries_partial_system():
    rels = [x * y * x - y * x * y]
    with pytest.raises(ResourceLimit) as err:
        complete(rels, 9, max_rules=2)
    assert err.value.partial is not None


def test_budget_is_honoured():
    rels = relation_sextet(GENERIC_SAMPLES[0])
    with pytest.raises(BudgetExceeded):
        complete(rels, 6, budget=Budget(max_steps=3))


def test_rules_to_json_sorted():
    rs = complete([y * x - x * y], 2)
    js = rs.to_json()
    assert js["rules"] == [{"lead": "y.x", "tail": [{"word": "x.y", "coeff": {"re": "1", "im": "0"}}]}]


@pytest.mark.parametrize("name", ["commutative", "generic-sample", "two-conics", "plane", "paired",
                                  "three-relations", "coarse"])
def test_rewrite_count_matches_oracle(name):
    rels = relation_sextet(PRESETS[name])
    rs = complete(rels, 4)
    assert normal_word_counts(rs, 4) == [oracle_dimension(rels, n) for n in range(5)]


def test_exceptional_growth_values():
    # frozen from the oracle: three independent relations and the coarse case
    three = relation_sextet(PRESETS["three-relations"])
    assert [oracle_dimension(three, n) for n in range(5)] == [1, 4, 13, 40, 121]
    coarse = relation_sextet(PRESETS["coarse"])
    assert [oracle_dimension(coarse, n) for n in range(5)] == [1, 4, 11, 28, 69]


def test_twists_keep_the_hilbert_series():
    p = GENERIC_SAMPLES[2]
    base = normal_word_counts(complete(relation_sextet(p), 4), 4)
    for flips, perm in [((1, 2), (0, 1, 2, 3)), ((0, 3), (0, 2, 3, 1)), ((), (0, 3, 1, 2))]:
        q = twist(p, flips, perm)
        assert normal_word_counts(complete(relation_sextet(q), 4), 4) == base


def test_opposite_algebra_has_the_same_dimensions():
    rels = relation_sextet(GENERIC_SAMPLES[3])
    opp = [r.reverse() for r in rels]
    assert normal_word_counts(complete(opp, 4), 4) == normal_word_counts(complete(rels, 4), 4)


def test_other_letter_orders_agree():
    rels = relation_sextet(GENERIC_SAMPLES[1])
    counts = {tuple(normal_word_counts(complete(rels, 4, MonomialOrder(prec)), 4))
              for prec in [(0, 1, 2, 3), (3, 2, 1, 0), (2, 0, 3, 1)]}
    assert counts == {tuple(commutative_dims(4))}


def test_graded_dimension_with_casimir():
    p = GENERIC_SAMPLES[4]
    rels = relation_sextet(p) + [casimir(p)]
    assert [graded_dimension(rels, n) for n in range(5)] == [1, 4, 9, 16, 25]


def test_is_central_certificate():
    p = GENERIC_SAMPLES[0]
    rs = complete(relation_sextet(p), 3)
    ok, cert = is_central(casimir(p), rs)
    assert ok and all(v.is_zero() for v in cert.values())
    ok, cert = is_central(FreeElt.gen(0), rs)
    assert not ok
    assert not cert["z1"].is_zero()
    # z0 commutes with itself
    assert cert["z0"].is_zero()


def test_negative_control_perturbed_relation():
    p = GENERIC_SAMPLES[0]
    rels = relation_sextet(p)
    z = [FreeElt.gen(i) for i in range(4)]
    rels[0] = rels[0] + commutator(z[2], z[3]) * GaussRat(1, 7)
    rs = complete(rels, 3)
    assert not is_central(casimir(p), rs)[0]


def test_filtered_counts_are_reported():
    p = GENERIC_SAMPLES[0]
    rels = relation_sextet(p) + [casimir(p) - 1]
    counts, rs = filtered_dimensions(rels, 3)
    assert counts[0] == 1
    assert counts == sorted(counts)
