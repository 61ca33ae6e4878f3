import itertools
import json
from pathlib import Path

import pytest

from ncsphere.exact import GaussRat, unit_circle_from_pythagorean as u
from ncsphere.freealg import SCALED_ALPHABET, Z_ALPHABET, FreeElt, MatFree, mat_mul
from ncsphere.linalg import row_space_equal
from ncsphere.rewrite import complete, is_central
from ncsphere.sphere import (
    CYCLIC,
    GENERIC_SAMPLES,
    PRESETS,
    ModuliParams,
    SpecialCaseError,
    casimir,
    central_elements,
    circle,
    classify_case,
    comm_anticomm_form,
    in_fundamental_domain,
    normalize_moduli,
    relation_sextet,
    relation_span_dim,
    rescale_relation,
    rescale_sklyanin,
    skly_relations,
    suspend,
    twist,
    unitarity_relations,
)

GOLDEN = Path(__file__).parent / "golden" / "generic_sample_relations.json"


def vecs(elts):
    return [e.to_vector() for e in elts]


def literal_sextet(lam):
    """Written out word by word, independently of relation_pair."""
    first, second = [], []
    for k, l, m in CYCLIC:
        first.append(FreeElt({(k, 0): lam[0], (0, k): -lam[k], (l, m): lam[m], (m, l): -lam[l]}))
        second.append(FreeElt({(k, 0): -lam[k], (0, k): lam[0], (l, m): lam[l], (m, l): -lam[m]}))
    return first + second


def test_sextet_matches_word_by_word_form():
    for p in (ModuliParams.symbolic(),) + GENERIC_SAMPLES:
        assert relation_sextet(p) == literal_sextet(p.lam)


def test_golden_relations():
    golden = json.loads(GOLDEN.read_text(encoding="utf-8"))
    p = PRESETS["generic-sample"]
    assert golden["lambda"] == p.to_json()
    assert golden["presentation"]["sextet"] == [r.render() for r in relation_sextet(p)]
    assert golden["presentation"]["casimir"] == casimir(p).render()


@pytest.mark.parametrize("p", GENERIC_SAMPLES[:3] + (PRESETS["three-relations"],), ids=str)
def test_unitarity_expansion_at_numeric_points(p):
    pres = unitarity_relations(p)
    assert row_space_equal(vecs(pres.homogeneous_relations), vecs(relation_sextet(p)))
    assert pres.identity_parts[0] == pres.identity_parts[1] == casimir(p)


def test_unitary_matrix_is_normal_modulo_relations():
    p = GENERIC_SAMPLES[0]
    from ncsphere.sphere import unitary_matrices

    U, Us = unitary_matrices(p)
    rs = complete(relation_sextet(p), 2)
    diff = mat_mul(U, Us) - mat_mul(Us, U)
    assert all(rs.normal_form(e).is_zero() for row in diff.rows for e in row)


def test_comm_form_spans_the_same_space():
    sym = ModuliParams.symbolic()
    assert row_space_equal(vecs(comm_anticomm_form(sym)), vecs(relation_sextet(sym)))


@pytest.mark.parametrize("p", [ModuliParams.symbolic(), GENERIC_SAMPLES[1]], ids=["symbolic", "sample"])
def test_rescaling_gives_the_sklyanin_form(p):
    lam = p.lam
    sk = rescale_sklyanin(p)
    comm = comm_anticomm_form(p)
    skly = skly_relations(sk)
    for i, (k, l, m) in enumerate(CYCLIC):
        first = rescale_relation(comm[i], sk, k)
        second = rescale_relation(comm[3 + i], sk, k)
        assert first * (lam[m] - lam[l]) == skly[3 + i]
        assert second == skly[i] * (lam[k] + lam[0])


def test_rescaling_rejects_special_points():
    with pytest.raises(SpecialCaseError) as err:
        rescale_sklyanin(PRESETS["two-conics"])
    assert "λ" in err.value.factor


@pytest.mark.parametrize("p", GENERIC_SAMPLES[:3], ids=str)
def test_central_elements_in_scaled_generators(p):
    sk = rescale_sklyanin(p)
    qs = central_elements(sk)
    assert (qs[0] + qs[1] + qs[2]).is_zero()
    rs = complete(skly_relations(sk), 3)
    for q in qs:
        assert is_central(q, rs)[0]


def test_presets_are_classified():
    want = {"commutative": "commutative", "three-relations": "three-relations", "coarse": "coarse",
            "generic-sample": "generic", "two-conics": "two-conics", "plane": "plane", "paired": "paired"}
    assert {k: classify_case(p).name for k, p in PRESETS.items()} == want


def test_relation_span_dims():
    assert relation_span_dim(PRESETS["three-relations"]) == 3
    assert relation_span_dim(PRESETS["coarse"]) == 5
    assert relation_span_dim(PRESETS["generic-sample"]) == 6
    assert relation_span_dim(ModuliParams.symbolic()) == 6


def test_classification_is_pairing_independent():
    v = u(2, 1)
    for lam in [(1, v, v, -1), (1, v, -1, v), (1, -1, v, v)]:
        assert classify_case(ModuliParams(lam)).name == "coarse"
        assert relation_span_dim(ModuliParams(lam)) == 5
    # sign pattern on a triple: still a plane, but z0 is no longer central
    opp = ModuliParams((1, v, -v, v))
    assert classify_case(opp).name == "plane"
    assert "central_generator" not in classify_case(opp).details
    assert not is_central(FreeElt.gen(0), complete(relation_sextet(opp), 3))[0]


def test_plane_case_has_central_z0():
    p = PRESETS["plane"]
    assert classify_case(p).details["central_generator"] == "z0"
    assert is_central(FreeElt.gen(0), complete(relation_sextet(p), 3))[0]


PHASES = (GaussRat(1), GaussRat(0, 1), u(2, 1), u(5, 3))


@pytest.mark.parametrize("p", GENERIC_SAMPLES + (PRESETS["paired"], PRESETS["plane"]), ids=str)
def test_normalize_against_brute_force(p):
    lam = p.lam
    outputs = set()
    for perm in itertools.permutations(range(4)):
        for ph in PHASES:
            q, _ = normalize_moduli([lam[i] * ph for i in perm])
            outputs.add(q.lam)
    assert len(outputs) == 1
    (canon,) = outputs
    assert canon[0] == 1 and in_fundamental_domain(canon)
    # the canonical point is a rotation and reordering of the input
    assert any(sorted(str(x / lam[j]) for x in lam) == sorted(str(x) for x in canon) for j in range(4))


def test_normalize_rejects_non_unit():
    with pytest.raises(ValueError):
        normalize_moduli([1, 2, 1, 1])


def test_twist_rules():
    p = GENERIC_SAMPLES[0]
    assert twist(p, (1, 2)).lam == (p[0], -p[1], -p[2], p[3])
    assert twist(p, (), (1, 0, 2, 3)).lam == (p[1], p[0], p[2], p[3])
    with pytest.raises(ValueError):
        twist(p, (1,))
    assert twist(p, (1,), allow_odd=True).lam[1] == -p[1]


def test_parse_errors_name_the_position():
    with pytest.raises(ValueError, match=r"λ\[2\]"):
        ModuliParams.parse('[1, 1, [1, 2, 3], 1]')
    with pytest.raises(ValueError):
        ModuliParams.parse("[1, 1, 1]")
    p = ModuliParams.parse('[[1,0], "1/1", {"re": "0", "im": "1"}, [2, 1]]')
    assert p.lam == (1, 1, GaussRat(0, 1), u(2, 1))


def test_suspension_chain():
    s1 = circle()
    s2 = suspend(s1)
    assert s2.kind == "even" and s2.dimension == 2
    s3 = suspend(s2)
    assert s3.kind == "odd" and s3.dimension == 3
    assert s3.alphabet.names[-1] == "x1"
    # x and x1 are central letters, and C grows by their squares
    assert {s3.alphabet.names[i] for i in s3.alphabet.central} == {"x", "x1"}
    x1 = FreeElt.gen(len(s3.alphabet) - 1, s3.alphabet)
    assert (s3.C - s2.C.relabel(s3.alphabet) - x1 * x1).is_zero()
    # s² − C is the same matrix whatever the entries satisfy: off-diagonal blocks vanish
    (d,) = s2.defining_matrices()
    assert d.rows[0][1].is_zero() and d.rows[1][0].is_zero()


def test_scaled_alphabet_is_separate():
    assert SCALED_ALPHABET != Z_ALPHABET
    with pytest.raises(ValueError):
        MatFree([[FreeElt.gen(0)], [FreeElt.gen(1)]])


def test_fundamental_domain_predicate():
    a, b, c = u(3, 1), u(2, 1), u(1, 2)
    assert in_fundamental_domain((1, a, b, c))
    assert not in_fundamental_domain((1, b, a, c))
    assert not in_fundamental_domain((a, a, b, c))
