from fractions import Fraction

import pytest

import euclid_model as em
from wrat.rootsys import (
    CartanElement,
    IllegalType,
    SimpleType,
    build,
    cartan_solve,
    is_admissible_level,
    pairing,
)

FAMILIES = [
    "A1", "A2", "A3", "A4",
    "B2", "B3", "B4",
    "C2", "C3", "C4",
    "D4", "D5",
    "G2", "F4",
    "E6", "E7", "E8",
]


def test_parse_and_str():
    st = SimpleType.parse("e7")
    assert st.family == "E" and st.rank == 7
    assert str(st) == "E7"
    assert SimpleType.parse(" G2 ") == SimpleType("G", 2)


@pytest.mark.parametrize("bad", ["X4", "A0", "B1", "C1", "D3", "E5", "E9", "F5", "G3", "A", "12"])
def test_illegal_types(bad):
    with pytest.raises(IllegalType):
        SimpleType.parse(bad)


@pytest.mark.parametrize("name", FAMILIES)
def test_positive_roots_match_euclidean_model(name):
    st = SimpleType.parse(name)
    rs = build(st)
    oracle = em.positive_root_coeffs(st.family, st.rank)
    ours = {r.coeffs for r in rs.positive_roots}
    assert ours == set(oracle)
    # length classes: long <=> maximal norm in the model
    max_norm = max(oracle.values())
    for r in rs.positive_roots:
        expect = "long" if oracle[r.coeffs] == max_norm else "short"
        assert r.length_class == expect, r


@pytest.mark.parametrize("name", FAMILIES)
def test_cartan_matrix_against_model(name):
    st = SimpleType.parse(name)
    rs = build(st)
    simples = em.simple_roots(st.family, st.rank)
    n = st.rank
    for i in range(n):
        for j in range(n):
            aij = 2 * em.dot(simples[i], simples[j]) / em.dot(simples[j], simples[j])
            assert rs.cartan_matrix[i][j] == aij


@pytest.mark.parametrize("name", FAMILIES)
def test_form_and_invariants_against_model(name):
    st = SimpleType.parse(name)
    rs = build(st)
    simples = em.simple_roots(st.family, st.rank)
    oracle = em.positive_root_coeffs(st.family, st.rank)
    theta = max(oracle, key=lambda c: sum(c))
    norm_theta = oracle[theta]
    # bilinear form normalized so the highest root has squared length 2
    scale = Fraction(2) / norm_theta
    for i in range(st.rank):
        for j in range(st.rank):
            assert rs.form_on_simple_roots[i][j] == scale * em.dot(simples[i], simples[j])
    assert rs.highest_root.coeffs == theta
    assert rs.coxeter_number == 1 + sum(theta)
    hvee = 1 + sum(
        m * (scale * em.dot(s, s) / 2) for m, s in zip(theta, simples)
    )
    assert rs.dual_coxeter_number == hvee
    assert rs.lacety == norm_theta / min(em.dot(s, s) for s in simples)


def test_counts_match_dimensions():
    # rank + 2 * positives = dim of the algebra
    dims = {"G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248, "A1": 3, "B3": 21, "C4": 36, "D4": 28}
    for name, d in dims.items():
        rs = build(SimpleType.parse(name))
        assert rs.rank + 2 * len(rs.positive_roots) == d


def test_is_root_signed_membership():
    rs = build(SimpleType.parse("G2"))
    assert rs.is_root((1, 0))
    assert rs.is_root((-1, 0))
    assert rs.is_root((1, 2)) and rs.is_root((-1, -2))
    assert rs.is_root((2, 3)) and rs.is_root((-2, -3))
    assert not rs.is_root((2, 0))
    assert not rs.is_root((0, 0))
    assert not rs.is_root((1, -1))
    assert not rs.is_root((3, 1))


def test_coroot_pairing_is_cartan_entry():
    rs = build(SimpleType.parse("F4"))
    n = rs.rank
    for i in range(n):
        simple = tuple(1 if k == i else 0 for k in range(n))
        for j in range(n):
            assert rs.coroot_pairing(simple, j) == rs.cartan_matrix[i][j]


def test_pairing_and_cartan_solve_inverse():
    rs = build(SimpleType.parse("E6"))
    diagram = CartanElement.of((0, 0, 0, 1, 0, 0))
    coords = cartan_solve(rs, diagram)
    # coords are over the simple coroots: multiplying back by the Cartan
    # matrix must reproduce the prescribed simple-root values
    for i in range(rs.rank):
        total = sum(rs.cartan_matrix[i][j] * coords[j] for j in range(rs.rank))
        assert total == diagram.pairings[i]
    # and `pairing` itself reads the stored values linearly
    theta = rs.highest_root.coeffs
    assert pairing(rs, theta, diagram) == sum(
        c * p for c, p in zip(theta, diagram.pairings)
    )


def test_build_is_cached():
    assert build(SimpleType.parse("D4")) is build(SimpleType.parse("D4"))


@pytest.mark.parametrize(
    "name,p,q,expect",
    [
        ("A1", 3, 2, True),
        ("A1", 1, 2, False),
        ("G2", 7, 3, True),
        ("G2", 5, 3, False),
        ("A1", 2, 2, False),   # gcd != 1
        ("G2", 4, 3, False),   # q hits the lacety: threshold jumps to h = 6
        ("G2", 6, 2, False),   # gcd fails
        ("G2", 7, 2, True),    # q coprime to lacety: threshold h-vee = 4
        ("G2", 3, 2, False),   # below h-vee
    ],
)
def test_admissible_levels(name, p, q, expect):
    rs = build(SimpleType.parse(name))
    assert is_admissible_level(rs, p, q) is expect
