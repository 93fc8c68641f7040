from fractions import Fraction

import pytest

from rostcenter.root_system import (
    MAX_RANK,
    InvalidRank,
    SystemType,
    build,
    cartan_matrix,
    delta_c,
    delta_r,
    diagram_automorphisms,
    dual,
    lengths_from_cartan,
    weight_in_root_lattice,
)

from oracles import all_types, center_order, coxeter_number, frac_det, frac_solve, highest_root

TYPES = all_types()


@pytest.mark.parametrize("name", TYPES)
def test_root_counts_and_highest_root(name):
    rs = build(name)
    fam, n = rs.system_type.family, rs.rank
    h = coxeter_number(fam, n)
    assert len(rs.roots) == n * h
    assert len(rs.positive_roots) == n * h // 2
    assert rs.highest_root.coords == highest_root(fam, n)
    assert rs.highest_root.height == h - 1


@pytest.mark.parametrize("name", TYPES)
def test_roots_closed_under_simple_reflections(name):
    rs = build(name)
    roots = {r.coords for r in rs.roots}
    for r in rs.roots:
        for i in range(rs.rank):
            k = rs.pairing(r.coords, i)
            image = list(r.coords)
            image[i] -= int(k)
            assert tuple(image) in roots


@pytest.mark.parametrize("name", TYPES)
def test_weights_are_dual_to_coroots(name):
    rs = build(name)
    for j, w in enumerate(rs.fundamental_weights):
        assert all(isinstance(c, Fraction) for c in w)
        for i in range(rs.rank):
            assert rs.pairing(w, i) == int(i == j)


@pytest.mark.parametrize("name", TYPES)
def test_weights_match_independent_solver(name):
    rs = build(name)
    c = rs.cartan.tolist()
    for j in range(rs.rank):
        e = [int(i == j) for i in range(rs.rank)]
        assert list(rs.fundamental_weights[j]) == frac_solve(c, e)


@pytest.mark.parametrize("name", TYPES)
def test_cartan_determinant_is_center_order(name):
    rs = build(name)
    assert frac_det(rs.cartan.tolist()) == center_order(rs.system_type.family, rs.rank)


@pytest.mark.parametrize("name", TYPES)
def test_delta_c_is_highest_root_coefficient_one(name):
    rs = build(name)
    top = highest_root(rs.system_type.family, rs.rank)
    assert delta_c(rs) == {j + 1 for j, c in enumerate(top) if c == 1}


@pytest.mark.parametrize("name", TYPES)
def test_delta_r_stable_under_diagram_automorphisms(name):
    rs = build(name)
    dr = delta_r(rs)
    for perm in diagram_automorphisms(rs.system_type):
        assert {perm[j] for j in dr} == dr
        assert {perm[j] for j in delta_c(rs)} == delta_c(rs)


def test_delta_r_examples():
    assert sorted(delta_r(build("E7"))) == [1, 3, 4, 6]
    assert delta_r(build("A5")) == frozenset()
    for n in range(2, 11):
        rs = build(f"B{n}")
        assert delta_r(rs) == frozenset(range(1, n))
        assert delta_c(rs) == {1}
    assert sorted(delta_r(build("E6"))) == [2, 4]
    assert delta_r(build("E8")) == frozenset(range(1, 9))


def test_named_weights():
    F = Fraction
    assert build("E7").fundamental_weights[6] == (1, F(3, 2), 2, 3, F(5, 2), 2, F(3, 2))
    assert build("E6").fundamental_weights[0] == (F(4, 3), 1, F(5, 3), 2, F(4, 3), F(2, 3))
    assert build("A2").fundamental_weights[0] == (F(2, 3), F(1, 3))
    assert weight_in_root_lattice(build("B3"), 2)
    assert not weight_in_root_lattice(build("E7"), 7)
    with pytest.raises(IndexError):
        weight_in_root_lattice(build("E7"), 8)


def test_cartan_convention():
    b2 = cartan_matrix(SystemType("B", 2)).tolist()
    assert b2 == [[2, -1], [-2, 2]]
    g2 = cartan_matrix(SystemType("G", 2)).tolist()
    assert g2 == [[2, -3], [-1, 2]]
    assert lengths_from_cartan(build("C3").cartan) == [1, 1, 2]


def test_dual():
    b3 = build("B3")
    assert b3.dual.cartan == build("C3").cartan
    assert str(dual(b3).system_type) == "C3"
    assert b3.dual.dual is b3
    assert len(b3.dual.roots) == len(b3.roots)
    g = build("G2").dual
    assert g.cartan == build("G2").cartan.T
    assert build("E7").dual.cartan == build("E7").cartan


def test_coweights_solve_transpose():
    rs = build("C4")
    ct = rs.cartan.T.tolist()
    for j, w in enumerate(rs.fundamental_coweights):
        assert list(w) == frac_solve(ct, [int(i == j) for i in range(4)])


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "X4", "", "E", "7"])
def test_invalid_types(bad):
    with pytest.raises(InvalidRank):
        build(bad)


def test_rank_ceiling_and_parse():
    with pytest.raises(InvalidRank):
        build(f"A{MAX_RANK + 1}")
    assert SystemType.parse("E_7") == SystemType("E", 7)
    assert SystemType.parse(" d6 ") == SystemType("D", 6)
    assert build("E_7") is build("E7")
    with pytest.raises(InvalidRank):
        SystemType("A", 2.5)
