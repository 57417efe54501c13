import pytest

from dendro.errors import DimensionBoundError, InputError
from dendro.simplicial.dot import space_to_dot
from dendro.simplicial.invariants import (
    components,
    euler_characteristic,
    homology,
    is_quasi_isomorphism,
    kan_report,
    pi0,
)
from dendro.simplicial.schemas import SimplicialSetSpec
from dendro.simplicial.sset import (
    SimplicialMap,
    SimplicialSet,
    boundary,
    cube,
    cube_boundary,
    delta,
    disjoint_union,
    horn,
    poset_nerve,
    power,
    product,
)


def test_basic_counts():
    assert delta(2).counts() == [3, 3, 1]
    assert boundary(2).counts() == [3, 3]
    assert horn(2, 1).counts() == [3, 2]
    assert cube(2).counts() == [4, 5, 2]
    assert cube_boundary(2).counts() == [4, 4]


def test_levels_include_degenerate_simplices():
    assert len(delta(1).level(1)) == 3
    assert len(delta(1).level(2)) == 4
    assert (0, 0, 1) in delta(1).level(2)


def test_rejects_bad_simplices():
    with pytest.raises(InputError):
        SimplicialSet([(0, 0)])
    with pytest.raises(DimensionBoundError):
        SimplicialSet([(0, 1, 2)], 1)
    with pytest.raises(DimensionBoundError):
        delta(1).nondegenerate(2)


def test_homology_of_a_circle():
    groups = homology(boundary(2))
    assert [g["rank"] for g in groups] == [1, 1, 0]
    assert all(not g["torsion"] for g in groups)


def test_components_and_products():
    X = disjoint_union([("a", delta(1)), ("b", delta(0))])
    assert pi0(X) == 2
    assert len(set(components(X).values())) == 2
    two_points = boundary(1)
    assert pi0(product(two_points, two_points)) == pi0(two_points) * pi0(two_points)
    assert pi0(product(delta(1), horn(2, 0))) == 1


def test_power_of_interval_is_the_cube():
    assert power(delta(1), 2).counts() == cube(2).counts()


def test_euler_characteristic():
    assert euler_characteristic(cube(2)) == 1
    assert euler_characteristic(boundary(3)) == 2


def test_quasi_isomorphisms():
    point = SimplicialMap(delta(0), delta(1), {0: 0})
    assert point.is_valid()
    assert is_quasi_isomorphism(point)
    ends = SimplicialMap(boundary(1), delta(1), {0: 0, 1: 1})
    assert not is_quasi_isomorphism(ends)


def test_horn_fillers():
    assert kan_report(delta(2), 2)["inner_kan"]
    report = kan_report(horn(2, 1), 2)
    assert not report["inner_kan"]


def test_poset_nerve_requires_an_order():
    chain = poset_nerve(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert chain.counts() == [3, 3, 1]
    with pytest.raises(InputError):
        poset_nerve(["a", "b"], [("a", "b"), ("b", "a")])


def test_short_forms():
    assert SimplicialSetSpec.parse_text("horn:2:1").build() == horn(2, 1)
    assert SimplicialSetSpec.parse_text("cube:2").build() == cube(2)
    assert SimplicialSetSpec.parse_text('{"kind": "boundary", "n": 2}').build() == boundary(2)
    with pytest.raises(InputError):
        SimplicialSetSpec.parse_text("horn:2").build()
    with pytest.raises(InputError):
        SimplicialSetSpec.parse_text("sphere:2").build()


def test_dot_lists_the_one_skeleton():
    source = space_to_dot(horn(2, 1))
    assert source.startswith("digraph")
    assert source.count("->") == 2
