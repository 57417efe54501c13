import pytest

from dendro.bv.hc_nerve import HcNerve, split_at
from dendro.bv.w_construction import (
    check_functoriality,
    check_w_map,
    cube_vertices,
    full_profile,
    horn_image_formula,
    horn_image_space,
    profiles,
    w_compose,
    w_map,
    w_op_space,
    w_operad,
)
from dendro.dendroidal.checks import within_cap
from dendro.dendroidal.dset import Nerve
from dendro.dendroidal.tau import tau0_operations
from dendro.errors import DimensionBoundError, InputError
from dendro.operads.operad import commutative_operad, contractible_groupoid, monoid_operad
from dendro.operads.simplicial_operad import corolla_operad, discrete, pi0_truncated_operad
from dendro.operads.tree_operad import TreeOperad
from dendro.operads.validation import validate_operad
from dendro.simplicial.sset import delta
from dendro.trees.catalog import corolla, eta, linear_tree
from dendro.trees.omega import degeneracy, hom_omega, inner_face
from dendro.trees.tree import Subtree


def idempotent_monoid():
    products = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "g"}
    return monoid_operad(["e", "g"], products, "e")


def test_w_spaces_of_t2(t2):
    full = w_op_space(t2, ["l1", "l2", "l3"], "r")
    assert len(full.components) == 1
    assert full.space.counts() == [2, 1]
    assert w_op_space(t2, ["l1", "l2"], "t").space.counts() == [1]
    assert w_op_space(t2, ["l1", "l3"], "r").components == {}


def test_w_space_of_a_corolla():
    C = corolla(3)
    assert w_op_space(C, *full_profile(C)).space.counts() == [1]


def test_w_space_rejects_unknown_edges(t2):
    with pytest.raises(InputError):
        w_op_space(t2, ["l1", "zz"], "r")


def test_inner_face_lands_at_length_zero(t2):
    f = w_map(inner_face(t2, "t"))
    key = Subtree(t2, "r", ["t", "r"]).key()
    assert list(f.vertex_map.values()) == [(key, (("t", 0),))]


def test_degeneracy_takes_the_max():
    T = linear_tree(3)
    sigma = degeneracy(T, "1")
    f = w_map(sigma)
    assert f.is_valid()
    assert len(f.vertex_map) == 4
    for (_, coords), (_, image) in f.vertex_map.items():
        assert [x for _, x in image] == [max(x for _, x in coords)]
    assert check_w_map(sigma) == []


def test_w_maps_match_the_closed_formula(t2):
    for phi in hom_omega(corolla(2), t2) + hom_omega(linear_tree(2), linear_tree(3)):
        assert check_w_map(phi) == []


def test_w_is_functorial(small_trees):
    result = check_functoriality(small_trees)
    assert result["holds"], result["problems"][:3]
    assert result["pairs"] > 0


def test_grafting_sets_the_new_edge_to_one(t2):
    top = (Subtree(t2, "t", ["t"]), {})
    bottom = (Subtree(t2, "r", ["r"]), {})
    V, coords = w_compose(bottom, top, "t")
    assert V == Subtree(t2, "r", ["t", "r"])
    assert coords == {"t": 1}
    assert w_compose(bottom, (Subtree(t2, "l3", []), {}), "l3") == bottom
    with pytest.raises(InputError):
        w_compose(top, bottom, "t")


def test_grafting_is_associative():
    T = linear_tree(3)
    a, b, c = ((Subtree(T, k, [k]), {}) for k in ("0", "1", "2"))
    left = w_compose(w_compose(a, b, "1"), c, "2")
    right = w_compose(a, w_compose(b, c, "2"), "1")
    assert left == right
    assert left[1] == {"1": 1, "2": 1}


def test_horn_image_matches_the_formula(t2):
    assert horn_image_space(t2, "t") == horn_image_formula(t2, "t")
    T = linear_tree(3)
    for e in ("1", "2"):
        assert horn_image_space(T, e) == horn_image_formula(T, e)
    with pytest.raises(InputError):
        horn_image_space(t2, "l1")


def test_w_operad_laws(t2):
    assert validate_operad(w_operad(t2, 1)) == []


def test_components_of_w_are_the_tree_operad(t2):
    pi = pi0_truncated_operad(w_operad(t2))
    P = TreeOperad(t2)
    for inputs, output in profiles(t2):
        for listing in (inputs, tuple(reversed(inputs))):
            assert len(pi.operations(listing, output)) == len(P.operations(listing, output)) == 1
    assert pi.operations(("l1", "l3"), "r") == []
    assert pi.check_well_defined() == []


def test_split_at_cuts_a_subtree(t2):
    lower, upper = split_at(Subtree(t2, "r", ["t", "r"]), "t")
    assert lower == Subtree(t2, "r", ["r"])
    assert upper == Subtree(t2, "t", ["t"])


def test_hc_nerve_of_a_discrete_operad_is_the_nerve(small_trees):
    for P in (commutative_operad(2), idempotent_monoid(), contractible_groupoid(["0", "1"])):
        hc, N = HcNerve(discrete(P, level_bound=2)), Nerve(P)
        for T in small_trees:
            if within_cap(T, P.arity_cap):
                assert len(hc.eval(T)) == len(N.eval(T)), (P.name, T.describe())


def test_hc_nerve_of_an_idempotent():
    X = HcNerve(discrete(idempotent_monoid(), level_bound=1))
    # the cube map is constant at the composite
    assert len(X.eval(linear_tree(2))) == 4
    assert len(X.eval(eta())) == 1


def test_hc_nerve_restricts_along_faces():
    X = HcNerve(discrete(idempotent_monoid(), level_bound=1))
    T = linear_tree(2)
    face = inner_face(T, "1")
    images = {X.restrict(face, x) for x in X.eval(T)}
    assert images <= set(X.eval(face.source))
    assert len(images) == 2


def test_hc_nerve_refuses_a_low_level_bound():
    X = HcNerve(discrete(commutative_operad(2), level_bound=0))
    with pytest.raises(DimensionBoundError):
        X.eval(linear_tree(2))


def test_tau0_merges_connected_operations():
    X = HcNerve(corolla_operad(2, delta(1), 1))
    inputs = (HcNerve.colour_token("1"), HcNerve.colour_token("2"))
    classes = tau0_operations(X, inputs, HcNerve.colour_token("0"))
    assert len(classes) == 1
    assert len(classes[0]) == 2


def test_cube_corners():
    assert cube_vertices(["b", "a"]) == [
        (("a", 0), ("b", 0)),
        (("a", 0), ("b", 1)),
        (("a", 1), ("b", 0)),
        (("a", 1), ("b", 1)),
    ]
