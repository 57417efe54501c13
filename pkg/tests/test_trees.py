from itertools import product
from math import comb

import pytest

from dendro.errors import InputError
from dendro.trees.catalog import corolla, eta, graft, linear_tree, load_tree, plus_tree
from dendro.trees.enumeration import brute_force_trees, enumerate_trees, networkx_isomorphic
from dendro.trees.omega import (
    automorphisms,
    compose,
    compose_all,
    contract,
    decompose,
    degeneracy,
    degeneracy_section,
    elementary_morphisms,
    factorize_epi_mono,
    hom_omega,
    identity,
    inner_face,
    isomorphism,
    outer_faces,
)
from dendro.trees.schemas import TreeModel
from dendro.trees.tree import Tree, Vertex


def test_two_vertex_tree_shape(t2):
    assert t2.edges == {"l1", "l2", "t", "l3", "r"}
    assert t2.inner_edges == {"t"}
    assert t2.leaves == ("l1", "l2", "l3")
    assert len(t2.subtrees) == 8


def test_tree_rejects_cycles_and_shared_inputs():
    with pytest.raises(InputError):
        Tree([Vertex(["a"], "b"), Vertex(["b"], "a")], "a")
    with pytest.raises(InputError):
        Tree([Vertex(["x", "y"], "r"), Vertex(["x"], "y")], "r")


def test_enumeration_counts():
    assert len(enumerate_trees(1, 2)) == 4
    assert len(enumerate_trees(2, 2)) == 10


def test_enumeration_matches_brute_force():
    fast = enumerate_trees(3, 2)
    slow = brute_force_trees(3, 2)
    assert len(fast) == len(slow)
    assert len({t.canonical_code for t in fast}) == len(fast)


def test_canonical_code_agrees_with_networkx():
    trees = enumerate_trees(3, 3)
    for S, T in product(trees[:12], repeat=2):
        assert (S.canonical_code == T.canonical_code) == networkx_isomorphic(S, T)


def test_renamed_trees_are_isomorphic():
    S = corolla(2, leaves=["a", "b"], root="z")
    assert S.is_isomorphic(corolla(2))
    assert isomorphism(S, corolla(2)).is_valid()
    assert isomorphism(S, corolla(3)) is None


@pytest.mark.parametrize("m,n", [(0, 0), (0, 2), (1, 2), (2, 1), (2, 2)])
def test_linear_homs_are_monotone_maps(m, n):
    # linear trees with m and n vertices are [m] and [n]
    assert len(hom_omega(linear_tree(m), linear_tree(n))) == comb(m + n + 1, m + 1)


def test_hom_from_eta_picks_an_edge(t2):
    assert len(hom_omega(eta(), t2)) == len(t2.edges)


def test_automorphism_groups(t2):
    assert len(automorphisms(t2)) == 2
    assert len(automorphisms(corolla(3))) == 6
    assert len(automorphisms(linear_tree(3))) == 1


def test_every_enumerated_morphism_is_valid(t2):
    assert all(phi.is_valid() for phi in hom_omega(corolla(3), t2))


def test_composition_is_associative():
    S, T, U, V = corolla(1), linear_tree(2), linear_tree(2), linear_tree(1)
    for phi in hom_omega(S, T):
        for psi in hom_omega(T, U):
            for chi in hom_omega(U, V):
                assert compose(chi, compose(psi, phi)) == compose(compose(chi, psi), phi)


def test_identity_is_neutral(t2):
    for phi in hom_omega(corolla(2), t2):
        assert compose(identity(t2), phi) == phi
        assert compose(phi, identity(corolla(2))) == phi


@pytest.mark.parametrize("source", ["C1", "C2", "L2", "T2"])
def test_epi_mono_factorization(source, t2):
    for target in (t2, linear_tree(2), plus_tree(2)):
        for phi in hom_omega(load_tree(source), target):
            epi, mono = factorize_epi_mono(phi)
            assert mono.is_mono
            assert compose(mono, epi) == phi


@pytest.mark.parametrize("source", ["C1", "L2", "P2", "T2"])
def test_decomposition_recomposes(source):
    order = {"degeneracy": 0, "iso": 1, "inner_face": 2, "outer_face": 3}
    for target in (plus_tree(2), linear_tree(3)):
        for phi in hom_omega(load_tree(source), target):
            steps = decompose(phi)
            assert compose_all([s.morphism for s in steps]) == phi
            ranks = [order[s.kind] for s in steps]
            assert ranks == sorted(ranks)


def test_faces_of_t2(t2):
    face = inner_face(t2, "t")
    assert face.source.is_isomorphic(corolla(3))
    assert "t" not in face.edge_map.values()
    assert len(outer_faces(t2)) == 2
    with pytest.raises(InputError):
        contract(t2, "r")


def test_degeneracy_has_a_section():
    L = linear_tree(2)
    sigma = degeneracy(L, "1")
    assert sigma.target.is_isomorphic(linear_tree(1))
    assert compose(sigma, degeneracy_section(L, "1")).is_identity


def test_graft_builds_t2():
    grafted = graft(corolla(2, leaves=["t", "l3"], root="r"), corolla(2, leaves=["l1", "l2"]), "t")
    assert grafted.is_isomorphic(load_tree("T2"))
    with pytest.raises(InputError):
        graft(corolla(2), corolla(1), "missing")


def test_tree_json_reparses(t2):
    assert TreeModel.from_tree(t2).to_tree() == t2
    with pytest.raises(InputError):
        TreeModel.parse_payload({"vertices": []})


def test_unknown_tree_name():
    with pytest.raises(InputError):
        load_tree("X9")


def test_elementary_morphisms(t2):
    maps = elementary_morphisms(t2)
    assert len(maps.inner_faces) == 1
    assert len(maps.outer_faces) == 2
    assert maps.degeneracies == []
    plus = elementary_morphisms(plus_tree(2))
    assert len(plus.degeneracies) == 1
    assert plus.degeneracies[0].target.num_vertices == 1
