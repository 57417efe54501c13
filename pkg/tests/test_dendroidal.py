import pytest

from dendro.dendroidal.anodyne import certify_inner_anodyne, describe_steps, validate_certificate
from dendro.dendroidal.checks import inner_kan_check, is_normal, nondegenerate_dendrices
from dendro.dendroidal.dset import (
    Nerve,
    Representable,
    Terminal,
    boundary,
    generalized_horn,
    inner_horn,
    segal_core,
    union,
)
from dendro.dendroidal.filtration import FreeCellFiltration
from dendro.dendroidal.schemas import load_dset
from dendro.dendroidal.tau import profile_of, tau0_operations, tau_strict
from dendro.errors import InputError, PreconditionError
from dendro.operads.operad import commutative_operad, contractible_groupoid
from dendro.operads.tree_operad import TreeOperad
from dendro.trees.catalog import corolla, linear_tree
from dendro.trees.omega import hom_omega, isomorphism


def colour(e):
    return Nerve.token({"0": e}, {})


def test_nerve_of_a_tree_operad_is_the_representable(t2, small_trees):
    N = Nerve(TreeOperad(t2))
    for S in small_trees:
        assert len(N.eval(S)) == len(hom_omega(S, t2))


def test_nerve_of_com():
    N = Nerve(commutative_operad(2))
    assert len(N.eval(corolla(2))) == 1
    assert len(N.eval(linear_tree(2))) == 1
    assert N.eval(corolla(0)) == []


def test_nerves_are_strict_inner_kan(t2):
    for P in (commutative_operad(3), contractible_groupoid(["0", "1"]), TreeOperad(t2)):
        report = inner_kan_check(Nerve(P), 2, strict=True)
        assert report["holds"], report["witnesses"]
        assert report["horns"] > 0


def test_inner_horn_has_no_filler(t2):
    report = inner_kan_check(inner_horn(t2, "t"), 2)
    assert not report["holds"]
    assert report["witnesses"][0]["fillers"] == 0


def test_normality():
    assert not is_normal(Terminal(2), 2)["holds"]
    com = is_normal(Nerve(commutative_operad(2)), 2)
    assert not com["holds"]
    assert any(w["tree"].count("->") == 1 for w in com["witnesses"])


def test_representables_are_normal(t2):
    assert is_normal(Representable(t2), 2)["holds"]
    assert is_normal(Representable(corolla(3)), 1)["holds"]


def test_nondegenerate_dendrices_of_t2(t2):
    # five edges, two corollas, the inner face and T2 itself
    assert len(nondegenerate_dendrices(Representable(t2), 2)) == 9


def test_horns_and_boundaries(t2):
    omega = Representable(t2)
    horn = inner_horn(t2, "t")
    assert len(horn.eval(t2)) == 0
    assert len(boundary(t2).eval(corolla(3))) == len(omega.eval(corolla(3)))
    assert len(generalized_horn(t2, ["t"]).eval(t2)) == 0
    with pytest.raises(InputError):
        inner_horn(t2, "l1")
    with pytest.raises(InputError):
        generalized_horn(t2, [])
    core = segal_core(t2)
    assert len(union(core, horn).eval(corolla(3))) == 0


def test_segal_core_is_inner_anodyne(t2):
    A, B = segal_core(t2), Representable(t2)
    result = certify_inner_anodyne(A, B, 2)
    assert result["status"] == "holds"
    assert len(result["steps"]) == 1
    step = result["steps"][0]
    assert len(step.edges) == 1 and step.edges <= step.tree.inner_edges
    # steps live on canonically named trees
    onto_t2 = isomorphism(step.tree, t2)
    assert {onto_t2.edge_map[e] for e in step.edges} == {"t"}
    assert validate_certificate(A, B, result["steps"], 2) == []
    assert describe_steps(result["steps"])[0]["horn_edges"] == sorted(step.edges)


def test_segal_core_of_a_linear_tree():
    T = linear_tree(3)
    result = certify_inner_anodyne(segal_core(T), Representable(T), 3)
    assert result["status"] == "holds"
    singletons = certify_inner_anodyne(segal_core(T), Representable(T), 3, singleton=True)
    assert singletons["status"] == "holds"
    assert all(len(s.edges) == 1 for s in singletons["steps"])


def test_boundary_is_not_inner_anodyne(t2):
    result = certify_inner_anodyne(boundary(t2), Representable(t2), 2)
    assert result["status"] == "fails"
    assert result["frontier"]


def test_certification_needs_an_inclusion(t2):
    with pytest.raises(PreconditionError):
        certify_inner_anodyne(Representable(t2), segal_core(t2), 2)


def test_tau_recovers_the_operad(t2):
    tau = tau_strict(Nerve(TreeOperad(t2)), 2)
    (p,) = tau.operations((colour("t"), colour("l3")), colour("r"))
    (q,) = tau.operations((colour("l1"), colour("l2")), colour("t"))
    (pq,) = tau.operations((colour("l1"), colour("l2"), colour("l3")), colour("r"))
    assert tau.compose(p, 0, q) == pq
    assert tau.operations((colour("l2"), colour("l1")), colour("t"))


def test_tau_needs_strict_fillers(t2):
    with pytest.raises(PreconditionError):
        tau_strict(inner_horn(t2, "t"), 2)


def test_tau0_of_a_nerve_is_discrete():
    X = Nerve(commutative_operad(2))
    c = colour("x")
    classes = tau0_operations(X, (c, c), c)
    assert len(classes) == 1 and len(classes[0]) == 1
    (x,) = classes[0]
    assert profile_of(X, corolla(2), x) == ((c, c), c)


@pytest.fixture
def filtration():
    # P = Omega(C2) with a free unary f from the root colour to the first leaf
    return FreeCellFiltration(TreeOperad(corolla(2)), ["0"], "1", max_multiplicity=2)


def test_filtration_bottom_is_the_pushout(filtration):
    result = filtration.compare_pushout(2)
    assert result["holds"], result["problems"][:3]
    assert result["trees"] > 0


def test_filtration_horn_squares(filtration):
    report = filtration.horn_square_report(2)
    assert report["holds"], report["failures"][:3]
    assert report["checked"] > 0


def test_filtration_is_monotone(filtration, small_trees):
    for T in small_trees:
        for q in filtration.nerve.eval(T):
            for k in range(2):
                for n in range(3):
                    if filtration.member(q, k, n):
                        assert filtration.member(q, k, n + 1)
                        assert filtration.member(q, k + 1, 0)


def test_filtration_membership_agrees_with_image_search(filtration):
    T = linear_tree(1)
    for q in filtration.nerve.eval(T):
        assert filtration.member(q, 0, 1) == filtration.member_oracle(T, q, 0, 1)


def test_filtration_needs_a_sigma_free_operad():
    with pytest.raises(PreconditionError):
        FreeCellFiltration(commutative_operad(2), ["x"], "x")


def test_load_dset_expressions(t2):
    assert len(load_dset("rep(T2)").eval(t2)) == 2
    assert load_dset("nerve(com2)").eval(corolla(2))
    with pytest.raises(InputError):
        load_dset("blob(T2)")
