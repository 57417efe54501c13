import random

import pytest

from dendro.errors import ArityCapError, InputError, PreconditionError
from dendro.operads.free_cell import attach_free_cell, check_sigma_free
from dendro.operads.operad import (
    CategoryOperad,
    OperadMap,
    Operation,
    TableOperad,
    change_colours,
    classify_operad_morphism,
    commutative_operad,
    contractible_groupoid,
    groupoid_times_cyclic,
    identity_map,
    monoid_operad,
    trivial_operad,
)
from dendro.operads.pushout import brute_force_pushout, count_factorizations, pushout_full_embedding
from dendro.operads.schemas import OperadModel
from dendro.operads.simplicial_operad import (
    SimplicialOperad,
    TreeSimplicialOperad,
    corolla_operad,
    decorated_operad,
    discrete,
    pi0_truncated_operad,
)
from dendro.operads.tree_operad import TreeOperad
from dendro.operads.validation import simplicial_violations, validate_operad
from dendro.simplicial.sset import SimplicialSet, delta


def one_object(name="K"):
    return CategoryOperad(["*"], {"i": ("*", "*")}, {("i", "i"): "i"}, {"*": "i"}, name=name)


def idempotent_monoid():
    products = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "g"}
    return monoid_operad(["e", "g"], products, "e")


@pytest.fixture
def pushout_data():
    P = monoid_operad(["e"], {("e", "e"): "e"}, "e", name="P")
    K = one_object()
    H = contractible_groupoid(["0", "1"], name="H")
    f = OperadMap(K, P, {"*": "x"}, {}, name="f")
    u = OperadMap(K, H, {"*": "0"}, {}, name="u")
    return P, f, u


def test_laws_hold_for_the_builtin_operads(t2):
    assert validate_operad(commutative_operad(3)) == []
    assert validate_operad(TreeOperad(t2)) == []
    assert validate_operad(idempotent_monoid()) == []
    assert validate_operad(groupoid_times_cyclic(["a", "b"], 3)) == []


def test_missing_table_entries_are_reported():
    g = Operation(("x",), "x", "g")
    P = TableOperad(["x"], [g], arity_cap=1, name="partial")
    laws = {v.law for v in validate_operad(P)}
    assert any(law.endswith(":missing") for law in laws)


def test_arity_cap():
    Com = commutative_operad(2)
    (mu,) = Com.operations(("x", "x"), "x")
    assert Com.compose(mu, 0, mu) is None
    with pytest.raises(ArityCapError):
        Com.compose_or_raise(mu, 0, mu)


def test_free_operad_on_t2(t2):
    P = TreeOperad(t2)
    labels = {p.label for p in P.all_operations() if p.label}
    assert len(labels) == 3
    assert len(P.generators()) == 4
    assert P.is_sigma_free() == (True, None)
    assert not commutative_operad(2).is_sigma_free()[0]


def test_unary_isomorphisms_of_a_groupoid():
    assert len(groupoid_times_cyclic(["0", "1"], 2).unary_isomorphisms()) == 8
    assert idempotent_monoid().unary_isomorphisms() == [(idempotent_monoid().arrow("e"),) * 2]


def test_maps_and_colour_change():
    Com = commutative_operad(2)
    assert identity_map(Com).violations() == []
    pulled = change_colours(Com, {"a": "x", "b": "x"})
    assert len(pulled.operations(("a", "b"), "a")) == 1
    assert validate_operad(pulled) == []


def test_inclusion_of_an_object_into_a_contractible_groupoid():
    H = contractible_groupoid(["0", "1"])
    zero = CategoryOperad(["0"], {"0>0": ("0", "0")}, {("0>0", "0>0"): "0>0"}, {"0": "0>0"})
    flags = classify_operad_morphism(OperadMap(zero, H, {"0": "0"}, {}))
    assert flags["fully_faithful"]
    assert flags["essentially_surjective"]


def test_pushout_adds_an_isomorphic_colour(pushout_data):
    result = pushout_full_embedding(*pushout_data)
    Q = result["Q"]
    assert Q.t == "t"
    assert len(Q.operations(("x",), "t")) == 1
    assert len(Q.operations(("t",), "t")) == 1
    assert len(Q.operations(("t",), "x")) == 1
    assert validate_operad(Q) == []
    assert result["v"].violations() == []
    assert result["g"].violations() == []


def test_pushout_against_its_presentation(pushout_data):
    Q = pushout_full_embedding(*pushout_data)["Q"]
    signatures = [((a,), b) for a in Q.colours for b in Q.colours]
    assert brute_force_pushout(Q, signatures, max_nodes=2)["agrees"]
    assert count_factorizations(Q, Q.v, Q.g, max_arity=1) == 1
    assert classify_operad_morphism(Q.v, 1)["fully_faithful"]


def test_pushout_needs_a_full_embedding(pushout_data):
    P, f, _ = pushout_data
    H = groupoid_times_cyclic(["0", "1"], 2)
    u = OperadMap(one_object(), H, {"*": "0"}, {}, name="u")
    with pytest.raises(PreconditionError):
        pushout_full_embedding(P, f, u)


def test_free_cell_on_a_monoid():
    M = idempotent_monoid()
    Pf = attach_free_cell(M, ["x"], "x", max_multiplicity=1)
    assert len(Pf.enumerate_ops(("x",), "x", 0)) == 2
    ops = Pf.enumerate_ops(("x",), "x", 1)
    assert len(ops) == 6
    assert sorted(Pf.multiplicity(p) for p in ops) == [0, 0, 1, 1, 1, 1]
    f = Pf.generator()
    assert Pf.multiplicity(Pf.compose(f, 0, f)) == 2


def test_canonical_form_ignores_rewrite_order():
    M = idempotent_monoid()
    Pf = attach_free_cell(M, ["x"], "x")
    g = M.arrow("g")
    term = ("P", g, (("f", (("P", g, (("P", g, (("leaf", 0),)),)),)),))
    expected = ("P", g, (("f", (("P", g, (("leaf", 0),)),)),))
    for seed in range(5):
        assert Pf.canonical_form(term, random.Random(seed)) == expected


def test_free_cell_binary_generator():
    Pf = attach_free_cell(trivial_operad("x"), ["x", "x"], "x", max_multiplicity=1)
    assert len(Pf.enumerate_ops(("x", "x"), "x", 1)) == 2
    with pytest.raises(PreconditionError):
        check_sigma_free(commutative_operad(2), 2)


def test_operad_json_rebuilds():
    Com = commutative_operad(3)
    rebuilt = OperadModel.from_operad(Com).build()
    assert validate_operad(rebuilt) == []
    assert len(rebuilt.operations(("x",) * 3, "x")) == 1


def test_discrete_and_corolla_operads():
    S = discrete(commutative_operad(2), 1)
    assert len(S.level_operad(1).operations(("x", "x"), "x")) == 1
    C = corolla_operad(2, delta(1))
    assert C.op_space(("2", "1"), "0") == delta(1)
    assert C.op_space(("1", "1"), "0").is_empty
    assert len(C.level_operad(1).operations(("1", "2"), "0")) == 3
    assert validate_operad(C) == []


def test_tree_operad_over_an_interval(t2):
    S = TreeSimplicialOperad(t2, delta(1), level_bound=1)
    assert S.op_space(("l1", "l2", "l3"), "r").counts() == [4, 5, 2]
    assert validate_operad(S) == []


def test_components_of_a_decorated_tree_operad(t2):
    S = TreeSimplicialOperad(t2, delta(1), level_bound=1)
    pi0 = pi0_truncated_operad(S)
    free = TreeOperad(t2)
    for q in free.all_operations():
        assert len(pi0.operations(q.inputs, q.output)) == len(free.operations(q.inputs, q.output))
    assert pi0.check_well_defined() == []
    with pytest.raises(PreconditionError):
        pi0_truncated_operad(discrete(free, 0))


def test_decorated_operad_kinds(t2):
    assert decorated_operad("corolla", n=2, X=delta(1)).op_space(("1", "2"), "0") == delta(1)
    T = decorated_operad("tree", tree=t2, K=delta(1), level_bound=1)
    assert T.op_space(("l1", "l2"), "t").counts() == [2, 1]
    with pytest.raises(InputError):
        decorated_operad("corolla", n=2)
    with pytest.raises(InputError):
        decorated_operad("cube")


class EdgeMonoid(SimplicialOperad):
    """One colour; the unary space is a point e and an edge a -> b, composed by a monoid table.

    Each level is a lawful monoid, but (a, b) o (b, b) = (b, a) is no edge.
    """

    products = {("a", "a"): "a", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "a"}

    def __init__(self):
        super().__init__(["x"], 1, 1)
        self.name = "edge monoid"

    def op_space(self, inputs, output):
        if tuple(inputs) == ("x",):
            return SimplicialSet([("e",), ("a", "b")], 1, "unary")
        return SimplicialSet([], 1, "empty")

    def identity_vertex(self, c):
        return "e"

    def compose_vertex(self, p, i, q):
        if p.label == "e":
            return q
        if q.label == "e":
            return p
        return Operation(p.inputs, p.output, self.products[p.label, q.label])

    def act_vertex(self, p, perm):
        return p


def test_composition_must_respect_faces():
    S = EdgeMonoid()
    levelwise = [v for level in range(2) for v in validate_operad(S.level_operad(level))]
    assert levelwise == []
    violations = validate_operad(S)
    assert {v.law for v in violations} == {"simplicial_composition"}
    assert all(v.instance["level"] == 1 for v in violations)


def test_simplicial_operads_respect_faces(t2):
    assert simplicial_violations(corolla_operad(2, delta(1))) == []
    assert simplicial_violations(TreeSimplicialOperad(t2, delta(1), level_bound=1)) == []
