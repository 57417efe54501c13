import pytest

from dendro.dendroidal.anodyne import certify_inner_anodyne
from dendro.dendroidal.dset import Nerve, Representable
from dendro.errors import InputError, PreconditionError
from dendro.operads.operad import contractible_groupoid, groupoid_times_cyclic
from dendro.operads.simplicial_operad import corolla_operad, discrete
from dendro.preoperads import segal
from dendro.preoperads.generators import generator, operad_inclusion_report, preoperad_inclusion_report
from dendro.preoperads.objects import change_objects, lifting_check, reduce_at_point
from dendro.preoperads.preoperad import GammaShriek, OmegaKT, Product, SimplicialNerve, level_slice, sc_kt
from dendro.preoperads.schemas import load_preoperad, parse_preoperad
from dendro.preoperads.segal import decomposition_check, op_space, pi0_preoper, segal_check
from dendro.simplicial import sset
from dendro.trees.catalog import corolla, eta, linear_tree


def test_omega_of_an_interval_is_not_strictly_segal(t2):
    report = segal_check(OmegaKT(sset.delta(1), t2), 2, 1)
    assert not report["holds"]
    assert report["witnesses"][0]["missing"] > 0


def test_nerves_of_simplicial_operads_are_strictly_segal():
    X = SimplicialNerve(corolla_operad(2, sset.delta(1)))
    assert segal_check(X, 2, 1)["holds"]
    assert segal_check(X, 2, 1, strength="pi0")["holds"]
    with pytest.raises(InputError):
        segal_check(X, 2, 1, strength="weak")


def test_segal_core_of_an_interval(t2):
    X = sc_kt(sset.delta(1), t2)
    assert len(X.eval(0, t2)) == 0
    assert X.eval(0, corolla(2))


def test_operation_space_of_a_nerve():
    X = SimplicialNerve(corolla_operad(2, sset.delta(1)))
    obj = SimplicialNerve.object_token
    space = op_space(X, [obj("1"), obj("2")], obj("0"))
    assert space.counts() == [2, 1]
    assert op_space(X, [obj("0"), obj("0")], obj("0")).is_empty
    assert decomposition_check(X, 2, 1)["holds"]
    with pytest.raises(InputError):
        op_space(X, ["nowhere"], obj("0"))


class RelabelledRoots(SimplicialNerve):
    """Level-1 dendrices claim the object 1 at the root, whatever their vertices say."""

    def object_at(self, T, e, x, n):
        if n and e == T.root:
            return self.object_token("1")
        return super().object_at(T, e, x, n)


def test_decomposition_reads_the_operation_spaces(monkeypatch):
    X = SimplicialNerve(corolla_operad(2, sset.delta(1)))
    calls = []
    original = segal.op_space
    monkeypatch.setattr(segal, "op_space", lambda *args: calls.append(args) or original(*args))
    assert decomposition_check(X, 2, 1)["holds"]
    assert calls


def test_decomposition_catches_a_moving_profile():
    X = RelabelledRoots(corolla_operad(2, sset.delta(1)))
    report = decomposition_check(X, 2, 1)
    assert not report["holds"]
    (problem,) = report["problems"]
    assert problem["level"] == 1
    assert problem["mismatched"]


@pytest.mark.parametrize("K", [sset.delta(0), sset.boundary(1), sset.delta(1)], ids=["point", "two points", "interval"])
@pytest.mark.parametrize("n", [1, 2])
def test_omega_of_a_corolla_is_a_nerve(K, n, small_trees):
    omega = OmegaKT(K, corolla(n))
    nerve = SimplicialNerve(corolla_operad(n, K))
    for m in range(K.dimension_bound + 1):
        for T in small_trees:
            assert len(omega.eval(m, T)) == len(nerve.eval(m, T)), (m, T.describe())


def test_gamma_shriek_collapses_colours():
    X = Product(sset.delta(1), Representable(eta()))
    gamma = GammaShriek(X)
    assert len(X.eval(0, eta())) == 2
    assert len(gamma.eval(0, eta())) == 1
    assert len(gamma.eval(1, eta())) == 1
    assert len(gamma.eval(0, corolla(1))) == 1
    assert gamma.eval(0, corolla(2)) == []
    assert all(x[0] == "colour" for x in gamma.eval(0, linear_tree(2)))


def test_gamma_shriek_keeps_non_linear_dendrices():
    X = Product(sset.boundary(1), Representable(corolla(2)))
    gamma = GammaShriek(X)
    assert len(gamma.eval(0, corolla(2))) == len(X.eval(0, corolla(2))) == 4
    # six points over the three edges of C2, none of them connected
    assert len(gamma.eval(0, eta())) == 6


def test_components_of_a_preoperad(t2):
    pi = pi0_preoper(OmegaKT(sset.delta(1), t2))
    assert len(pi.eval(t2)) == len(Representable(t2).eval(t2))


def test_tc3_on_t2_is_inner_anodyne_levelwise(t2):
    gen = generator("TC3", n=0, tree=t2)
    result = certify_inner_anodyne(level_slice(gen.source, 0), level_slice(gen.target, 0), 2)
    assert result["status"] == "holds"


def test_operad_generators_are_inclusions():
    gens = [
        generator("C1"),
        generator("C2", n=2, m=1),
        generator("A2", n=1, m=2, k=1),
        generator("A1", category=contractible_groupoid(["0", "1"])),
    ]
    for gen in gens:
        report = operad_inclusion_report(gen)
        assert report["holds"], (gen.family, report["problems"])
    c2 = operad_inclusion_report(gens[1])
    assert {"profile": [["1", "2"], "0"], "counts": [[2], [2, 1]]} in c2["spaces"]


def test_preoperad_generators_are_inclusions(t2):
    gens = [
        generator("TC1"),
        generator("TC2", n=1, arity=2),
        generator("TA2", n=2, k=1, arity=1),
        generator("TC3", n=1, tree=t2),
        generator("TA1", category=contractible_groupoid(["0", "1"])),
    ]
    for gen in gens:
        report = preoperad_inclusion_report(gen, 2, 1)
        assert report["holds"], (gen.family, report["problems"])
        assert report["counts"]


def test_generator_parameters_are_checked():
    with pytest.raises(InputError):
        generator("A2", n=1, m=1, k=2)
    with pytest.raises(InputError):
        generator("TC2", n=0, tree=linear_tree(2))
    with pytest.raises(InputError):
        generator("C3")
    with pytest.raises(InputError):
        generator("A1")


def test_a1_needs_an_equivalence():
    with pytest.raises(PreconditionError):
        generator("A1", category=groupoid_times_cyclic(["0", "1"], 3))


def test_reduce_at_a_point():
    X = Nerve(contractible_groupoid(["0", "1"]))
    zero = Nerve.token({"0": "0"}, {})
    R = reduce_at_point(X, zero)
    assert len(X.eval(corolla(1))) == 4
    assert len(R.eval(corolla(1))) == 1
    assert len(R.eval(linear_tree(2))) == 1
    with pytest.raises(InputError):
        reduce_at_point(X, Nerve.token({"0": "2"}, {}))


def test_lifting_against_boundaries():
    X = SimplicialNerve(discrete(contractible_groupoid(["0", "1"]), 1))
    obj = SimplicialNerve.object_token
    onto = change_objects(X, {"a": obj("0"), "b": obj("0"), "c": obj("1")})
    assert lifting_check(onto, 1, 1)["holds"]
    assert len(onto.objects()) == 3
    not_onto = change_objects(X, {"a": obj("0")})
    assert not lifting_check(not_onto, 1, 0)["holds"]
    with pytest.raises(InputError):
        change_objects(X, {"a": "missing"})


def test_preoperad_expressions(t2):
    assert isinstance(load_preoperad("omega(T2;delta:1)"), OmegaKT)
    core = load_preoperad("core(T2;delta:1)")
    assert len(core.eval(0, t2)) == 0
    nerve = load_preoperad("corolla(2;delta:1)")
    assert nerve.level_bound == 1
    gamma = load_preoperad("gamma(product(delta:1;rep(eta)))")
    assert len(gamma.eval(0, eta())) == 1
    for bad in ("omega(T2)", "bogus(T2;delta:1)", "corolla(x;delta:1)"):
        with pytest.raises(InputError):
            parse_preoperad(bad)
