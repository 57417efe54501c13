import click

from ..dendroidal.dset import Nerve
from ..errors import InputError
from ..helpers import Report, common_options, emits_report, verdict
from ..operads.schemas import operad_from_ref
from ..operads.simplicial_operad import corolla_operad, discrete
from ..simplicial.dot import space_to_dot
from ..simplicial.schemas import SimplicialSetSpec
from ..trees.catalog import load_tree
from ..trees.enumeration import enumerate_trees
from ..trees.omega import hom_omega
from . import bv_cli
from .hc_nerve import HcNerve
from .w_construction import check_functoriality, check_w_map, full_profile, w_op_space


def _edges(text):
    return [e.strip() for e in text.split(",") if e.strip()] if text else []


@bv_cli.command("w-space")
@click.option("--tree", "tree_ref", required=True)
@click.option("--inputs", default=None, help="Comma separated input edges; defaults to the leaves")
@click.option("--output", default=None, help="Output edge; defaults to the root")
@common_options
@emits_report
def w_space(tree_ref, inputs, output, bound):
    """Build one operation space of the Boardman-Vogt resolution W(T)."""
    T = load_tree(tree_ref)
    leaves, root = full_profile(T)
    W = w_op_space(T, _edges(inputs) or leaves, output or root)
    return Report(
        status="emitted",
        summary=f"{W!r}, nondegenerate simplices per dimension {W.space.counts()}",
        data={**W.to_json(), "space": W.space.to_json()},
        dot=space_to_dot(W.space, name="W"),
    )


@bv_cli.command("w-map")
@click.option("--source", "source_ref", default=None, help="Check every morphism source -> target")
@click.option("--target", "target_ref", default=None)
@click.option("--max-arity", type=int, default=2, show_default=True)
@common_options
@emits_report
def w_map(source_ref, target_ref, max_arity, bound):
    """Check W on morphisms of trees: stepwise against closed formula, then functoriality on the corpus."""
    if (source_ref is None) != (target_ref is None):
        raise InputError("--source and --target go together")
    if source_ref is not None:
        S, T = load_tree(source_ref), load_tree(target_ref)
        morphisms = hom_omega(S, T)
        problems = [p for phi in morphisms for p in check_w_map(phi)]
        return Report(
            status=verdict(not problems),
            summary=f"{len(morphisms)} morphisms {S.describe()} -> {T.describe()}, {len(problems)} problems",
            witnesses=problems[:10],
            data={"morphisms": len(morphisms), "problems": len(problems)},
        )
    trees = enumerate_trees(bound.vertices, max_arity)
    result = check_functoriality(trees)
    return Report(
        status=verdict(result["holds"]),
        summary=f"W on {result['pairs']} composable pairs over {len(trees)} trees: {len(result['problems'])} problems",
        witnesses=result["problems"][:10],
        data={"trees": len(trees), "pairs": result["pairs"]},
    )


@bv_cli.command("hcnerve")
@click.option("--operad", "operad_ref", default=None, help="Operad in sets, taken as discrete")
@click.option("--corolla", "arity", type=int, default=None, help="Use C_n[X] with this n")
@click.option("--space", default=None, help="The space X of C_n[X], e.g. delta:1")
@click.option("--tree", "tree_ref", required=True)
@common_options
@emits_report
def hcnerve(operad_ref, arity, space, tree_ref, bound):
    """Evaluate the homotopy coherent nerve at a tree."""
    T = load_tree(tree_ref)
    if operad_ref is not None:
        P = operad_from_ref(operad_ref)
        S = discrete(P, level_bound=bound.level)
    elif arity is not None and space is not None:
        P = None
        S = corolla_operad(arity, SimplicialSetSpec.parse_text(space).build(), level_bound=bound.level)
    else:
        raise InputError("Give --operad, or --corolla with --space")
    X = HcNerve(S)
    tokens = X.eval(T)
    data = {
        "count": len(tokens),
        "dendrices": [
            {"colours": HcNerve.colouring(x), "cubes": {repr(k): repr(v) for k, v in HcNerve.cube_maps(x).items()}}
            for x in tokens
        ],
    }
    if P is not None:
        data["nerve_count"] = len(Nerve(P).eval(T))
    return Report(
        status="emitted",
        summary=f"{len(tokens)} coherent dendrices of {S.name} at {T.describe()}",
        data=data,
    )
