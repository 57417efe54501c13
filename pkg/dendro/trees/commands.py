import click

from ..helpers import Report, common_options, emits_report, verdict
from . import trees_cli
from .catalog import load_tree
from .dot import trees_to_dot
from .enumeration import enumerate_trees
from .omega import compose, factorize_epi_mono, hom_omega
from .schemas import MorphismModel, TreeModel


@trees_cli.command("trees")
@click.option("--max-vertices", type=int, required=True)
@click.option("--max-arity", type=int, required=True)
@common_options
@emits_report
def list_trees(max_vertices, max_arity, bound):
    """Enumerate trees up to isomorphism."""
    if max_vertices < 0 or max_arity < 0:
        raise click.BadParameter("--max-vertices and --max-arity must be non-negative")
    trees = enumerate_trees(max_vertices, max_arity)
    return Report(
        status="emitted",
        summary=f"{len(trees)} trees",
        data={
            "count": len(trees),
            "trees": [TreeModel.from_tree(t).model_dump() for t in trees],
            "codes": [t.code for t in trees],
        },
        dot=trees_to_dot(trees),
    )


@trees_cli.command("hom")
@click.option("--source", required=True, help="Tree name or JSON file")
@click.option("--target", required=True, help="Tree name or JSON file")
@click.option("--factorize", is_flag=True, help="Check the epi-mono factorization of every morphism")
@common_options
@emits_report
def hom(source, target, factorize, bound):
    """List the morphisms source -> target of the category of trees."""
    S, T = load_tree(source), load_tree(target)
    morphisms = hom_omega(S, T)
    data = {
        "count": len(morphisms),
        "monos": sum(1 for m in morphisms if m.is_mono),
        "morphisms": [MorphismModel.from_morphism(m).model_dump() for m in morphisms],
    }
    if not factorize:
        return Report(status="emitted", summary=f"{len(morphisms)} morphisms", data=data)

    bad = []
    for phi in morphisms:
        epi, mono = factorize_epi_mono(phi)
        if not mono.is_mono or compose(mono, epi) != phi:
            bad.append(phi.to_json())
    return Report(
        status=verdict(not bad),
        summary=f"{len(morphisms)} morphisms, {len(bad)} bad factorizations",
        witnesses=bad,
        data=data,
    )
