import click

from .. import extensions
from ..dendroidal.anodyne import certify_inner_anodyne, describe_steps
from ..dendroidal.checks import within_cap
from ..dendroidal.schemas import load_dset
from ..errors import InputError
from ..operads.operad import contractible_groupoid, groupoid_times_cyclic
from ..operads.schemas import CategoryModel, read_json
from ..simplicial.dot import space_to_dot
from ..trees.catalog import eta, load_tree
from ..trees.enumeration import enumerate_trees
from ..helpers import Report, common_options, emits_report, verdict
from . import preoperads_cli
from .generators import (
    OPERAD_FAMILIES,
    PREOPERAD_FAMILIES,
    generator,
    operad_inclusion_report,
    preoperad_inclusion_report,
)
from .objects import reduce_at_point
from .preoperad import GammaShriek, level_slice
from .schemas import load_preoperad
from .segal import decomposition_check, op_space, segal_check


def load_category(ref):
    """``contractible``, ``cyclic:ORDER`` or a JSON category file, always on the objects 0 and 1."""
    if ref == "contractible":
        return contractible_groupoid(["0", "1"], name="E(0,1)")
    if ref.startswith("cyclic:"):
        try:
            order = int(ref.split(":", 1)[1])
        except ValueError as e:
            raise InputError(f"Bad order in {ref!r}") from e
        return groupoid_times_cyclic(["0", "1"], order, name=f"E(0,1) x Z/{order}")
    return CategoryModel.parse_payload(read_json(ref)).build()


def _labels(x):
    if isinstance(x, str):
        yield x
    elif isinstance(x, tuple):
        for part in x:
            yield from _labels(part)


def _match_object(objects, label):
    """The object token whose repr is ``label`` or whose last colour label is ``label``."""
    for x in objects:
        names = list(_labels(x))
        if label == repr(x) or (names and names[-1] == label):
            return x
    raise InputError(f"No object labelled {label!r}")


@preoperads_cli.command("check-segal")
@click.option("--preoperad", "ref", required=True, help="Expression such as omega(T2;delta:1) or nerve(com2)")
@click.option("--strength", type=click.Choice(["strict", "pi0"]), default="strict", show_default=True)
@common_options
@emits_report
def check_segal(ref, strength, bound):
    """Compare each X_T with the limit over the Segal core of T."""
    X = load_preoperad(ref)
    result = segal_check(X, bound.vertices, bound.level, strength)
    return Report(
        status=verdict(result["holds"]),
        summary=f"{X.name}: {result['trees']} trees, {result['failures']} failures ({strength})",
        witnesses=result["witnesses"],
        data={"preoperad": X.provenance, **{k: v for k, v in result.items() if k != "witnesses"}},
    )


@preoperads_cli.command("op-space")
@click.option("--preoperad", "ref", required=True)
@click.option("--arity", type=int, required=True)
@click.option("--colour", "colours", multiple=True, help="Object labels, inputs then output; default all the same")
@common_options
@emits_report
def op_space_command(ref, arity, colours, bound):
    """The operation space of a preoperad at the corolla of the given arity."""
    X = load_preoperad(ref)
    objects = X.objects()
    if not objects:
        raise InputError(f"{X.name} has no objects")
    if colours:
        if len(colours) != arity + 1:
            raise InputError(f"Expected {arity + 1} --colour values, got {len(colours)}")
        chosen = [_match_object(objects, c) for c in colours]
    else:
        chosen = [objects[0]] * (arity + 1)
    space = op_space(X, chosen[:-1], chosen[-1], min(bound.level, X.level_bound))
    split = decomposition_check(X, arity, bound.level)
    return Report(
        status="emitted" if split["holds"] else "fails",
        summary=f"{space.name}: counts {space.counts()}",
        witnesses=split["problems"],
        data={"counts": space.counts(), "space": space.to_json(), "decomposes": split["holds"]},
        dot=space_to_dot(space),
    )


@preoperads_cli.command("generators")
@click.option("--family", type=click.Choice(OPERAD_FAMILIES + PREOPERAD_FAMILIES), required=True)
@click.option("--n", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--tree", "tree_ref", default=None, help="Tree for TC2, TA2, TC3 and TA3")
@click.option("--arity", type=int, default=None, help="Corolla arity when no tree is given")
@click.option("--category", "category_ref", default="contractible", show_default=True,
              help="contractible, cyclic:ORDER or a JSON category for A1 and TA1")
@click.option("--certify", type=int, default=None, help="Certify the level slice at this level as inner anodyne")
@common_options
@emits_report
def generators(family, n, m, k, tree_ref, arity, category_ref, certify, bound):
    """Build a generating (trivial) cofibration and check that it is an inclusion."""
    category = load_category(category_ref) if family in ("A1", "TA1") else None
    tree = load_tree(tree_ref) if tree_ref else None
    gen = generator(family, n=n, m=m, k=k, tree=tree, arity=arity, category=category)
    if family in OPERAD_FAMILIES:
        result = operad_inclusion_report(gen)
        return Report(
            status=verdict(result["holds"]),
            summary=f"{family}: {gen.source.name} -> {gen.target.name}, {len(result['spaces'])} nonempty profiles",
            witnesses=result["problems"],
            data={"parameters": gen.parameters, "spaces": result["spaces"]},
        )
    result = preoperad_inclusion_report(gen, bound.vertices, bound.level)
    data = {"parameters": gen.parameters, "counts": result["counts"]}
    status = verdict(result["holds"])
    if certify is not None:
        A, B = level_slice(gen.source, certify), level_slice(gen.target, certify)
        seed = extensions.current_settings().seed
        cert = certify_inner_anodyne(A, B, bound.vertices, seed=seed)
        data["certificate"] = {"level": certify, "status": cert["status"], "steps": describe_steps(cert["steps"])}
        if result["holds"]:
            status = cert["status"]
    return Report(
        status=status,
        summary=f"{family}: {gen.source.name} -> {gen.target.name}",
        witnesses=result["problems"],
        data=data,
    )


@preoperads_cli.command("reduce")
@click.option("--dset", "dset_ref", required=True)
@click.option("--object", "label", required=True, help="Colour label of the object")
@common_options
@emits_report
def reduce_command(dset_ref, label, bound):
    """Count the dendrices of r(X) at the object, tree by tree."""
    X = load_dset(dset_ref)
    rX = reduce_at_point(X, _match_object(X.eval(eta("0")), label))
    rows = [
        {"tree": T.describe(), "reduced": len(rX.eval(T)), "all": len(X.eval(T))}
        for T in enumerate_trees(bound.vertices, X.max_arity)
        if within_cap(T, X.max_arity)
    ]
    return Report(
        status="emitted",
        summary=f"{rX.name}: {sum(r['reduced'] for r in rows)} dendrices over {len(rows)} trees",
        data={"counts": rows, "dset": rX.provenance},
    )


@preoperads_cli.command("gamma")
@click.option("--preoperad", "ref", required=True)
@common_options
@emits_report
def gamma(ref, bound):
    """Compare the dendrices of gamma_!(X) with those of X."""
    X = load_preoperad(ref)
    G = GammaShriek(X)
    rows = []
    for T in enumerate_trees(bound.vertices, X.max_arity):
        if not within_cap(T, X.max_arity):
            continue
        for n in range(min(bound.level, X.level_bound) + 1):
            rows.append({"tree": T.describe(), "level": n, "X": len(X.eval(n, T)), "gamma": len(G.eval(n, T))})
    colours = sorted(set(G.classes().values()), key=repr)
    return Report(
        status="emitted",
        summary=f"{G.name}: {len(colours)} colours from {len(X.objects())} objects of {X.name}",
        data={"colours": [repr(c) for c in colours], "counts": rows},
    )
