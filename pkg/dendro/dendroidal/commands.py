import click

from .. import extensions
from ..errors import InputError
from ..helpers import Report, common_options, emits_report, verdict
from ..operads.schemas import FreeCellSpec, operad_from_ref, read_json
from ..trees.catalog import load_tree
from ..trees.dot import tree_to_dot
from . import dendroidal_cli
from .anodyne import certify_inner_anodyne, describe_steps
from .checks import inner_kan_check, is_normal
from .dset import Nerve
from .filtration import FreeCellFiltration
from .schemas import load_dset


def _describe_op(op):
    return {"inputs": list(op.inputs), "output": op.output, "label": str(op.label)}


@dendroidal_cli.command("nerve")
@click.option("--operad", "operad_ref", required=True, help="Operad JSON file, comN, eta or tree:T")
@click.option("--tree", "tree_ref", required=True, help="Tree name or JSON file")
@common_options
@emits_report
def nerve(operad_ref, tree_ref, bound):
    """List the dendrices of the nerve of an operad at one tree."""
    P = operad_from_ref(operad_ref)
    T = load_tree(tree_ref)
    N = Nerve(P)
    tokens = N.eval(T)
    return Report(
        status="emitted",
        summary=f"{len(tokens)} dendrices of {N.name} at {T.describe()}",
        data={
            "count": len(tokens),
            "dendrices": [
                {
                    "colours": dict(Nerve.colouring(x)),
                    "operations": {key: _describe_op(op) for key, op in Nerve.ops(x).items()},
                }
                for x in tokens
            ],
        },
        dot=tree_to_dot(T),
    )


@dendroidal_cli.command("check-kan")
@click.option("--dset", "dset_ref", required=True, help="Expression such as nerve(com2) or core(T2), or a JSON spec")
@click.option("--strict/--lax", default=True, show_default=True)
@common_options
@emits_report
def check_kan(dset_ref, strict, bound):
    """Fill inner horns of a dendroidal set on trees within the bound."""
    X = load_dset(dset_ref)
    result = inner_kan_check(X, bound.vertices, strict=strict)
    return Report(
        status=verdict(result["holds"]),
        summary=f"{X.name}: {result['horns']} horns, {result['failures']} without a {'unique ' if strict else ''}filler",
        witnesses=result["witnesses"],
        data={"dset": X.provenance, **{k: v for k, v in result.items() if k != "witnesses"}},
    )


@dendroidal_cli.command("check-normal")
@click.option("--dset", "dset_ref", required=True)
@click.option("--sub", "sub_ref", default=None, help="Subobject A; checks the inclusion A -> dset instead")
@common_options
@emits_report
def check_normal(dset_ref, sub_ref, bound):
    """Check that automorphisms of trees act freely on (new) dendrices."""
    B = load_dset(dset_ref)
    A = load_dset(sub_ref) if sub_ref else None
    result = is_normal(B, bound.vertices, A)
    return Report(
        status=verdict(result["holds"]),
        summary=f"{B.name}: {result['violations']} dendrices fixed by a nontrivial automorphism",
        witnesses=result["witnesses"],
        data={"dset": B.provenance, "checked": result["checked"], "violations": result["violations"]},
    )


@dendroidal_cli.command("certify-anodyne")
@click.option("--sub", "sub_ref", required=True, help="The subobject A")
@click.option("--in", "ambient_ref", required=True, help="The dendroidal set B containing A")
@click.option("--budget", type=int, default=5000, show_default=True)
@click.option("--singleton", is_flag=True, help="Only attach along horns at a single inner edge")
@common_options
@emits_report
def certify_anodyne(sub_ref, ambient_ref, budget, singleton, bound):
    """Search for an inner anodyne certificate for A -> B."""
    A, B = load_dset(sub_ref), load_dset(ambient_ref)
    seed = extensions.current_settings().seed
    result = certify_inner_anodyne(A, B, bound.vertices, budget=budget, seed=seed, singleton=singleton)
    steps = describe_steps(result["steps"])
    return Report(
        status=result["status"],
        summary=f"{A.name} -> {B.name}: {result['status']}, {len(steps)} steps",
        witnesses=[{"frontier": result["frontier"]}] if result["status"] != "holds" else [],
        data={"certificate": steps, "search_nodes": result["nodes"]},
    )


@dendroidal_cli.command("filtration")
@click.option("--spec", "spec_path", required=True, help="JSON file with P and the profile of f")
@click.option("--certify", is_flag=True, help="Also certify N_d(P)[f] -> N_d(P[f]) up to --multiplicity")
@click.option("--multiplicity", type=int, default=1, show_default=True)
@common_options
@emits_report
def filtration(spec_path, certify, multiplicity, bound):
    """Compare the filtration of N_d(P[f]) with the pushout and with generalized horns."""
    spec = FreeCellSpec.parse_payload(read_json(spec_path))
    if multiplicity < 1:
        raise InputError("--multiplicity must be at least 1")
    seed = extensions.current_settings().seed
    filt = FreeCellFiltration(spec.P.build(), spec.inputs, spec.output, max_multiplicity=multiplicity, seed=seed)
    pushout = filt.compare_pushout(bound.vertices)
    squares = filt.horn_square_report(bound.vertices)
    holds = pushout["holds"] and squares["holds"]
    data = {"pushout": pushout, "horn_squares": {"checked": squares["checked"], "failures": squares["failures"]}}
    status = verdict(holds)
    if certify:
        result = certify_inner_anodyne(
            filt.filtration_stage(0, 1),
            filt.multiplicity_stage(multiplicity),
            bound.vertices,
            rank=lambda T, x: filt.m(x),
            seed=seed,
        )
        data["certificate"] = {"status": result["status"], "steps": describe_steps(result["steps"])}
        if holds and result["status"] != "holds":
            status = result["status"]
    return Report(
        status=status,
        summary=(
            f"{filt.Pf.name}: pushout comparison {'agrees' if pushout['holds'] else 'differs'}, "
            f"{squares['checked']} horn squares, {len(squares['failures'])} failures"
        ),
        witnesses=pushout["problems"][:5] + squares["failures"][:5],
        data=data,
    )
