import click

from ..bv.w_construction import w_operad
from ..errors import InputError
from ..helpers import Report, common_options, emits_report, verdict
from ..trees.catalog import load_tree
from . import operads_cli
from .free_cell import attach_free_cell, check_sigma_free, describe_term
from .operad import classify_operad_morphism
from .pushout import brute_force_pushout, count_factorizations, pushout_full_embedding
from .schemas import FreeCellSpec, PushoutSpec, operad_from_ref, read_json
from .validation import validate_operad


def _signatures(colours, max_arity):
    out = []

    def grow(prefix):
        if len(prefix) <= max_arity:
            for c in colours:
                out.append((tuple(prefix), c))
        if len(prefix) < max_arity:
            for c in colours:
                grow(prefix + [c])

    grow([])
    return out


@operads_cli.command("pushout-embed")
@click.option("--spec", "spec_path", required=True, help="JSON file with P, K, H, f and u")
@click.option("--max-arity", type=int, default=1, show_default=True)
@click.option("--oracle-nodes", type=int, default=2, show_default=True)
@common_options
@emits_report
def pushout_embed(spec_path, max_arity, oracle_nodes, bound):
    """Build the pushout along a full embedding and check it against its presentation."""
    P, f, u = PushoutSpec.parse_payload(read_json(spec_path)).build()
    result = pushout_full_embedding(P, f, u)
    Q, g, v = result["Q"], result["g"], result["v"]

    signatures = [s for s in _signatures(Q.colours, max_arity) if Q.operations(*s)]
    oracle = brute_force_pushout(Q, signatures, max_nodes=oracle_nodes)
    flags = classify_operad_morphism(v, max_arity)
    unique = count_factorizations(Q, v, g, max_arity=max_arity) == 1
    holds = oracle["agrees"] and flags["fully_faithful"] and unique

    witnesses = [s for s in oracle["signatures"] if not (s["injective"] and s["surjective"])]
    witnesses.extend(w for w in flags["witnesses"] if w["flag"] == "fully_faithful")
    if not unique:
        witnesses.append({"universal_property": "the identity of Q is not the only factorization of (v, g)"})
    return Report(
        status=verdict(holds),
        summary=f"{Q.name}: new colour {Q.t}, v fully faithful={flags['fully_faithful']}, oracle agrees={oracle['agrees']}",
        witnesses=witnesses,
        data={
            "colours": Q.colours,
            "new_colour": Q.t,
            "operations": {
                f"{list(inputs)}->{output}": len(Q.operations(inputs, output)) for inputs, output in signatures
            },
            "v": flags,
            "oracle": oracle,
            "unique_factorization": unique,
        },
    )


@operads_cli.command("free-cell")
@click.option("--spec", "spec_path", required=True, help="JSON file with P and the profile of f")
@click.option("--inputs", required=True, help="Comma separated input colours of the signature to list")
@click.option("--output", required=True)
@click.option("--max-multiplicity", type=int, default=2, show_default=True)
@common_options
@emits_report
def free_cell(spec_path, inputs, output, max_multiplicity, bound):
    """List the operations of P[f] at one signature, up to a multiplicity of f."""
    spec = FreeCellSpec.parse_payload(read_json(spec_path))
    P = spec.P.build()
    if max_multiplicity < 0:
        raise InputError("--max-multiplicity must be non-negative")
    check_sigma_free(P, bound.vertices)
    Pf = attach_free_cell(P, spec.inputs, spec.output, max_multiplicity=max_multiplicity)
    signature = tuple(c for c in inputs.split(",") if c)
    ops = Pf.enumerate_ops(signature, output, max_multiplicity)
    return Report(
        status="emitted",
        summary=f"{len(ops)} operations of {Pf.name} at {list(signature)} -> {output}",
        data={
            "count": len(ops),
            "operations": [
                {"term": describe_term(p.label), "multiplicity": Pf.multiplicity(p)} for p in ops
            ],
        },
    )


@operads_cli.command("validate")
@click.option("--operad", "operad_ref", help="Operad JSON file, comN, eta or tree:T")
@click.option("--w-tree", "w_tree", help="Validate the simplicial operad W(T) levelwise instead")
@click.option("--max-arity", type=int, help="Only check laws among operations of at most this arity")
@common_options
@emits_report
def validate(operad_ref, w_tree, max_arity, bound):
    """Check the unit, associativity and equivariance laws of a finite or truncated operad."""
    if (operad_ref is None) == (w_tree is None):
        raise InputError("Give exactly one of --operad and --w-tree")
    if w_tree is not None:
        P = w_operad(load_tree(w_tree), bound.level)
    else:
        P = operad_from_ref(operad_ref)
    violations = validate_operad(P, max_arity)
    laws = sorted({v.law for v in violations})
    return Report(
        status=verdict(not violations),
        summary=f"{P.name}: {len(violations)} violations" + (f" of {', '.join(laws)}" if laws else ""),
        witnesses=[{"law": v.law, **v.instance} for v in violations[:20]],
        data={"violations": len(violations), "laws": laws},
    )
