import click

from ..helpers import Report, common_options, emits_report
from . import simplicial_cli
from .invariants import sset_invariants
from .schemas import SimplicialSetSpec


@simplicial_cli.command("sset")
@click.option("--space", required=True, help="JSON spec or short form such as horn:2:1 or cube:2")
@click.option("--kan-dim", type=int, default=None, help="Largest horn dimension to fill")
@common_options
@emits_report
def sset(space, kan_dim, bound):
    """Build a finite simplicial set and report pi0, homology and horn fillers."""
    X = SimplicialSetSpec.parse_text(space).build()
    kan_dim = min(bound.level, X.dimension_bound + 1) if kan_dim is None else kan_dim
    invariants = sset_invariants(X, kan_dim)
    return Report(
        status="emitted",
        summary=f"{X!r}, pi0={invariants['pi0']}",
        data={"space": X.to_json(), **invariants},
    )
