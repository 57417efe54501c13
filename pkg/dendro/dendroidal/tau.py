"""Reading operads back off dendroidal sets.

``tau_strict`` works for strict inner Kan complexes: operations are the
dendrices at corollas and composition goes through the unique filler of the
grafting horn. ``tau0_operations`` computes the homotopy relation on the
corolla dendrices of a lax inner Kan complex.
"""
import logging

import networkx as nx

from ..errors import PreconditionError
from ..operads.operad import FiniteOperad, Operation
from ..trees.catalog import corolla, eta, plus_tree
from ..trees.omega import OmegaMorphism, compose, inner_face, subtree_inclusion
from ..trees.tree import Subtree, Tree, Vertex
from .checks import inner_kan_check, is_degenerate
from .dset import collapse_to_edge, edge_inclusion

logger = logging.getLogger(__name__)


def profile_of(X, C, x):
    """(input colours, output colour) of a dendrex at a corolla."""
    (v,) = C.vertices
    inputs = tuple(X.restrict(edge_inclusion(C, e), x) for e in v.inputs)
    return inputs, X.restrict(edge_inclusion(C, C.root), x)


def corolla_iso(source, target):
    """Planar isomorphism between two corollas: i-th leaf to i-th leaf."""
    (v,), (w,) = source.vertices, target.vertices
    edge_map = dict(zip(v.inputs, w.inputs))
    edge_map[source.root] = target.root
    return OmegaMorphism(source, target, edge_map, {source.root: Subtree(target, target.root, [target.root])})


def grafting_tree(n, i, m):
    """C_n with a corolla of arity m grafted on its (i+1)-th leaf, leaves u1..um on top."""
    upper = str(i + 1)
    top = [f"u{j + 1}" for j in range(m)]
    return Tree([corolla(n).vertices[0], Vertex(top, upper)], "0")


class TauOperad(FiniteOperad):
    """tau(X) for X satisfying the strict inner Kan condition."""

    def __init__(self, X):
        self.X = X
        self.name = f"tau({X.name})"
        super().__init__(X.eval(eta("0")), X.max_arity)
        self._ops = {}

    def _corolla_ops(self, n):
        if n not in self._ops:
            C = corolla(n)
            by_profile = {}
            for x in self.X.eval(C):
                inputs, output = profile_of(self.X, C, x)
                by_profile.setdefault((inputs, output), []).append(Operation(inputs, output, x))
            self._ops[n] = by_profile
        return self._ops[n]

    def operations(self, inputs, output):
        inputs = tuple(inputs)
        if len(inputs) > self.arity_cap:
            return []
        return list(self._corolla_ops(len(inputs)).get((inputs, output), []))

    def identity(self, c):
        C = corolla(1)
        return Operation((c,), c, self.X.restrict(collapse_to_edge(C, "0"), c))

    def act(self, p, perm):
        n = len(p.inputs)
        C = corolla(n)
        edge_map = {str(j + 1): str(perm[j] + 1) for j in range(n)}
        edge_map["0"] = "0"
        alpha = OmegaMorphism(C, C, edge_map, {"0": Subtree(C, "0", ["0"])})
        return Operation(tuple(p.inputs[s] for s in perm), p.output, self.X.restrict(alpha, p.label))

    def compose(self, p, i, q):
        n, m = len(p.inputs), len(q.inputs)
        if n + m - 1 > self.arity_cap:
            return None
        G = grafting_tree(n, i, m)
        upper = str(i + 1)
        lower_face = subtree_inclusion(Subtree(G, "0", ["0"]))
        upper_face = compose(subtree_inclusion(Subtree(G, upper, [upper])), corolla_iso(corolla(m), Subtree(G, upper, [upper]).as_tree()))
        fillers = [
            y
            for y in self.X.eval(G)
            if self.X.restrict(lower_face, y) == p.label and self.X.restrict(upper_face, y) == q.label
        ]
        if len(fillers) != 1:
            raise PreconditionError(
                f"{self.X.name} has {len(fillers)} fillers for a grafting horn, expected one",
                witness={"tree": G.describe(), "p": repr(p.label), "q": repr(q.label)},
            )
        face = inner_face(G, upper)
        composite = compose(face, corolla_iso(corolla(n + m - 1), face.source))
        inputs = p.inputs[:i] + q.inputs + p.inputs[i + 1:]
        return Operation(inputs, p.output, self.X.restrict(composite, fillers[0]))


def tau_strict(X, bound=2):
    report = inner_kan_check(X, bound, strict=True)
    if not report["holds"]:
        raise PreconditionError(
            f"{X.name} is not a strict inner Kan complex within {bound} vertices",
            witness=report["witnesses"][0] if report["witnesses"] else None,
        )
    logger.info(f"Reading the operad off {X.name}")
    return TauOperad(X)


def plus_maps(n):
    """(d, u, v) for C_n^+: the bottom unary vertex, the top corolla, and the inner face at 0."""
    P = plus_tree(n)
    C1, C = corolla(1), corolla(n)
    d = OmegaMorphism(C1, P, {"1": "0", "0": "r"}, {"0": Subtree(P, "r", ["r"])})
    u = subtree_inclusion(Subtree(P, "0", ["0"]))
    face = inner_face(P, "0")
    v = compose(face, corolla_iso(C, face.source))
    return d, u, v


def tau0_operations(X, inputs, output, bound=2):
    """Corolla dendrices at the profile, grouped by the relation generated by C_n^+ witnesses."""
    report = inner_kan_check(X, bound, strict=False)
    if not report["holds"]:
        raise PreconditionError(
            f"{X.name} is not an inner Kan complex within {bound} vertices",
            witness=report["witnesses"][0] if report["witnesses"] else None,
        )
    inputs = tuple(inputs)
    n = len(inputs)
    C = corolla(n)
    members = [x for x in X.eval(C) if profile_of(X, C, x) == (inputs, output)]
    graph = nx.Graph()
    graph.add_nodes_from(members)
    d, u, v = plus_maps(n)
    for h in X.eval(d.target):
        if not is_degenerate(X, d.source, X.restrict(d, h)):
            continue
        p, q = X.restrict(u, h), X.restrict(v, h)
        if p in graph and q in graph:
            graph.add_edge(p, q)
    classes = [sorted(c, key=repr) for c in nx.connected_components(graph)]
    classes.sort(key=lambda c: repr(c[0]))
    logger.info(f"{len(members)} corolla dendrices of {X.name} fall into {len(classes)} classes")
    return classes
