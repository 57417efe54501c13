"""Enumeration of trees up to isomorphism.

``enumerate_trees`` generates canonical codes directly; ``brute_force_trees``
grows every labelled tree and deduplicates with networkx isomorphism, and is
kept as the independent check.
"""
import logging
from itertools import combinations_with_replacement

import networkx as nx

from .tree import LEAF_CODE, Tree, Vertex

logger = logging.getLogger(__name__)


def code_vertices(code):
    return code.count("(")


def tree_from_code(code):
    counter = [0]
    vertices = []

    def build(pos):
        name = f"e{counter[0]}"
        counter[0] += 1
        if code[pos] == LEAF_CODE:
            return name, pos + 1
        pos += 1
        inputs = []
        while code[pos] != ")":
            child, pos = build(pos)
            inputs.append(child)
        vertices.append(Vertex(inputs, name))
        return name, pos + 1

    root, _ = build(0)
    return Tree(vertices, root).canonical


def _codes_by_size(max_vertices, max_arity):
    by_size = {0: [LEAF_CODE]}
    for v in range(1, max_vertices + 1):
        smaller = sorted(c for size in range(v) for c in by_size[size])
        found = set()
        for arity in range(max_arity + 1):
            for children in combinations_with_replacement(smaller, arity):
                if sum(code_vertices(c) for c in children) == v - 1:
                    found.add("(" + "".join(sorted(children)) + ")")
        by_size[v] = sorted(found)
    return by_size


def enumerate_trees(max_vertices, max_arity):
    """One tree per isomorphism class, with at most the given size and arity."""
    by_size = _codes_by_size(max_vertices, max_arity)
    trees = [tree_from_code(c) for size in sorted(by_size) for c in by_size[size]]
    logger.info(f"Enumerated {len(trees)} trees with max_vertices={max_vertices} max_arity={max_arity}")
    return trees


def to_graph(tree):
    """Tree as a networkx digraph: edges and vertices are nodes, marked by kind."""
    graph = nx.DiGraph()
    for e in tree.edges:
        graph.add_node(("edge", e), kind="root" if e == tree.root else "edge")
    for v in tree.vertices:
        graph.add_node(("vertex", v.output), kind="vertex")
        graph.add_edge(("vertex", v.output), ("edge", v.output))
        for i in v.inputs:
            graph.add_edge(("edge", i), ("vertex", v.output))
    return graph


def networkx_isomorphic(S, T):
    return nx.is_isomorphic(to_graph(S), to_graph(T), node_match=lambda a, b: a["kind"] == b["kind"])


def brute_force_trees(max_vertices, max_arity):
    """Grow trees by attaching vertices at leaves, then dedupe by graph isomorphism."""
    layer = [Tree([], "x")]
    found = list(layer)
    for _ in range(max_vertices):
        grown = []
        for tree in layer:
            for leaf in tree.leaves:
                for arity in range(max_arity + 1):
                    fresh = [f"{leaf}.{j}" for j in range(arity)]
                    grown.append(Tree(list(tree.vertices) + [Vertex(fresh, leaf)], tree.root))
        layer = []
        for tree in grown:
            if not any(networkx_isomorphic(tree, other) for other in layer):
                layer.append(tree)
        found.extend(layer)
    return found
