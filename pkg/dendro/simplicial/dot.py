from graphviz import Digraph


def space_to_dot(X, name="space"):
    """The 1-skeleton of a simplicial set, edges oriented from first to last vertex."""
    dot = Digraph(name=name)
    ids = {v: f"n{i}" for i, v in enumerate(X.vertices)}
    for v, node in ids.items():
        dot.node(node, label=str(v))
    for a, b in X.nondegenerate(1) if X.dimension >= 1 else []:
        dot.edge(ids[a], ids[b])
    return dot.source
