from graphviz import Digraph


def tree_to_dot(tree, name="tree"):
    """Vertices are DOT nodes, tree edges are DOT edges labelled by their id."""
    dot = Digraph(name=name)
    dot.attr(rankdir="BT")
    for v in tree.vertices:
        dot.node(f"v_{v.output}", label=f"{v.output}", shape="circle")
    for e in sorted(tree.edges):
        head = f"v_{tree.parent[e]}" if e in tree.parent else f"root_{e}"
        tail = f"v_{e}" if e in tree.vertex_at else f"leaf_{e}"
        if e not in tree.parent:
            dot.node(head, label="", shape="point")
        if e not in tree.vertex_at:
            dot.node(tail, label="", shape="point")
        dot.edge(tail, head, label=e)
    return dot.source


def trees_to_dot(trees):
    return "\n".join(tree_to_dot(t, name=f"tree{i}") for i, t in enumerate(trees))
