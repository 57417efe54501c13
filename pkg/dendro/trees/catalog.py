import json
import logging
import os
import re

from ..errors import InputError
from .tree import Tree, Vertex

logger = logging.getLogger(__name__)


def eta(name="0"):
    return Tree([], name)


def corolla(n, leaves=None, root="0"):
    """C_n. Leaves default to ``1..n`` and the root to ``0``."""
    if n < 0:
        raise InputError(f"Corolla arity must be non-negative, got {n}")
    leaves = [str(i) for i in range(1, n + 1)] if leaves is None else list(leaves)
    if len(leaves) != n:
        raise InputError(f"Corolla C{n} needs {n} leaf names, got {len(leaves)}")
    return Tree([Vertex(leaves, root)], root)


def linear_tree(k):
    """The linear tree with ``k`` unary vertices, edges ``0`` (root) to ``k`` (leaf)."""
    return Tree([Vertex([str(i + 1)], str(i)) for i in range(k)], "0")


def two_vertex_tree():
    """T2: binary vertex u on top of binary vertex b along the inner edge t."""
    return Tree([Vertex(["l1", "l2"], "t"), Vertex(["t", "l3"], "r")], "r")


def comb(k):
    """Left comb of ``k`` binary vertices; ``comb(2)`` is T2 up to names."""
    if k == 0:
        return eta("r")
    vertices = []
    below = "r"
    for i in range(k, 0, -1):
        above = f"t{i - 1}" if i > 1 else "l1"
        right = f"l{i + 1}"
        vertices.append(Vertex([above, right], below))
        below = above
    return Tree(vertices, "r")


def plus_tree(n):
    """C_n^+: the corolla C_n (root ``0``) with a unary vertex ``0 -> r`` below it."""
    top = corolla(n)
    return Tree(list(top.vertices) + [Vertex(["0"], "r")], "r")


def graft(S, T, leaf):
    """Graft T onto the leaf ``leaf`` of S; T's root is renamed to ``leaf``."""
    if leaf not in S.leaves:
        raise InputError(f"{leaf!r} is not a leaf of {S.describe()}")
    T = T.rename({e: (leaf if e == T.root else e) for e in T.edges})
    clash = (S.edges & T.edges) - {leaf}
    if clash:
        raise InputError(f"Cannot graft, edge names overlap: {sorted(clash)}")
    return Tree(list(S.vertices) + list(T.vertices), S.root)


CATALOG_PATTERNS = [
    (re.compile(r"^eta$"), lambda m: eta()),
    (re.compile(r"^C(\d+)$"), lambda m: corolla(int(m.group(1)))),
    (re.compile(r"^L(\d+)$"), lambda m: linear_tree(int(m.group(1)))),
    (re.compile(r"^T2$"), lambda m: two_vertex_tree()),
    (re.compile(r"^comb(\d+)$"), lambda m: comb(int(m.group(1)))),
    (re.compile(r"^P(\d+)$"), lambda m: plus_tree(int(m.group(1)))),
]


def named_tree(name):
    for pattern, build in CATALOG_PATTERNS:
        match = pattern.match(name)
        if match:
            return build(match)
    raise InputError(f"Unknown tree name {name!r}")


def load_tree(ref):
    """A tree from a catalogue name or the path of a JSON tree file."""
    from .schemas import TreeModel

    if os.path.exists(ref):
        try:
            with open(ref) as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"Could not read tree file {ref}: {e}") from e
        logger.debug(f"Loaded tree from {ref}")
        return TreeModel.parse_payload(payload).to_tree()
    return named_tree(ref)
