from functools import cached_property

from ..errors import InputError

LEAF_CODE = "L"


class Vertex:
    """A vertex of a tree, keyed by its output edge."""

    __slots__ = ("inputs", "output")

    def __init__(self, inputs, output):
        self.inputs = tuple(inputs)
        self.output = output

    @property
    def arity(self):
        return len(self.inputs)

    def __eq__(self, other):
        return isinstance(other, Vertex) and self.inputs == other.inputs and self.output == other.output

    def __hash__(self):
        return hash((self.inputs, self.output))

    def __repr__(self):
        return f"Vertex({list(self.inputs)} -> {self.output})"


class Tree:
    """A finite rooted tree, seen as an object of the category of trees.

    Edges are opaque strings. A vertex is stored with an ordered list of input
    edges; the order is a planar representative only, equality of trees up to
    isomorphism is decided by ``canonical_code``.
    """

    def __init__(self, vertices, root, edges=None):
        vertex_list = [v if isinstance(v, Vertex) else Vertex(v[0], v[1]) for v in vertices]
        vertex_at = {}
        for v in vertex_list:
            if v.output in vertex_at:
                raise InputError(f"Edge {v.output!r} is the output of two vertices")
            vertex_at[v.output] = v

        mentioned = {root}
        for v in vertex_list:
            mentioned.add(v.output)
            mentioned.update(v.inputs)
        edge_set = frozenset(mentioned if edges is None else edges)
        if not mentioned <= edge_set:
            raise InputError(f"Vertices mention edges outside the edge set: {sorted(mentioned - edge_set)}")

        parent = {}
        for v in vertex_list:
            if len(set(v.inputs)) != len(v.inputs):
                raise InputError(f"Vertex {v!r} lists an input edge twice")
            for e in v.inputs:
                if e in parent:
                    raise InputError(f"Edge {e!r} is an input of two vertices")
                parent[e] = v.output
        if root in parent:
            raise InputError(f"Root {root!r} is the input of a vertex")

        # every edge must be reachable from the root going up
        seen = set()
        stack = [root]
        while stack:
            e = stack.pop()
            if e in seen:
                raise InputError(f"Edge {e!r} reached twice; the graph has a cycle")
            seen.add(e)
            if e in vertex_at:
                stack.extend(vertex_at[e].inputs)
        if seen != edge_set:
            raise InputError(f"Edges not connected to the root: {sorted(edge_set - seen)}")

        self.root = root
        self.edges = edge_set
        self.vertex_at = vertex_at
        self.parent = parent
        self.vertices = tuple(vertex_at[k] for k in sorted(vertex_at))
        self._key = (root, self.vertices)
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, Tree) and self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tree({self.describe()})"

    def describe(self):
        if not self.vertices:
            return f"eta[{self.root}]"
        parts = [f"{','.join(v.inputs)}->{v.output}" for v in self.vertices]
        return "; ".join(parts)

    @property
    def vertex_keys(self):
        return tuple(sorted(self.vertex_at))

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def is_eta(self):
        return not self.vertices

    @cached_property
    def leaves(self):
        """Leaves in planar depth-first order."""
        return tuple(self.leaves_above(self.root))

    def leaves_above(self, edge, within=None):
        out = []
        stack = [edge]
        while stack:
            e = stack.pop()
            if e in self.vertex_at and (within is None or e in within):
                stack.extend(reversed(self.vertex_at[e].inputs))
            else:
                out.append(e)
        return out

    @cached_property
    def inner_edges(self):
        return frozenset(e for e in self.vertex_at if e in self.parent)

    @cached_property
    def is_linear(self):
        return all(v.arity == 1 for v in self.vertices)

    @cached_property
    def max_arity(self):
        return max((v.arity for v in self.vertices), default=0)

    @cached_property
    def edge_order(self):
        """Edges in planar preorder from the root."""
        out = []
        stack = [self.root]
        while stack:
            e = stack.pop()
            out.append(e)
            if e in self.vertex_at:
                stack.extend(reversed(self.vertex_at[e].inputs))
        return tuple(out)

    def edge_code(self, edge):
        return self._codes[edge]

    @cached_property
    def _codes(self):
        codes = {}
        for e in reversed(self.edge_order):
            if e in self.vertex_at:
                children = sorted(codes[i] for i in self.vertex_at[e].inputs)
                codes[e] = "(" + "".join(children) + ")"
            else:
                codes[e] = LEAF_CODE
        return codes

    @cached_property
    def code(self):
        return self._codes[self.root]

    @cached_property
    def canonical_code(self):
        return self.code.encode("ascii")

    def is_isomorphic(self, other):
        return self.canonical_code == other.canonical_code

    @cached_property
    def canonical_naming(self):
        """Map from this tree's edge names to canonical names ``e0, e1, ...``.

        Inputs are visited in order of their codes, ties broken by planar
        position, so isomorphic trees get identical canonical trees.
        """
        names = {}
        stack = [self.root]
        while stack:
            e = stack.pop()
            names[e] = f"e{len(names)}"
            if e in self.vertex_at:
                ordered = sorted(self.vertex_at[e].inputs, key=lambda i: self._codes[i])
                stack.extend(reversed(ordered))
        return names

    @cached_property
    def canonical(self):
        names = self.canonical_naming
        vertices = []
        for v in self.vertices:
            ordered = sorted(v.inputs, key=lambda i: names[i])
            vertices.append(Vertex([names[i] for i in ordered], names[v.output]))
        return Tree(vertices, names[self.root])

    def rename(self, mapping):
        """The same tree with edges renamed; ``mapping`` must be injective."""
        vertices = [Vertex([mapping[i] for i in v.inputs], mapping[v.output]) for v in self.vertices]
        return Tree(vertices, mapping[self.root])

    @cached_property
    def subtrees(self):
        return tuple(
            Subtree(self, e, vs) for e in self.edge_order for vs in self._rooted_vertex_sets(e)
        )

    def _rooted_vertex_sets(self, edge):
        if edge not in self.vertex_at:
            return [frozenset()]
        options = [frozenset([edge])]
        for i in self.vertex_at[edge].inputs:
            options = [acc | extra for acc in options for extra in self._rooted_vertex_sets(i)]
        return [frozenset()] + options

    @cached_property
    def _subtrees_by_root_arity(self):
        index = {}
        for s in self.subtrees:
            index.setdefault((s.root, len(s.leaves)), []).append(s)
        return index

    def subtrees_at(self, root, arity):
        return self._subtrees_by_root_arity.get((root, arity), [])

    def subtree(self, root, vertices=()):
        return Subtree(self, root, frozenset(vertices))

    def check_edges(self, edges):
        unknown = [e for e in edges if e not in self.edges]
        if unknown:
            raise InputError(f"Unknown edge ids {unknown} for tree {self.describe()}")


class Subtree:
    """A subtree of ``host``: a root edge plus a set of vertices closed toward it."""

    __slots__ = ("host", "root", "vertices", "_hash")

    def __init__(self, host, root, vertices):
        self.host = host
        self.root = root
        self.vertices = frozenset(vertices)
        self._hash = hash((host._hash, root, self.vertices))

    def __eq__(self, other):
        return (
            isinstance(other, Subtree)
            and self.root == other.root
            and self.vertices == other.vertices
            and self.host == other.host
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subtree(root={self.root}, vertices={sorted(self.vertices)})"

    @property
    def is_bare(self):
        return not self.vertices

    def is_valid(self):
        if self.root not in self.host.edges or not self.vertices <= set(self.host.vertex_at):
            return False
        if not self.vertices:
            return True
        if self.root not in self.vertices:
            return False
        return all(v == self.root or self.host.parent.get(v) in self.vertices for v in self.vertices)

    @property
    def leaves(self):
        """Leaf edges in planar order inherited from the host."""
        return tuple(self.host.leaves_above(self.root, within=self.vertices))

    @property
    def inner_edges(self):
        return frozenset(v for v in self.vertices if v != self.root)

    @property
    def edges(self):
        out = {self.root}
        for v in self.vertices:
            out.update(self.host.vertex_at[v].inputs)
        return frozenset(out)

    @property
    def profile(self):
        return self.leaves, self.root

    def as_tree(self):
        return Tree([self.host.vertex_at[v] for v in self.vertices], self.root)

    def key(self):
        return self.root, tuple(sorted(self.vertices))
