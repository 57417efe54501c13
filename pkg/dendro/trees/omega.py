"""Morphisms of the category of trees.

A morphism S -> T is a map of the free operads on S and T. It is given by an
edge map and, for every vertex of S, the subtree of T its generator is sent
to. Any assignment whose profiles match is a morphism, which is what
``hom_omega`` enumerates.
"""
import logging
from collections import namedtuple
from itertools import permutations

from ..errors import InputError
from .tree import Subtree, Tree, Vertex

logger = logging.getLogger(__name__)

ElementaryMorphisms = namedtuple("ElementaryMorphisms", ["inner_faces", "outer_faces", "degeneracies"])
Step = namedtuple("Step", ["kind", "morphism"])


class OmegaMorphism:
    __slots__ = ("source", "target", "edge_map", "vertex_map", "_hash")

    def __init__(self, source, target, edge_map, vertex_map):
        self.source = source
        self.target = target
        self.edge_map = dict(edge_map)
        self.vertex_map = dict(vertex_map)
        self._hash = hash(
            (
                source,
                target,
                tuple(sorted(self.edge_map.items())),
                tuple(sorted((k, s.key()) for k, s in self.vertex_map.items())),
            )
        )

    def __eq__(self, other):
        return (
            isinstance(other, OmegaMorphism)
            and self._hash == other._hash
            and self.source == other.source
            and self.target == other.target
            and self.edge_map == other.edge_map
            and self.vertex_map == other.vertex_map
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        edges = ", ".join(f"{k}->{v}" for k, v in sorted(self.edge_map.items()))
        return f"OmegaMorphism({self.source.describe()} => {self.target.describe()}: {edges})"

    def is_valid(self):
        S, T = self.source, self.target
        if set(self.edge_map) != set(S.edges) or set(self.vertex_map) != set(S.vertex_at):
            return False
        if any(e not in T.edges for e in self.edge_map.values()):
            return False
        for key, vertex in S.vertex_at.items():
            image = self.vertex_map[key]
            if image.host != T or not image.is_valid():
                return False
            if image.root != self.edge_map[key]:
                return False
            mapped = [self.edge_map[d] for d in vertex.inputs]
            if len(set(mapped)) != len(mapped) or set(mapped) != set(image.leaves):
                return False
        return True

    @property
    def is_mono(self):
        return len(set(self.edge_map.values())) == len(self.edge_map)

    @property
    def is_epi(self):
        return set(self.edge_map.values()) == set(self.target.edges) and self.image[1] == frozenset(
            self.target.vertex_at
        )

    @property
    def is_iso(self):
        return (
            self.is_mono
            and len(self.source.edges) == len(self.target.edges)
            and self.source.num_vertices == self.target.num_vertices
        )

    @property
    def is_identity(self):
        return self.source == self.target and self == identity(self.source)

    @property
    def image(self):
        vertices = set()
        for s in self.vertex_map.values():
            vertices |= s.vertices
        return frozenset(self.edge_map.values()), frozenset(vertices)

    def image_subtree(self, subtree):
        """The subtree of the target that ``subtree`` of the source is sent to."""
        vertices = set()
        for v in subtree.vertices:
            vertices |= self.vertex_map[v].vertices
        return Subtree(self.target, self.edge_map[subtree.root], vertices)

    def listing(self, leaves):
        return tuple(self.edge_map[e] for e in leaves)

    def to_json(self):
        return {
            "edge_map": dict(sorted(self.edge_map.items())),
            "vertex_map": {
                k: {"root": s.root, "vertices": sorted(s.vertices)} for k, s in sorted(self.vertex_map.items())
            },
        }


def identity(tree):
    return OmegaMorphism(
        tree,
        tree,
        {e: e for e in tree.edges},
        {k: Subtree(tree, k, [k]) for k in tree.vertex_at},
    )


def compose(psi, phi):
    """``psi o phi``: first ``phi: S -> T``, then ``psi: T -> U``."""
    if phi.target != psi.source:
        raise InputError("Morphisms are not composable")
    edge_map = {d: psi.edge_map[e] for d, e in phi.edge_map.items()}
    vertex_map = {k: psi.image_subtree(s) for k, s in phi.vertex_map.items()}
    return OmegaMorphism(phi.source, psi.target, edge_map, vertex_map)


def compose_all(morphisms):
    """Compose a chain given in order of application."""
    result = None
    for m in morphisms:
        result = m if result is None else compose(m, result)
    return result


def hom_omega(S, T):
    """All morphisms S -> T, enumerated root first."""
    order = []
    stack = [S.root]
    while stack:
        e = stack.pop()
        if e in S.vertex_at:
            order.append(e)
            stack.extend(S.vertex_at[e].inputs)

    results = []
    edge_map, vertex_map = {}, {}

    def assign(idx):
        if idx == len(order):
            results.append(OmegaMorphism(S, T, edge_map, vertex_map))
            return
        key = order[idx]
        vertex = S.vertex_at[key]
        for image in T.subtrees_at(edge_map[key], vertex.arity):
            for listing in permutations(image.leaves):
                for d, e in zip(vertex.inputs, listing):
                    edge_map[d] = e
                vertex_map[key] = image
                assign(idx + 1)
        vertex_map.pop(key, None)
        for d in vertex.inputs:
            edge_map.pop(d, None)

    for e in T.edge_order:
        edge_map[S.root] = e
        assign(0)
    edge_map.clear()
    return results


def automorphisms(T):
    return [phi for phi in hom_omega(T, T) if phi.is_iso]


def isomorphism(S, T):
    """Some isomorphism S -> T, or None."""
    if S.canonical_code != T.canonical_code:
        return None
    to_canonical = dict(S.canonical_naming)
    from_canonical = {v: k for k, v in T.canonical_naming.items()}
    edge_map = {e: from_canonical[to_canonical[e]] for e in S.edges}
    return OmegaMorphism(
        S,
        T,
        edge_map,
        {k: Subtree(T, edge_map[k], [edge_map[k]]) for k in S.vertex_at},
    )


def subtree_inclusion(subtree):
    """The monomorphism from a subtree (as a tree) into its host."""
    source = subtree.as_tree()
    host = subtree.host
    return OmegaMorphism(
        source,
        host,
        {e: e for e in source.edges},
        {k: Subtree(host, k, [k]) for k in source.vertex_at},
    )


def contract(T, edge):
    """T/e: the tree with the inner edge ``edge`` contracted."""
    if edge not in T.inner_edges:
        raise InputError(f"Edge {edge!r} is not an inner edge of {T.describe()}")
    upper = T.vertex_at[edge]
    lower_key = T.parent[edge]
    lower = T.vertex_at[lower_key]
    vertices = []
    for v in T.vertices:
        if v.output == edge:
            continue
        if v.output == lower_key:
            inputs = []
            for i in lower.inputs:
                inputs.extend(upper.inputs if i == edge else [i])
            vertices.append(Vertex(inputs, lower_key))
        else:
            vertices.append(v)
    return Tree(vertices, T.root)


def inner_face(T, edge):
    """The inner face T/e -> T; ``edge`` is not in its image."""
    source = contract(T, edge)
    lower_key = T.parent[edge]
    vertex_map = {}
    for k in source.vertex_at:
        vertex_map[k] = Subtree(T, k, [k, edge] if k == lower_key else [k])
    return OmegaMorphism(source, T, {e: e for e in source.edges}, vertex_map)


def outer_faces(T):
    """Monomorphisms from subtrees with exactly one vertex fewer."""
    target_size = T.num_vertices - 1
    if target_size < 0:
        return []
    return [subtree_inclusion(s) for s in T.subtrees if len(s.vertices) == target_size]


def collapse(T, key):
    """T/s for a unary vertex s: the merged edge keeps the output name."""
    vertex = T.vertex_at.get(key)
    if vertex is None or vertex.arity != 1:
        raise InputError(f"{key!r} is not a unary vertex of {T.describe()}")
    below = vertex.inputs[0]
    vertices = []
    for v in T.vertices:
        if v.output == key:
            continue
        if v.output == below:
            vertices.append(Vertex(v.inputs, key))
        else:
            vertices.append(v)
    return Tree(vertices, T.root)


def degeneracy(T, key):
    """sigma_s: T -> T/s sending the unary vertex s to an identity."""
    target = collapse(T, key)
    below = T.vertex_at[key].inputs[0]
    edge_map = {e: (key if e == below else e) for e in T.edges}
    vertex_map = {}
    for k in T.vertex_at:
        if k == key:
            vertex_map[k] = Subtree(target, key, [])
        else:
            image = edge_map[k]
            vertex_map[k] = Subtree(target, image, [image])
    return OmegaMorphism(T, target, edge_map, vertex_map)


def degeneracy_section(T, key):
    """A face T/s -> T splitting ``degeneracy(T, key)``."""
    source = collapse(T, key)
    below = T.vertex_at[key].inputs[0]
    vertex_map = {}
    for k in source.vertex_at:
        if k == key:
            vertex_map[k] = Subtree(T, key, [key, below])
        else:
            vertex_map[k] = Subtree(T, k, [k])
    return OmegaMorphism(source, T, {e: e for e in source.edges}, vertex_map)


def elementary_morphisms(T):
    inner = [inner_face(T, e) for e in sorted(T.inner_edges)]
    outer = outer_faces(T)
    degeneracies = [degeneracy(T, v.output) for v in T.vertices if v.arity == 1]
    return ElementaryMorphisms(inner, outer, degeneracies)


def factorize_epi_mono(phi):
    """Split ``phi`` as a split epimorphism followed by a monomorphism.

    The intermediate tree is named by the target's edges, so the mono is the
    identity on edge names.
    """
    S = phi.source
    collapsed = {k for k, s in phi.vertex_map.items() if s.is_bare}
    kept = [k for k in S.vertex_at if k not in collapsed]
    middle = Tree(
        [Vertex([phi.edge_map[d] for d in S.vertex_at[k].inputs], phi.edge_map[k]) for k in kept],
        phi.edge_map[S.root],
    )
    epi_vertices = {}
    for k in S.vertex_at:
        image = phi.edge_map[k]
        epi_vertices[k] = Subtree(middle, image, [] if k in collapsed else [image])
    epi = OmegaMorphism(S, middle, phi.edge_map, epi_vertices)
    mono = OmegaMorphism(
        middle,
        phi.target,
        {e: e for e in middle.edges},
        {phi.edge_map[k]: phi.vertex_map[k] for k in kept},
    )
    return epi, mono


def factors_through(phi, mono):
    """Whether ``phi`` factors through the monomorphism ``mono``."""
    edges, vertices = phi.image
    mono_edges, mono_vertices = mono.image
    return edges <= mono_edges and vertices <= mono_vertices


def lift(phi, mono):
    """The unique ``psi`` with ``mono o psi == phi``; assumes it exists."""
    inverse = {e: d for d, e in mono.edge_map.items()}
    R = mono.source
    owner = {}
    for k, s in mono.vertex_map.items():
        for v in s.vertices:
            owner[v] = k
    edge_map = {d: inverse[e] for d, e in phi.edge_map.items()}
    vertex_map = {}
    for k, s in phi.vertex_map.items():
        vertex_map[k] = Subtree(R, edge_map[k], {owner[v] for v in s.vertices})
    return OmegaMorphism(phi.source, R, edge_map, vertex_map)


def decompose(phi):
    """Elementary steps, in order of application, whose composite is ``phi``.

    Degeneracies come first, then an isomorphism onto the image, then inner
    faces, then outer faces.
    """
    epi, mono = factorize_epi_mono(phi)
    steps = []

    current = phi.source
    rename = {e: e for e in current.edges}
    for key in sorted(k for k, s in epi.vertex_map.items() if s.is_bare):
        step = degeneracy(current, rename[key])
        steps.append(Step("degeneracy", step))
        for d, e in rename.items():
            rename[d] = step.edge_map[e]
        current = step.target

    middle = epi.target
    iso_edges = {}
    for d, e in rename.items():
        iso_edges[e] = epi.edge_map[d]
    iso = OmegaMorphism(
        current,
        middle,
        iso_edges,
        {k: Subtree(middle, iso_edges[k], [iso_edges[k]]) for k in current.vertex_at},
    )
    steps.append(Step("iso", iso))

    T = mono.target
    image_edges, image_vertices = mono.image
    image_tree = Subtree(T, mono.edge_map[middle.root], image_vertices)

    # contract inner edges inside vertex images, from the image tree downward
    target = image_tree.as_tree()
    mu = OmegaMorphism(
        middle,
        target,
        mono.edge_map,
        {k: Subtree(target, s.root, s.vertices) for k, s in mono.vertex_map.items()},
    )
    faces = []
    while True:
        wide = [(k, s) for k, s in sorted(mu.vertex_map.items()) if len(s.vertices) > 1]
        if not wide:
            break
        edge = min(wide[0][1].inner_edges)
        face = inner_face(target, edge)
        faces.append(face)
        smaller = face.source
        mu = OmegaMorphism(
            middle,
            smaller,
            mu.edge_map,
            {k: Subtree(smaller, s.root, s.vertices - {edge}) for k, s in mu.vertex_map.items()},
        )
        target = smaller
    steps.append(Step("iso", mu))
    steps.extend(Step("inner_face", f) for f in reversed(faces))

    # vertices below the image are only ever removed from the root
    below = set()
    e = image_tree.root
    while e in T.parent:
        e = T.parent[e]
        below.add(e)

    chain = []
    vertices = set(T.vertex_at)
    root = T.root
    while vertices != set(image_vertices) or root != image_tree.root:
        bigger = Subtree(T, root, vertices)
        removable = None
        for v in sorted(vertices - image_vertices - below):
            if not any(i in vertices for i in T.vertex_at[v].inputs) and v != root:
                removable = v
                break
        if removable is None:
            removable = root
            inner = [i for i in T.vertex_at[root].inputs if i in vertices]
            root = inner[0] if inner else image_tree.root
        vertices.discard(removable)
        smaller = Subtree(T, root, vertices)
        chain.append((smaller, bigger))
    for smaller, bigger in reversed(chain):
        small_tree, big_tree = smaller.as_tree(), bigger.as_tree()
        steps.append(
            Step(
                "outer_face",
                OmegaMorphism(
                    small_tree,
                    big_tree,
                    {e: e for e in small_tree.edges},
                    {k: Subtree(big_tree, k, [k]) for k in small_tree.vertex_at},
                ),
            )
        )
    return steps
