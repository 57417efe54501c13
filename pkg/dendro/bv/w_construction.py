"""The Boardman-Vogt resolution W(T) of a tree.

W(T)(e_1, ..., e_n; e) is the disjoint union, over subtrees V with that
profile, of the cube [0, 1]^{i(V)} on the inner edges of V. A point of a cube
is a tuple of ``(inner edge, 0 or 1)`` pairs sorted by edge. Grafting gives
the new inner edge length 1.
"""
import logging
from itertools import product

from ..errors import InputError
from ..operads.operad import Operation
from ..operads.simplicial_operad import SimplicialOperad
from ..simplicial.sset import SimplicialMap, SimplicialSet, cube, cube_boundary, disjoint_union
from ..trees.omega import compose, decompose, hom_omega, inner_face
from ..trees.tree import Subtree

logger = logging.getLogger(__name__)


def named_cube(edges):
    """cube(len(edges)) with coordinates named by ``edges``."""
    edges = sorted(edges)

    def name(point):
        return tuple(zip(edges, point))

    C = cube(len(edges))
    return SimplicialSet([tuple(name(p) for p in s) for s in C.simplices], len(edges), f"cube{edges}")


def cube_vertices(edges):
    edges = sorted(edges)
    return [tuple(zip(edges, bits)) for bits in product((0, 1), repeat=len(edges))]


class WOperationSpace:
    def __init__(self, tree, inputs, output):
        tree.check_edges(list(inputs) + [output])
        self.tree = tree
        self.inputs = tuple(inputs)
        self.output = output
        self.components = {}
        if len(set(self.inputs)) == len(self.inputs):
            for V in tree.subtrees_at(output, len(self.inputs)):
                if set(V.leaves) == set(self.inputs):
                    self.components[V] = named_cube(V.inner_edges)
        self.space = disjoint_union(
            [(V.key(), C) for V, C in sorted(self.components.items(), key=lambda item: item[0].key())],
            f"W({tree.describe()}){list(self.inputs)}->{output}",
        )

    def __repr__(self):
        return f"WOperationSpace({self.tree.describe()}, {list(self.inputs)} -> {self.output}, {len(self.components)} components)"

    def vertex(self, V, coords):
        return V.key(), tuple(sorted(coords.items()))

    def to_json(self):
        return {
            "tree": self.tree.describe(),
            "inputs": list(self.inputs),
            "output": self.output,
            "components": [
                {"root": V.root, "vertices": sorted(V.vertices), "inner_edges": sorted(V.inner_edges), "dimension": C.dimension}
                for V, C in sorted(self.components.items(), key=lambda item: item[0].key())
            ],
        }


def w_op_space(tree, inputs, output):
    return WOperationSpace(tree, inputs, output)


def full_profile(tree):
    return tree.leaves, tree.root


def _subtree_of(tree, key):
    root, vertices = key
    return Subtree(tree, root, vertices)


def move_point(phi, V, coords, rule):
    """Image of the point (V, coords) of W(source) under W(phi).

    ``rule`` combines the coordinates of inner edges of V sent to one inner
    edge of the image; an image inner edge with no preimage gets 0.
    """
    image = phi.image_subtree(V)
    moved = {}
    for e_new in image.inner_edges:
        pre = [coords[e] for e in V.inner_edges if phi.edge_map[e] == e_new]
        moved[e_new] = rule(pre) if pre else 0
    return image, moved


def _step_point(step, V, coords):
    if step.kind == "degeneracy":
        # merged edges take the max of their lengths
        return move_point(step.morphism, V, coords, max)
    if step.kind == "inner_face":
        # the contracted edge comes back with length 0
        return move_point(step.morphism, V, coords, _single)
    if step.kind == "outer_face":
        image = step.morphism.image_subtree(V)
        return image, dict(coords)
    return move_point(step.morphism, V, coords, _single)


def _single(values):
    if len(values) != 1:
        raise InputError(f"Expected exactly one coordinate, got {values}")
    return values[0]


def w_point(phi, V, coords):
    """W(phi) on one point, through the elementary factorization of phi."""
    for step in decompose(phi):
        V, coords = _step_point(step, V, coords)
    return V, coords


def w_point_direct(phi, V, coords):
    """W(phi) on one point in one go: max over merged edges, 0 on new edges."""
    return move_point(phi, V, coords, max)


def w_map(phi, inputs=None, output=None, direct=False):
    """The simplicial map W(S)(profile) -> W(T)(phi(profile)) for phi: S -> T."""
    S, T = phi.source, phi.target
    if inputs is None:
        inputs, output = full_profile(S)
    source = w_op_space(S, inputs, output)
    target = w_op_space(T, phi.listing(inputs), phi.edge_map[output])
    point = w_point_direct if direct else w_point
    vertex_map = {}
    for V in source.components:
        for c in cube_vertices(V.inner_edges):
            image, moved = point(phi, V, dict(c))
            vertex_map[(V.key(), c)] = target.vertex(image, moved)
    return SimplicialMap(source.space, target.space, vertex_map)


def w_compose(left, right, graft_edge):
    """Graft the point ``right`` onto the input ``graft_edge`` of ``left``.

    Points are ``(subtree, coords)`` pairs in one host tree.
    """
    (V1, c1), (V2, c2) = left, right
    if V1.host != V2.host or V2.root != graft_edge or graft_edge not in V1.leaves:
        raise InputError(f"Cannot graft at {graft_edge!r}")
    if not V2.vertices:
        return V1, dict(c1)
    if not V1.vertices:
        return V2, dict(c2)
    coords = dict(c1)
    coords.update(c2)
    coords[graft_edge] = 1
    return Subtree(V1.host, V1.root, V1.vertices | V2.vertices), coords


def w_compose_simplex(left, right, graft_edge):
    """Coordinatewise grafting of two simplices given as point sequences."""
    if len(left) != len(right):
        raise InputError("Simplices of different dimensions do not compose")
    return tuple(w_compose(a, b, graft_edge) for a, b in zip(left, right))


class WOperad(SimplicialOperad):
    """W(T) as a simplicial operad; vertices are (subtree key, coords)."""

    def __init__(self, tree, level_bound=None):
        level_bound = max(1, len(tree.inner_edges)) if level_bound is None else level_bound
        super().__init__(tree.edges, level_bound, max([len(s.leaves) for s in tree.subtrees] + [1]))
        self.tree = tree
        self.name = f"W({tree.describe()})"
        self._spaces = {}

    def op_space(self, inputs, output):
        key = (tuple(inputs), output)
        if key not in self._spaces:
            self._spaces[key] = w_op_space(self.tree, *key).space
        return self._spaces[key]

    def identity_vertex(self, c):
        return (c, ()), ()

    def compose_vertex(self, p, i, q):
        (kp, cp), (kq, cq) = p.label, q.label
        V, coords = w_compose(
            (_subtree_of(self.tree, kp), dict(cp)), (_subtree_of(self.tree, kq), dict(cq)), p.inputs[i]
        )
        inputs = p.inputs[:i] + q.inputs + p.inputs[i + 1:]
        return Operation(inputs, p.output, (V.key(), tuple(sorted(coords.items()))))

    def act_vertex(self, p, perm):
        return Operation(tuple(p.inputs[s] for s in perm), p.output, p.label)


def w_operad(tree, level_bound=None):
    return WOperad(tree, level_bound)


def horn_image_space(tree, edge):
    """The part of W(tree) at the full profile generated by the faces of Lambda^edge[tree].

    Inner faces at other edges contribute their images {x_e = 0}; grafting
    operations from outer faces contribute {x_e = 1} for every inner edge.
    """
    if edge not in tree.inner_edges:
        raise InputError(f"{edge!r} is not an inner edge of {tree.describe()}")
    inputs, output = full_profile(tree)
    full = w_op_space(tree, inputs, output)
    simplices = set()
    for e in sorted(tree.inner_edges - {edge}):
        face = inner_face(tree, e)
        f = w_map(face, *full_profile(face.source))
        simplices |= f.image().simplices
    for e in sorted(tree.inner_edges):
        grafted = full.space.restrict_to(lambda s, e=e: all(dict(v[1])[e] == 1 for v in s))
        simplices |= grafted.simplices
    return SimplicialSet(simplices, full.space.dimension_bound, f"horn image {edge} in {full.space.name}")


def horn_image_formula(tree, edge):
    """Delta[1]^{i - edge} x {1} union boundary(Delta[1]^{i - edge}) x Delta[1], in named coordinates."""
    inputs, output = full_profile(tree)
    key = Subtree(tree, tree.root, tree.vertex_at).key()
    others = sorted(tree.inner_edges - {edge})
    m = len(others)
    rest = cube(m)
    boundary_rest = cube_boundary(m)

    def name(point, x):
        coords = dict(zip(others, point))
        coords[edge] = x
        return key, tuple(sorted(coords.items()))

    simplices = set()
    for s in rest.simplices:
        simplices.add(tuple(name(p, 1) for p in s))
    for s in boundary_rest.simplices:
        # s x Delta[1] as the union of its prisms
        for cut in range(len(s)):
            simplices.add(tuple(name(p, 0) for p in s[: cut + 1]) + tuple(name(p, 1) for p in s[cut:]))
    space = w_op_space(tree, inputs, output).space
    return SimplicialSet(simplices, space.dimension_bound, f"horn formula {edge}")


def profiles(tree):
    """Profiles (leaves; root) of the subtrees of ``tree``, the ones where W(tree) is nonempty."""
    return sorted({s.profile for s in tree.subtrees})


def check_w_map(phi):
    """W(phi) is simplicial and agrees with the closed formula, on every profile."""
    problems = []
    for inputs, output in profiles(phi.source):
        stepwise = w_map(phi, inputs, output)
        if not stepwise.is_valid():
            problems.append({"morphism": repr(phi), "profile": [list(inputs), output], "problem": "not simplicial"})
        elif stepwise != w_map(phi, inputs, output, direct=True):
            problems.append({"morphism": repr(phi), "profile": [list(inputs), output], "problem": "formula mismatch"})
    return problems


def check_functoriality(trees):
    """W(psi o phi) = W(psi) W(phi) for composable pairs among ``trees``."""
    homs = {(S, T): hom_omega(S, T) for S in trees for T in trees}
    pairs = 0
    problems = []
    for S in trees:
        for T in trees:
            for phi in homs[(S, T)]:
                for U in trees:
                    for psi in homs[(T, U)]:
                        pairs += 1
                        composite = compose(psi, phi)
                        for inputs, output in profiles(S):
                            first = w_map(phi, inputs, output)
                            second = w_map(psi, phi.listing(inputs), phi.edge_map[output])
                            if w_map(composite, inputs, output) != first.then(second):
                                problems.append(
                                    {"phi": repr(phi), "psi": repr(psi), "profile": [list(inputs), output]}
                                )
    logger.info(f"Checked W on {pairs} composable pairs over {len(trees)} trees: {len(problems)} problems")
    return {"holds": not problems, "pairs": pairs, "problems": problems}
