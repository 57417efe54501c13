"""The homotopy coherent nerve of a simplicial operad.

A dendrex at T is a map of simplicial operads W(T) -> P: an edge colouring
and, for every subtree V with at least one vertex, a map of the cube on the
inner edges of V into the operation space of P at the colours of V. On the
face {x_e = 1} the map of V is the composite of the maps of the two halves
of V cut at e. Only the all-zero corner of each cube is a free choice.
"""
import logging

from ..dendroidal.dset import DendroidalSet
from ..errors import DimensionBoundError
from ..operads.operad import Operation, matching_permutation
from ..trees.tree import Subtree
from .w_construction import cube_vertices, named_cube, w_point_direct

logger = logging.getLogger(__name__)


def split_at(V, e):
    """V cut at its inner edge e: the part below e and the part rooted at e."""
    host = V.host
    upper = set()
    stack = [e]
    while stack:
        key = stack.pop()
        if key in V.vertices:
            upper.add(key)
            stack.extend(host.vertex_at[key].inputs)
    return Subtree(host, V.root, V.vertices - upper), Subtree(host, e, upper)


class HcNerve(DendroidalSet):
    def __init__(self, S):
        super().__init__()
        self.S = S
        self.name = f"hcN({S.name})"
        self.max_arity = S.arity_cap

    @staticmethod
    def token(colouring, cube_maps):
        return (
            tuple(sorted(colouring.items())),
            tuple(sorted((key, tuple(sorted(values.items()))) for key, values in cube_maps.items())),
        )

    @staticmethod
    def colouring(x):
        return dict(x[0])

    @staticmethod
    def cube_maps(x):
        return {key: dict(values) for key, values in x[1]}

    @staticmethod
    def colour_token(colour, name="0"):
        return ((name, colour),), ()

    def _check_level(self, T):
        if len(T.inner_edges) > self.S.level_bound:
            raise DimensionBoundError(
                f"{T.describe()} has {len(T.inner_edges)} inner edges, above the level bound "
                f"{self.S.level_bound} of {self.S.name}",
                witness={"tree": T.describe(), "level_bound": self.S.level_bound},
            )

    def _vertex_op(self, colouring, V, value):
        return Operation(tuple(colouring[e] for e in V.leaves), colouring[V.root], value)

    def _forced(self, colouring, maps, V, corner):
        """Values at ``corner`` implied by grafting, one per coordinate equal to 1."""
        out = []
        coords = dict(corner)
        for e, x in corner:
            if x != 1:
                continue
            lower, upper = split_at(V, e)
            low = maps[lower.key()][tuple((d, coords[d]) for d in sorted(lower.inner_edges))]
            up = maps[upper.key()][tuple((d, coords[d]) for d in sorted(upper.inner_edges))]
            j = lower.leaves.index(e)
            composite = self.S.compose_vertex(
                self._vertex_op(colouring, lower, low), j, self._vertex_op(colouring, upper, up)
            )
            out.append(composite.label)
        return out

    def _cube_maps(self, T, colouring, corollas):
        """Extend the corolla values to every subtree, yielding each coherent family."""
        subtrees = sorted((V for V in T.subtrees if len(V.vertices) > 1), key=lambda V: (len(V.vertices), V.key()))
        maps = {T.subtree(k, [k]).key(): {(): value} for k, value in corollas.items()}

        def extend(idx):
            if idx == len(subtrees):
                yield {key: dict(values) for key, values in maps.items()}
                return
            V = subtrees[idx]
            space = self.S.op_space(tuple(colouring[e] for e in V.leaves), colouring[V.root])
            corners = cube_vertices(V.inner_edges)
            forced = {}
            for corner in corners[1:]:
                values = set(self._forced(colouring, maps, V, corner))
                if len(values) != 1:
                    return
                forced[corner] = values.pop()
            chains = named_cube(V.inner_edges).simplices
            for start in space.vertices:
                values = dict(forced)
                values[corners[0]] = start
                if all(space.contains(tuple(values[c] for c in chain)) for chain in chains):
                    maps[V.key()] = values
                    yield from extend(idx + 1)
            maps.pop(V.key(), None)

        yield from extend(0)

    def _eval(self, T):
        self._check_level(T)
        if any(len(V.leaves) > self.S.arity_cap for V in T.subtrees):
            return
        vertex_ops = self.S.vertex_operad()
        order = [e for e in T.edge_order if e in T.vertex_at]
        colouring, corollas = {}, {}

        def assign(idx):
            if idx == len(order):
                for maps in self._cube_maps(T, colouring, corollas):
                    yield self.token(colouring, maps)
                return
            key = order[idx]
            vertex = T.vertex_at[key]
            for op in vertex_ops.operations_into(colouring[key], vertex.arity):
                for e, c in zip(vertex.inputs, op.inputs):
                    colouring[e] = c
                corollas[key] = op.label[0]
                yield from assign(idx + 1)
            corollas.pop(key, None)
            for e in vertex.inputs:
                colouring.pop(e, None)

        for c in self.S.colours:
            colouring[T.root] = c
            yield from assign(0)
        colouring.clear()
        logger.debug(f"Evaluated {self.name} at {T.describe()}")

    def value(self, x, V, coords):
        """The vertex of P that the dendrex x assigns to the point (V, coords) of W(T)."""
        colouring = self.colouring(x)
        if V.is_bare:
            return self.S.identity_vertex(colouring[V.root])
        return self.cube_maps(x)[V.key()][tuple(sorted(coords.items()))]

    def restrict(self, phi, x):
        S, T = phi.source, phi.target
        self._check_level(S)
        colouring = self.colouring(x)
        new_colouring = {d: colouring[e] for d, e in phi.edge_map.items()}
        new_maps = {}
        for U in S.subtrees:
            if U.is_bare:
                continue
            wanted = list(phi.listing(U.leaves))
            values = {}
            for corner in cube_vertices(U.inner_edges):
                image, moved = w_point_direct(phi, U, dict(corner))
                value = self.value(x, image, moved)
                if not image.is_bare:
                    op = self._vertex_op(colouring, image, value)
                    value = self.S.act_vertex(op, matching_permutation(wanted, list(image.leaves))).label
                values[corner] = value
            new_maps[U.key()] = values
        return self.token(new_colouring, new_maps)

    @property
    def provenance(self):
        return {"kind": "hc_nerve", "operad": self.S.name}


def hc_nerve(S):
    return HcNerve(S)
