"""Simplicial operads truncated at a level bound.

Every operation space is a finite simplicial set whose simplices are vertex
sequences, and composition is given on vertices. A simplex of an operation
space composes with another coordinatewise, so the operad of n-simplices is
``level_operad(n)``.
"""
import logging

from ..errors import DimensionBoundError, InputError, PreconditionError
from ..simplicial.invariants import components
from ..simplicial.sset import SimplicialSet, disjoint_union, power
from .operad import IDENTITY_LABEL, FiniteOperad, Operation

logger = logging.getLogger(__name__)


class SimplicialOperad:
    """Subclasses provide ``op_space``, ``identity_vertex``, ``compose_vertex`` and ``act_vertex``.

    ``compose_vertex`` and ``act_vertex`` work on vertex operations, i.e.
    ``Operation(inputs, output, vertex)``.
    """

    name = "simplicial operad"

    def __init__(self, colours, level_bound, arity_cap):
        self.colours = sorted(colours, key=repr)
        self.level_bound = level_bound
        self.arity_cap = arity_cap
        self._levels = {}

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, levels<={self.level_bound}, cap={self.arity_cap})"

    def check_colour(self, c):
        if c not in self.colours:
            raise InputError(f"Unknown colour {c!r} of {self.name}")

    def op_space(self, inputs, output):
        raise NotImplementedError

    def identity_vertex(self, c):
        raise NotImplementedError

    def compose_vertex(self, p, i, q):
        raise NotImplementedError

    def act_vertex(self, p, perm):
        raise NotImplementedError

    def level_operad(self, n):
        if n > self.level_bound:
            raise DimensionBoundError(f"Level {n} is above the bound {self.level_bound} of {self.name}")
        if n not in self._levels:
            self._levels[n] = LevelOperad(self, n)
        return self._levels[n]

    def vertex_operad(self):
        return self.level_operad(0)


class LevelOperad(FiniteOperad):
    """The operad of n-simplices of a simplicial operad."""

    def __init__(self, S, n):
        super().__init__(S.colours, S.arity_cap)
        self.S = S
        self.n = n
        self.name = f"{S.name}_{n}"

    def operations(self, inputs, output):
        inputs = tuple(inputs)
        if len(inputs) > self.arity_cap:
            return []
        space = self.S.op_space(inputs, output)
        return [Operation(inputs, output, s) for s in space.level(self.n)]

    def identity(self, c):
        return Operation((c,), c, (self.S.identity_vertex(c),) * (self.n + 1))

    def compose(self, p, i, q):
        if p.inputs[i] != q.output:
            raise InputError(f"Cannot compose in {self.name}: colours differ at input {i}")
        inputs = p.inputs[:i] + q.inputs + p.inputs[i + 1:]
        if len(inputs) > self.arity_cap:
            return None
        simplex = tuple(
            self.S.compose_vertex(Operation(p.inputs, p.output, x), i, Operation(q.inputs, q.output, y)).label
            for x, y in zip(p.label, q.label)
        )
        return Operation(inputs, p.output, simplex)

    def act(self, p, perm):
        inputs = tuple(p.inputs[s] for s in perm)
        simplex = tuple(self.S.act_vertex(Operation(p.inputs, p.output, x), perm).label for x in p.label)
        return Operation(inputs, p.output, simplex)


class DiscreteSimplicialOperad(SimplicialOperad):
    """An operad in sets seen as a simplicial operad with discrete spaces."""

    def __init__(self, P, level_bound=0):
        super().__init__(P.colours, level_bound, P.arity_cap)
        self.P = P
        self.name = f"disc({P.name})"

    def op_space(self, inputs, output):
        ops = self.P.operations(tuple(inputs), output)
        return SimplicialSet([(p.label,) for p in ops], self.level_bound, f"{self.name}{list(inputs)}->{output}")

    def identity_vertex(self, c):
        return self.P.identity(c).label

    def compose_vertex(self, p, i, q):
        return self.P.compose_or_raise(p, i, q)

    def act_vertex(self, p, perm):
        return self.P.act(p, perm)


def discrete(P, level_bound=0):
    return DiscreteSimplicialOperad(P, level_bound)


class CorollaSimplicialOperad(SimplicialOperad):
    """C_n[X]: objects 0..n, the n-ary operations (1..n; 0) form X.

    Other listings of the inputs carry the same space; only identities
    compose with anything.
    """

    def __init__(self, n, X, level_bound=None):
        level_bound = X.dimension_bound if level_bound is None else level_bound
        super().__init__([str(i) for i in range(n + 1)], level_bound, max(n, 1))
        self.n = n
        self.X = X
        self.leaves = tuple(str(i) for i in range(1, n + 1))
        self.name = f"C{n}[{X.name}]"

    def op_space(self, inputs, output):
        inputs = tuple(inputs)
        for c in list(inputs) + [output]:
            self.check_colour(c)
        if output == "0" and len(inputs) == self.n and sorted(inputs) == sorted(self.leaves):
            return self.X
        if len(inputs) == 1 and inputs[0] == output:
            return SimplicialSet([(IDENTITY_LABEL,)], self.level_bound, "point")
        return SimplicialSet([], self.level_bound, "empty")

    def identity_vertex(self, c):
        return IDENTITY_LABEL

    def compose_vertex(self, p, i, q):
        if p.label == IDENTITY_LABEL and len(p.inputs) == 1:
            return q
        if q.label == IDENTITY_LABEL and len(q.inputs) == 1:
            return p
        raise InputError(f"{self.name} has no composable non-identity operations")

    def act_vertex(self, p, perm):
        return Operation(tuple(p.inputs[s] for s in perm), p.output, p.label)


def corolla_operad(n, X, level_bound=None):
    return CorollaSimplicialOperad(n, X, level_bound)


class TreeSimplicialOperad(SimplicialOperad):
    """T[K]: operations indexed by subtrees S, decorated by K^{V(S)}.

    A vertex is ``(vertex keys of S, K-vertex per key)``; grafting
    concatenates the decorations.
    """

    def __init__(self, tree, K, level_bound=None):
        level_bound = K.dimension_bound * max(tree.num_vertices, 1) if level_bound is None else level_bound
        super().__init__(tree.edges, level_bound, max([len(s.leaves) for s in tree.subtrees] + [1]))
        self.tree = tree
        self.K = K
        self.name = f"{tree.describe()}[{K.name}]"
        self._spaces = {}

    def op_space(self, inputs, output):
        inputs = tuple(inputs)
        key = (inputs, output)
        if key in self._spaces:
            return self._spaces[key]
        for c in list(inputs) + [output]:
            self.check_colour(c)
        parts = []
        if len(set(inputs)) == len(inputs):
            for s in self.tree.subtrees_at(output, len(inputs)):
                if set(s.leaves) == set(inputs):
                    parts.append((tuple(sorted(s.vertices)), power(self.K, len(s.vertices))))
        space = disjoint_union(parts, f"{self.name}{list(inputs)}->{output}")
        self._spaces[key] = space
        return space

    def identity_vertex(self, c):
        return ((), ())

    def compose_vertex(self, p, i, q):
        (vp, kp), (vq, kq) = p.label, q.label
        decoration = dict(zip(vp, kp))
        decoration.update(zip(vq, kq))
        keys = tuple(sorted(decoration))
        inputs = p.inputs[:i] + q.inputs + p.inputs[i + 1:]
        return Operation(inputs, p.output, (keys, tuple(decoration[k] for k in keys)))

    def act_vertex(self, p, perm):
        return Operation(tuple(p.inputs[s] for s in perm), p.output, p.label)


def tree_operad_over(tree, K, level_bound=None):
    return TreeSimplicialOperad(tree, K, level_bound)


def decorated_operad(kind, n=None, X=None, tree=None, K=None, level_bound=None):
    """C_n[X] for kind ``corolla``, T[K] for kind ``tree``."""
    if kind == "corolla":
        if n is None or X is None:
            raise InputError("corolla needs n and X")
        return corolla_operad(n, X, level_bound)
    if kind == "tree":
        if tree is None or K is None:
            raise InputError("tree needs a tree and K")
        return tree_operad_over(tree, K, level_bound)
    raise InputError(f"Unknown decorated operad kind {kind!r}")


class Pi0Operad(FiniteOperad):
    """Connected components of the operation spaces, composed through representatives."""

    def __init__(self, S):
        super().__init__(S.colours, S.arity_cap)
        self.S = S
        self.name = f"pi0({S.name})"
        self._components = {}

    def _component_reps(self, inputs, output):
        key = (tuple(inputs), output)
        if key not in self._components:
            space = self.S.op_space(*key)
            comp = components(space)
            reps = {}
            for v in sorted(comp, key=repr):
                reps.setdefault(comp[v], v)
            self._components[key] = {v: reps[c] for v, c in comp.items()}
        return self._components[key]

    def _class(self, vertex_op):
        reps = self._component_reps(vertex_op.inputs, vertex_op.output)
        return Operation(vertex_op.inputs, vertex_op.output, reps[vertex_op.label])

    def operations(self, inputs, output):
        reps = self._component_reps(tuple(inputs), output)
        return [Operation(tuple(inputs), output, r) for r in sorted(set(reps.values()), key=repr)]

    def identity(self, c):
        return self._class(Operation((c,), c, self.S.identity_vertex(c)))

    def compose(self, p, i, q):
        if p.inputs[i] != q.output:
            raise InputError(f"Cannot compose in {self.name}: colours differ at input {i}")
        if len(p.inputs) + len(q.inputs) - 1 > self.arity_cap:
            return None
        return self._class(self.S.compose_vertex(p, i, q))

    def act(self, p, perm):
        return self._class(self.S.act_vertex(p, perm))

    def check_well_defined(self, max_arity=None):
        """Composites of other vertices in the same components land in the same component."""
        bad = []
        ops = self.all_operations(max_arity)
        for p in ops:
            members_p = self._members(p)
            for i in range(len(p.inputs)):
                for q in ops:
                    if q.output != p.inputs[i] or self.compose(p, i, q) is None:
                        continue
                    expected = self.compose(p, i, q)
                    for x in members_p:
                        for y in self._members(q):
                            if self._class(self.S.compose_vertex(x, i, y)) != expected:
                                bad.append({"p": repr(x), "i": i, "q": repr(y)})
        return bad

    def _members(self, p):
        reps = self._component_reps(p.inputs, p.output)
        return [Operation(p.inputs, p.output, v) for v, r in reps.items() if r == p.label]


def pi0_truncated_operad(S):
    if S.level_bound < 1:
        raise PreconditionError(f"pi0 of {S.name} needs level bound >= 1, got {S.level_bound}")
    logger.info(f"Taking components of {S.name}")
    return Pi0Operad(S)


