"""Dendroidal sets as computable presheaves on the category of trees.

A handle evaluates at any tree (edge names included) to a finite list of
hashable tokens and restricts tokens along morphisms of trees. Tokens of a
representable are the morphisms into it; tokens of a nerve are an edge
colouring together with an operation for every vertex.
"""
import logging
from itertools import combinations

from ..errors import InputError
from ..operads.operad import matching_permutation
from ..trees.catalog import corolla, eta
from ..trees.omega import (
    OmegaMorphism,
    compose,
    factors_through,
    hom_omega,
    identity,
    inner_face,
    outer_faces,
    subtree_inclusion,
)
from ..trees.tree import Subtree

logger = logging.getLogger(__name__)


class DendroidalSet:
    name = "X"
    max_arity = 2

    def __init__(self):
        self._evals = {}
        self._members = {}

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"

    def eval(self, T):
        if T not in self._evals:
            self._evals[T] = list(self._eval(T))
        return self._evals[T]

    def _eval(self, T):
        raise NotImplementedError

    def restrict(self, phi, x):
        raise NotImplementedError

    def contains(self, T, x):
        if T not in self._members:
            self._members[T] = set(self.eval(T))
        return x in self._members[T]

    @property
    def provenance(self):
        return {"kind": type(self).__name__, "name": self.name}


def edge_inclusion(T, e, name="0"):
    """eta -> T picking the edge ``e``."""
    return OmegaMorphism(eta(name), T, {name: e}, {})


def collapse_to_edge(S, e):
    """The unique morphism from a linear tree S onto eta named ``e``."""
    target = eta(e)
    if not S.is_linear:
        raise InputError(f"{S.describe()} is not linear")
    return OmegaMorphism(S, target, {d: e for d in S.edges}, {k: Subtree(target, e, []) for k in S.vertex_at})


def inner_face_multi(T, edges):
    """T/J -> T contracting every edge of J."""
    mono = identity(T)
    for e in sorted(edges):
        face = inner_face(mono.source, e)
        mono = compose(mono, face)
    return mono


def monos_into(T):
    """One monomorphism into T for every subobject of Omega[T] it represents."""
    out = []
    for V in T.subtrees:
        inclusion = subtree_inclusion(V)
        source = inclusion.source
        inner = sorted(source.inner_edges)
        for r in range(len(inner) + 1):
            for J in combinations(inner, r):
                out.append(compose(inclusion, inner_face_multi(source, J)))
    return out


class Representable(DendroidalSet):
    def __init__(self, tree):
        super().__init__()
        self.tree = tree
        self.name = f"Omega[{tree.describe()}]"
        self.max_arity = max([len(s.leaves) for s in tree.subtrees] + [1])

    def _eval(self, S):
        return hom_omega(S, self.tree)

    def restrict(self, phi, x):
        return compose(x, phi)

    def contains(self, S, x):
        return x.source == S and x.target == self.tree and x.is_valid()

    @property
    def provenance(self):
        return {"kind": "representable", "tree": self.tree.describe()}


class Subobject(DendroidalSet):
    """The dendrices of ``ambient`` satisfying ``predicate(T, x)``; it must be closed under restriction."""

    def __init__(self, ambient, predicate, name, provenance=None):
        super().__init__()
        self.ambient = ambient
        self.predicate = predicate
        self.name = name
        self.max_arity = ambient.max_arity
        self._provenance = provenance or {"kind": "subobject", "name": name}

    def _eval(self, T):
        return [x for x in self.ambient.eval(T) if self.predicate(T, x)]

    def restrict(self, phi, x):
        return self.ambient.restrict(phi, x)

    def contains(self, T, x):
        return self.ambient.contains(T, x) and self.predicate(T, x)

    @property
    def provenance(self):
        return self._provenance


def face_union(tree, monos, name, provenance):
    """Union in Omega[tree] of the images of the given monomorphisms."""
    monos = list(monos)
    return Subobject(
        Representable(tree),
        lambda T, x: any(factors_through(x, m) for m in monos),
        name,
        provenance,
    )


def _check_inner(tree, edges):
    for e in edges:
        if e not in tree.inner_edges:
            raise InputError(f"{e!r} is not an inner edge of {tree.describe()}")


def boundary(tree):
    faces = outer_faces(tree) + [inner_face(tree, e) for e in sorted(tree.inner_edges)]
    return face_union(tree, faces, f"dOmega[{tree.describe()}]", {"kind": "boundary", "tree": tree.describe()})


def generalized_horn(tree, edges):
    """Lambda^I[T]: outer faces and the inner faces at edges outside I."""
    edges = set(edges)
    if not edges:
        raise InputError("A generalized horn needs a nonempty set of inner edges")
    _check_inner(tree, edges)
    faces = outer_faces(tree) + [inner_face(tree, e) for e in sorted(tree.inner_edges - edges)]
    return face_union(
        tree,
        faces,
        f"Lambda^{sorted(edges)}[{tree.describe()}]",
        {"kind": "generalized_horn", "tree": tree.describe(), "edges": sorted(edges)},
    )


def inner_horn(tree, edge):
    _check_inner(tree, [edge])
    horn = generalized_horn(tree, [edge])
    horn.name = f"Lambda^{edge}[{tree.describe()}]"
    horn._provenance = {"kind": "inner_horn", "tree": tree.describe(), "edge": edge}
    return horn


def segal_core(tree):
    if tree.num_vertices <= 1:
        pieces = [identity(tree)]
    else:
        pieces = [subtree_inclusion(s) for s in tree.subtrees if len(s.vertices) <= 1]
    return face_union(tree, pieces, f"Sc[{tree.describe()}]", {"kind": "segal_core", "tree": tree.describe()})


def as_subobject(X):
    if isinstance(X, Subobject):
        return X
    return Subobject(X, lambda T, x: True, X.name, X.provenance)


def union(A, B, name=None):
    A, B = as_subobject(A), as_subobject(B)
    if A.ambient is not B.ambient and A.ambient.name != B.ambient.name:
        raise InputError(f"{A.name} and {B.name} live in different dendroidal sets")
    return Subobject(
        A.ambient,
        lambda T, x: A.predicate(T, x) or B.predicate(T, x),
        name or f"({A.name} u {B.name})",
        {"kind": "union", "parts": [A.provenance, B.provenance]},
    )


def intersection(A, B, name=None):
    A, B = as_subobject(A), as_subobject(B)
    if A.ambient is not B.ambient and A.ambient.name != B.ambient.name:
        raise InputError(f"{A.name} and {B.name} live in different dendroidal sets")
    return Subobject(
        A.ambient,
        lambda T, x: A.predicate(T, x) and B.predicate(T, x),
        name or f"({A.name} n {B.name})",
        {"kind": "intersection", "parts": [A.provenance, B.provenance]},
    )


class Terminal(DendroidalSet):
    def __init__(self, max_arity=2):
        super().__init__()
        self.name = "terminal"
        self.max_arity = max_arity

    def _eval(self, T):
        return [()]

    def restrict(self, phi, x):
        return ()


class Empty(DendroidalSet):
    name = "empty"

    def _eval(self, T):
        return []

    def restrict(self, phi, x):
        raise InputError("The empty dendroidal set has no dendrices")


class Nerve(DendroidalSet):
    """N_d(P): operad maps T -> P, stored as (edge colours, vertex operations)."""

    def __init__(self, P):
        super().__init__()
        self.P = P
        self.name = f"N({P.name})"
        self.max_arity = P.arity_cap

    @staticmethod
    def token(colouring, ops):
        return tuple(sorted(colouring.items())), tuple(sorted(ops.items()))

    @staticmethod
    def colouring(x):
        return dict(x[0])

    @staticmethod
    def ops(x):
        return dict(x[1])

    def _eval(self, S):
        order = [e for e in S.edge_order if e in S.vertex_at]
        colouring, ops = {}, {}

        def assign(idx):
            if idx == len(order):
                yield self.token(colouring, ops)
                return
            key = order[idx]
            vertex = S.vertex_at[key]
            for op in self.P.operations_into(colouring[key], vertex.arity):
                for e, c in zip(vertex.inputs, op.inputs):
                    colouring[e] = c
                ops[key] = op
                yield from assign(idx + 1)
            ops.pop(key, None)
            for e in vertex.inputs:
                colouring.pop(e, None)

        for c in self.P.colours:
            colouring[S.root] = c
            yield from assign(0)
        colouring.clear()

    def composite_over(self, tree, ops, subtree):
        """The composite of the vertex operations over ``subtree``, inputs in planar leaf order."""

        def walk(e):
            op = ops[e]
            inputs = tree.vertex_at[e].inputs
            for j in reversed(range(len(inputs))):
                if inputs[j] in subtree.vertices:
                    op = self.P.compose_or_raise(op, j, walk(inputs[j]))
            return op

        return walk(subtree.root)

    def restrict(self, phi, x):
        S, T = phi.source, phi.target
        colouring, ops = self.colouring(x), self.ops(x)
        new_colouring = {d: colouring[e] for d, e in phi.edge_map.items()}
        new_ops = {}
        for key, image in phi.vertex_map.items():
            if image.is_bare:
                new_ops[key] = self.P.identity(colouring[image.root])
                continue
            op = self.composite_over(T, ops, image)
            wanted = [phi.edge_map[d] for d in S.vertex_at[key].inputs]
            new_ops[key] = self.P.act(op, matching_permutation(wanted, list(image.leaves)))
        return self.token(new_colouring, new_ops)

    @property
    def provenance(self):
        return {"kind": "nerve", "operad": self.P.name}


class CellComplex(DendroidalSet):
    """``base`` with corollas glued along their boundaries.

    Each cell is ``(corolla, attach)`` with ``attach[e]`` a dendrex of
    ``base`` at ``eta(e)`` for every edge e of the corolla.
    """

    def __init__(self, base, cells, name=None):
        super().__init__()
        for corolla, attach in cells:
            if corolla.num_vertices != 1 or set(attach) != set(corolla.edges):
                raise InputError("Cells are corollas attached along all of their edges")
        self.base = base
        self.cells = list(cells)
        self.name = name or f"{base.name}[{len(self.cells)} cells]"
        self.max_arity = max([base.max_arity] + [c.max_arity for c, _ in self.cells])

    def _eval(self, S):
        out = [("base", x) for x in self.base.eval(S)]
        for i, (corolla, _) in enumerate(self.cells):
            out.extend(("cell", i, psi) for psi in hom_omega(S, corolla) if psi.image[1])
        return out

    def restrict(self, phi, x):
        if x[0] == "base":
            return ("base", self.base.restrict(phi, x[1]))
        _, i, psi = x
        moved = compose(psi, phi)
        if moved.image[1]:
            return ("cell", i, moved)
        (e,) = moved.image[0]
        attach = self.cells[i][1]
        return ("base", self.base.restrict(collapse_to_edge(phi.source, e), attach[e]))

    @property
    def provenance(self):
        return {"kind": "cell_complex", "base": self.base.provenance, "cells": len(self.cells)}


def nerve_colour_token(N, edge, colour):
    """The dendrex of a nerve at eta(edge) with the given colour."""
    return N.token({edge: colour}, {})


def attach_free_cells(N, profiles):
    """N_d(P)[f_1, ..., f_r]: one free corolla for each profile (inputs, output)."""
    cells = []
    for inputs, output in profiles:
        C = corolla(len(inputs))
        attach = {str(j + 1): nerve_colour_token(N, str(j + 1), c) for j, c in enumerate(inputs)}
        attach["0"] = nerve_colour_token(N, "0", output)
        for c in list(inputs) + [output]:
            N.P.check_colour(c)
        cells.append((C, attach))
    return CellComplex(N, cells, name=f"{N.name}[{len(cells)} free cells]")


def build_dset(kind, tree=None, edge=None, edges=None, operad=None, parts=None, max_arity=2):
    if kind == "representable":
        return Representable(tree)
    if kind == "boundary":
        return boundary(tree)
    if kind == "inner_horn":
        return inner_horn(tree, edge)
    if kind == "generalized_horn":
        return generalized_horn(tree, edges or [])
    if kind == "segal_core":
        return segal_core(tree)
    if kind == "nerve":
        return Nerve(operad)
    if kind == "terminal":
        return Terminal(max_arity)
    if kind == "empty":
        return Empty()
    if kind in ("union", "intersection"):
        if not parts or len(parts) < 2:
            raise InputError(f"{kind} needs at least two parts")
        combine = union if kind == "union" else intersection
        result = parts[0]
        for p in parts[1:]:
            result = combine(result, p)
        return result
    raise InputError(f"Unknown dendroidal set kind {kind!r}")
