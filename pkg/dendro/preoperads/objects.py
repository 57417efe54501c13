"""Changing and fixing the objects of preoperads and dendroidal sets."""
import logging
from itertools import product

from ..dendroidal.checks import MAX_WITNESSES, within_cap
from ..dendroidal.dset import Subobject, edge_inclusion
from ..errors import InputError
from ..trees.catalog import eta
from ..trees.enumeration import enumerate_trees
from ..trees.omega import inner_face, outer_faces
from .preoperad import Preoperad

logger = logging.getLogger(__name__)


class ChangedObjects(Preoperad):
    """f^*(X): dendrices of X together with a lift of their edge colours along f.

    ``f`` maps the new objects to objects of X. Tokens are
    ``(colouring items, x)``.
    """

    def __init__(self, X, f, name=None):
        super().__init__()
        objects = set(X.objects())
        unknown = [s for s, x in f.items() if x not in objects]
        if unknown:
            raise InputError(f"f sends {unknown} outside the objects of {X.name}")
        self.X = X
        self.f = dict(f)
        self.name = name or f"f*({X.name})"
        self.max_arity = X.max_arity
        self.level_bound = X.level_bound
        self.fibres = {}
        for s, x in sorted(self.f.items(), key=lambda item: repr(item[0])):
            self.fibres.setdefault(x, []).append(s)

    def _eval(self, n, T):
        edges = sorted(T.edges)
        out = []
        for x in self.X.eval(n, T):
            choices = [self.fibres.get(self.X.object_at(T, e, x, n), []) for e in edges]
            for colours in product(*choices):
                out.append((tuple(zip(edges, colours)), x))
        return out

    def restrict(self, phi, x, n):
        colouring, y = dict(x[0]), x[1]
        pulled = tuple(sorted((d, colouring[e]) for d, e in phi.edge_map.items()))
        return pulled, self.X.restrict(phi, y, n)

    def reindex(self, T, alpha, x):
        return x[0], self.X.reindex(T, alpha, x[1])

    @property
    def provenance(self):
        return {"kind": "change_objects", "objects": sorted(map(str, self.f)), "of": self.X.provenance}


def change_objects(X, f):
    return ChangedObjects(X, f)


def _faces(T):
    return outer_faces(T) + [inner_face(T, e) for e in sorted(T.inner_edges)]


def lifting_check(Y, bound, level):
    """Levelwise lifts for f^*(X) -> X against the boundary inclusions of trees within the bound.

    For each dendrex x of X at T and each lift of x on the boundary of T, a
    lift of x itself must restrict to it.
    """
    X = Y.X
    failures = []
    checked = 0
    for T in enumerate_trees(bound, X.max_arity):
        if not within_cap(T, X.max_arity):
            continue
        faces = _faces(T)
        covered = sorted({phi.edge_map[d] for phi in faces for d in phi.source.edges})
        for n in range(min(level, X.level_bound) + 1):
            lifts = {}
            for colouring, x in Y.eval(n, T):
                on_boundary = tuple((e, c) for e, c in colouring if e in covered)
                lifts.setdefault(x, set()).add(on_boundary)
            for x in X.eval(n, T):
                fibres = [Y.fibres.get(X.object_at(T, e, x, n), []) for e in covered]
                for colours in product(*fibres):
                    checked += 1
                    if tuple(zip(covered, colours)) not in lifts.get(x, set()):
                        failures.append(
                            {"tree": T.describe(), "level": n, "boundary": list(zip(covered, colours))}
                        )
    logger.info(f"Lifting check for {Y.name} -> {X.name}: {checked} problems, {len(failures)} without a lift")
    return {
        "holds": not failures,
        "checked": checked,
        "failures": len(failures),
        "witnesses": failures[:MAX_WITNESSES],
    }


def reduce_at_point(X, x):
    """r(X): the dendrices of X with every edge coloured by the object x."""
    if x not in X.eval(eta("0")):
        raise InputError(f"{x!r} is not an object of {X.name}")
    return Subobject(
        X,
        lambda T, y: all(X.restrict(edge_inclusion(T, e, "0"), y) == x for e in T.edges),
        f"r({X.name})",
        {"kind": "reduced", "of": X.provenance, "object": repr(x)},
    )
