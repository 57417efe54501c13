"""Segal conditions, operation spaces and the components of a preoperad."""
import logging
from collections import Counter
from itertools import product

from ..dendroidal.checks import MAX_WITNESSES, within_cap
from ..dendroidal.dset import DendroidalSet, edge_inclusion
from ..errors import InputError
from ..simplicial.invariants import components, is_quasi_isomorphism, pi0
from ..simplicial.sset import SimplicialMap, SimplicialSet, normal_form
from ..trees.catalog import corolla
from ..trees.enumeration import enumerate_trees
from ..trees.omega import subtree_inclusion

logger = logging.getLogger(__name__)


def core_pieces(T):
    """The one-vertex subtrees of T, root first."""
    order = {e: i for i, e in enumerate(T.edge_order)}
    return sorted((s for s in T.subtrees if len(s.vertices) == 1), key=lambda s: order[s.root])


def segal_map(X, T, n, x):
    return tuple(X.restrict(subtree_inclusion(s), x, n) for s in core_pieces(T))


def segal_limit(X, T, n):
    """Families of level-n dendrices on the core of T agreeing on inner edges."""
    pieces = core_pieces(T)
    inclusions = [subtree_inclusion(s) for s in pieces]
    chosen = []
    out = []

    def edge_value(idx, y, e):
        return X.restrict(edge_inclusion(inclusions[idx].source, e, "0"), y, n)

    def extend(idx):
        if idx == len(pieces):
            out.append(tuple(chosen))
            return
        piece = inclusions[idx].source
        for y in X.eval(n, piece):
            ok = True
            for j in range(idx):
                for e in set(piece.edges) & set(inclusions[j].source.edges):
                    if edge_value(idx, y, e) != edge_value(j, chosen[j], e):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen.append(y)
                extend(idx + 1)
                chosen.pop()

    extend(0)
    return out


def segal_corpus(X, bound):
    return [T for T in enumerate_trees(bound, X.max_arity) if within_cap(T, X.max_arity) and T.inner_edges]


def _limit_space(X, T, top):
    """The limit over the core as a simplicial set on level-0 families."""
    simplices = []
    for n in range(top + 1):
        pieces = [subtree_inclusion(s).source for s in core_pieces(T)]
        for family in segal_limit(X, T, n):
            seq = tuple(
                tuple(X.reindex(piece, (i,), y) for piece, y in zip(pieces, family)) for i in range(n + 1)
            )
            simplices.append(normal_form(seq))
    return SimplicialSet(simplices, top, f"lim Sc({T.describe()})")


def segal_check(X, bound, level, strength="strict"):
    """Compare X_T with the limit over its Segal core on trees within the bound.

    ``strict`` asks for a bijection at every level up to ``level``. ``pi0``
    asks the comparison map of spaces to be a bijection on components and an
    isomorphism on integral homology.
    """
    if strength not in ("strict", "pi0"):
        raise InputError(f"Unknown Segal strength {strength!r}")
    level = min(level, X.level_bound)
    trees = segal_corpus(X, bound)
    witnesses = []
    failures = 0
    for T in trees:
        if strength == "strict":
            for n in range(level + 1):
                images = Counter(segal_map(X, T, n, x) for x in X.eval(n, T))
                limit = set(segal_limit(X, T, n))
                collisions = [f for f, c in images.items() if c > 1]
                missing = limit - set(images)
                if collisions or missing:
                    failures += 1
                    if len(witnesses) < MAX_WITNESSES:
                        witnesses.append(
                            {
                                "tree": T.describe(),
                                "level": n,
                                "size": sum(images.values()),
                                "limit": len(limit),
                                "collisions": len(collisions),
                                "missing": len(missing),
                            }
                        )
            continue
        source = X.space(T, level)
        target = _limit_space(X, T, level)
        f = SimplicialMap(source, target, {x: segal_map(X, T, 0, x) for x in source.vertices})
        comps = components(target)
        hit = {comps[f.vertex_map[v]] for v in source.vertices}
        bijective = pi0(source) == pi0(target) and len(hit) == pi0(target)
        if not (bijective and is_quasi_isomorphism(f)):
            failures += 1
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(
                    {
                        "tree": T.describe(),
                        "pi0": [pi0(source), pi0(target)],
                        "pi0_bijective": bijective,
                        "counts": [source.counts(), target.counts()],
                    }
                )
    logger.info(f"Segal check ({strength}) of {X.name} on {len(trees)} trees: {failures} failures")
    return {
        "holds": not failures,
        "strength": strength,
        "trees": len(trees),
        "failures": failures,
        "witnesses": witnesses,
    }


def op_space(X, inputs, output, top=None):
    """X(x_1, ..., x_n; x): the part of X at the corolla C_n over the given objects."""
    objects = set(X.objects())
    for c in list(inputs) + [output]:
        if c not in objects:
            raise InputError(f"{c!r} is not an object of {X.name}")
    C = corolla(len(inputs))
    (v,) = C.vertices
    wanted = tuple(inputs) + (output,)
    fibre = {x for x in X.eval(0, C) if _profile(X, C, v, x, 0) == wanted}
    space = X.space(C, top)
    return space.restrict_to(
        lambda s: all(x in fibre for x in s), name=f"{X.name} operations of arity {len(inputs)}"
    )


def _profile(X, C, v, x, n):
    return tuple(X.object_at(C, e, x, n) for e in v.inputs) + (X.object_at(C, C.root, x, n),)


def decomposition_check(X, arity, level):
    """X_{n, C_arity} is the disjoint union over profiles of the operation spaces, level by level.

    Each level-n dendrex must lie in exactly one operation space, and the
    profile it carries at level n must be the profile of that space.
    """
    C = corolla(arity)
    (v,) = C.vertices
    top = min(level, X.level_bound)
    spaces = {p: op_space(X, p[:-1], p[-1], top) for p in product(X.objects(), repeat=arity + 1)}
    problems = []
    for n in range(top + 1):
        tokens = X.eval(n, C)
        owner = {}
        overlaps = 0
        for profile, space in spaces.items():
            for seq in space.level(n):
                if seq in owner:
                    overlaps += 1
                else:
                    owner[seq] = profile
        total = sum(len(space.level(n)) for space in spaces.values())
        mismatched = [x for x in tokens if owner.get(X.vertices_of(C, x, n)) != _profile(X, C, v, x, n)]
        if total != len(tokens) or overlaps or mismatched:
            problems.append({
                "level": n,
                "tokens": len(tokens),
                "over_profiles": total,
                "overlaps": overlaps,
                "mismatched": [repr(x) for x in mismatched[:MAX_WITNESSES]],
            })
    if problems:
        logger.warning(f"{X.name} does not split over profiles at arity {arity}: levels {[p['level'] for p in problems]}")
    return {"holds": not problems, "problems": problems}


class Pi0Preoperad(DendroidalSet):
    """T -> pi0(X_T), a component named by its least level-0 dendrex."""

    def __init__(self, X, top=None):
        super().__init__()
        self.X = X
        self.top = X.level_bound if top is None else top
        self.name = f"pi0({X.name})"
        self.max_arity = X.max_arity
        self._reps = {}

    def representatives(self, T):
        if T not in self._reps:
            comp = components(self.X.space(T, self.top))
            reps = {}
            for v in sorted(comp, key=repr):
                reps.setdefault(comp[v], v)
            self._reps[T] = {v: reps[c] for v, c in comp.items()}
        return self._reps[T]

    def _eval(self, T):
        return sorted(set(self.representatives(T).values()), key=repr)

    def restrict(self, phi, x):
        return self.representatives(phi.source)[self.X.restrict(phi, x, 0)]

    @property
    def provenance(self):
        return {"kind": "pi0", "of": self.X.provenance}


def pi0_preoper(X, top=None):
    return Pi0Preoperad(X, top)
