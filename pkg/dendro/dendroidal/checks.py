"""Bounded checks on dendroidal sets: degeneracy, normality and inner horn filling."""
import logging
from collections import Counter

from ..trees.enumeration import enumerate_trees
from ..trees.omega import automorphisms, degeneracy, degeneracy_section, factors_through, inner_face, lift, outer_faces
from .dset import monos_into

logger = logging.getLogger(__name__)

MAX_WITNESSES = 10


def within_cap(T, max_arity):
    """Every composite of vertices of T stays within ``max_arity``."""
    return all(len(s.leaves) <= max_arity for s in T.subtrees)


def corpus(X, bound, with_inner_edges=False):
    trees = [T for T in enumerate_trees(bound, X.max_arity) if within_cap(T, X.max_arity)]
    if with_inner_edges:
        trees = [T for T in trees if T.inner_edges]
    return trees


def is_degenerate(X, T, x):
    """x = sigma^* y for a degeneracy sigma of T."""
    for v in T.vertices:
        if v.arity != 1:
            continue
        sigma, section = degeneracy(T, v.output), degeneracy_section(T, v.output)
        if X.restrict(sigma, X.restrict(section, x)) == x:
            return True
    return False


def orbit(X, x, auts):
    return {X.restrict(a, x) for a in auts}


def nondegenerate_dendrices(X, bound, up_to_iso=True, trees=None):
    """Nondegenerate (tree, token) pairs on trees with at most ``bound`` vertices.

    Trees are one per isomorphism class; with ``up_to_iso`` only one token of
    every Aut(T)-orbit is listed.
    """
    trees = corpus(X, bound) if trees is None else trees
    out = []
    for T in trees:
        auts = automorphisms(T) if up_to_iso else []
        seen = set()
        for x in X.eval(T):
            if x in seen or is_degenerate(X, T, x):
                continue
            if up_to_iso:
                seen |= orbit(X, x, auts)
            out.append((T, x))
    logger.debug(f"{X.name}: {len(out)} nondegenerate dendrices with <= {bound} vertices")
    return out


def is_normal(B, bound, A=None):
    """Aut(T) acts freely on B(T) - A(T) for every tree within the bound."""
    witnesses = []
    checked = 0
    for T in corpus(B, bound):
        auts = [a for a in automorphisms(T) if not a.is_identity]
        if not auts:
            continue
        for x in B.eval(T):
            if A is not None and A.contains(T, x):
                continue
            checked += 1
            for a in auts:
                if B.restrict(a, x) == x:
                    witnesses.append({"tree": T.describe(), "dendrex": repr(x), "automorphism": repr(a)})
                    break
    holds = not witnesses
    logger.info(f"Normality of {B.name}: {'free' if holds else 'fixed points found'} on {checked} dendrices")
    return {"holds": holds, "checked": checked, "witnesses": witnesses[:MAX_WITNESSES], "violations": len(witnesses)}


def horn_faces(T, edges):
    return outer_faces(T) + [inner_face(T, e) for e in sorted(T.inner_edges - set(edges))]


def horn_maps(X, T, faces):
    """Compatible families of dendrices on the given faces of T, i.e. maps from their union into X."""
    faces = list(faces)
    shared = {}
    for m in monos_into(T):
        owners = [i for i, F in enumerate(faces) if factors_through(m, F)]
        for a in owners:
            for b in owners:
                if a < b:
                    shared.setdefault(b, []).append((a, lift(m, faces[a]), lift(m, faces[b])))

    family = []

    def extend(i):
        if i == len(faces):
            yield tuple(family)
            return
        for x in X.eval(faces[i].source):
            if all(X.restrict(la, family[a]) == X.restrict(lb, x) for a, la, lb in shared.get(i, [])):
                family.append(x)
                yield from extend(i + 1)
                family.pop()

    yield from extend(0)


def filler_index(X, T, faces):
    return Counter(tuple(X.restrict(F, y) for F in faces) for y in X.eval(T))


def inner_kan_check(X, bound, strict=False):
    """Fill every inner horn Lambda^e[T] -> X on trees within the bound.

    Strict mode asks for exactly one filler, lax mode for at least one.
    """
    failures = []
    horns = 0
    for T in corpus(X, bound, with_inner_edges=True):
        for e in sorted(T.inner_edges):
            faces = horn_faces(T, [e])
            fillers = filler_index(X, T, faces)
            for family in horn_maps(X, T, faces):
                horns += 1
                n = fillers.get(family, 0)
                if n == 1 or (n > 1 and not strict):
                    continue
                failures.append(
                    {
                        "tree": T.describe(),
                        "edge": e,
                        "fillers": n,
                        "horn": [repr(x) for x in family],
                    }
                )
    holds = not failures
    mode = "strict" if strict else "lax"
    logger.info(f"{mode} inner Kan check of {X.name}: {horns} horns, {len(failures)} failures")
    return {
        "holds": holds,
        "strict": strict,
        "horns": horns,
        "failures": len(failures),
        "witnesses": failures[:MAX_WITNESSES],
    }
