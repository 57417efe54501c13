import logging
from itertools import product as cartesian

import networkx as nx
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from .sset import face, normal_form

logger = logging.getLogger(__name__)

MAX_WITNESSES = 5


def components(X):
    """Map from vertex to component index, components ordered by least vertex."""
    graph = X.one_skeleton_graph()
    comps = sorted((sorted(c, key=repr) for c in nx.connected_components(graph)), key=lambda c: repr(c[0]))
    return {v: i for i, comp in enumerate(comps) for v in comp}


def pi0(X):
    if X.is_empty:
        return 0
    return nx.number_connected_components(X.one_skeleton_graph())


def euler_characteristic(X):
    return sum((-1) ** d * c for d, c in enumerate(X.counts()))


def _invariant_factors(matrix):
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return []
    snf = smith_normal_form(matrix, domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(rows, cols)) if snf[i, i] != 0]


def chain_homology(ranks, boundaries):
    """Homology of a chain complex of free abelian groups.

    ``ranks[n]`` is the rank of C_n and ``boundaries[n]`` the matrix of
    C_n -> C_{n-1} (``boundaries[0]`` is ignored). Each group is reported as
    ``{"rank": r, "torsion": [...]}``.
    """
    factors = [_invariant_factors(boundaries[n]) if n > 0 else [] for n in range(len(ranks))]
    groups = []
    for n, rank in enumerate(ranks):
        image_rank = len(factors[n + 1]) if n + 1 < len(ranks) else 0
        free = rank - len(factors[n]) - image_rank
        torsion = [d for d in factors[n + 1] if d > 1] if n + 1 < len(ranks) else []
        groups.append({"rank": free, "torsion": torsion})
    return groups


def _chain_data(X, top):
    basis = [X.nondegenerate(n) if n <= X.dimension else [] for n in range(top + 1)]
    index = [{s: i for i, s in enumerate(b)} for b in basis]
    boundaries = [Matrix.zeros(0, len(basis[0]))]
    for n in range(1, top + 1):
        M = Matrix.zeros(len(basis[n - 1]), len(basis[n]))
        for j, s in enumerate(basis[n]):
            for i in range(n + 1):
                M[index[n - 1][face(s, i)], j] += (-1) ** i
        boundaries.append(M)
    return basis, index, boundaries


def homology(X, top=None):
    """Integral homology up to ``top`` (default the dimension bound)."""
    top = X.dimension_bound if top is None else top
    basis, _, boundaries = _chain_data(X, top + 1 if top + 1 <= X.dimension else top)
    groups = chain_homology([len(b) for b in basis], boundaries)
    return groups[: top + 1]


def is_acyclic(groups):
    return all(g["rank"] == 0 and not g["torsion"] for g in groups)


def is_quasi_isomorphism(f):
    """Whether f induces isomorphisms on integral homology, via its mapping cone."""
    X, Y = f.source, f.target
    top = max(X.dimension, Y.dimension) + 1
    bx, ix, _ = _chain_data(X, top)
    by, iy, _ = _chain_data(Y, top)

    # cone_n = C_{n-1}(X) + C_n(Y), d(x, y) = (-dx, f(x) + dy)
    ranks = [(len(bx[n - 1]) if n > 0 else 0) + len(by[n]) for n in range(top + 1)]
    boundaries = [Matrix.zeros(0, ranks[0])]
    for n in range(1, top + 1):
        rows_x = len(bx[n - 2]) if n > 1 else 0
        cols_x = len(bx[n - 1])
        M = Matrix.zeros(rows_x + len(by[n - 1]), cols_x + len(by[n]))
        for j, s in enumerate(bx[n - 1]):
            if n > 1:
                for i in range(n):
                    M[ix[n - 2][face(s, i)], j] -= (-1) ** i
            image = f(s)
            if normal_form(image) == image:
                M[rows_x + iy[n - 1][image], j] += 1
        for j, s in enumerate(by[n]):
            for i in range(n + 1):
                M[rows_x + iy[n - 1][face(s, i)], cols_x + j] += (-1) ** i
        boundaries.append(M)
    groups = chain_homology(ranks, boundaries)
    result = is_acyclic(groups)
    logger.debug(f"Mapping cone of {X.name} -> {Y.name}: acyclic={result}")
    return result


def horn_maps(X, n, k):
    """Vertex sequences (x_0..x_n) whose faces other than the k-th lie in X."""
    vertices = X.vertices
    if n == 1:
        for v in vertices:
            yield (v,)
        return

    def constrained(a, b):
        return n >= 3 or len({a, b, k}) < 3

    seq = []

    def extend(j):
        if j == n + 1:
            full = tuple(seq)
            if all(X.contains(face(full, i)) for i in range(n + 1) if i != k):
                yield full
            return
        for v in vertices:
            if all(not constrained(a, j) or X.contains((seq[a], v)) for a in range(j)):
                seq.append(v)
                yield from extend(j + 1)
                seq.pop()

    yield from extend(0)


def kan_report(X, max_dim):
    """Horn fillers of X for all horns of dimension 2..max_dim.

    Horns of dimension 1 are single vertices and always fill degenerately.
    """
    entries = []
    kan = inner_kan = True
    for n in range(2, max_dim + 1):
        for k in range(n + 1):
            total = unfilled = 0
            witnesses = []
            for horn in horn_maps(X, n, k):
                total += 1
                if not X.contains(horn):
                    unfilled += 1
                    if len(witnesses) < MAX_WITNESSES:
                        witnesses.append([repr(v) for v in horn])
            inner = 0 < k < n
            if unfilled:
                kan = False
                inner_kan = inner_kan and not inner
            entries.append(
                {"n": n, "k": k, "inner": inner, "horns": total, "unfilled": unfilled, "witnesses": witnesses}
            )
    return {"kan": kan, "inner_kan": inner_kan, "max_dim": max_dim, "horns": entries}


def sset_invariants(X, kan_dim=None):
    kan_dim = X.dimension_bound if kan_dim is None else kan_dim
    groups = homology(X)
    return {
        "pi0": pi0(X),
        "homology": groups,
        "euler_characteristic": euler_characteristic(X),
        "kan_report": kan_report(X, kan_dim),
    }


def constant_vertex_maps(X, target_vertices):
    """All vertex maps from X to a discrete set that are constant on components."""
    comp = components(X)
    n = len(set(comp.values()))
    for choice in cartesian(target_vertices, repeat=n):
        yield {v: choice[c] for v, c in comp.items()}
