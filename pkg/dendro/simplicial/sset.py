"""Finite simplicial sets inside nerves of finite posets.

Every simplicial set built here is a subcomplex of the nerve of a poset (cubes
and products included), so a simplex is determined by its vertex sequence: it
is a weakly increasing sequence, nondegenerate exactly when no two consecutive
vertices agree. Faces delete a vertex, degeneracies repeat one, and the
Eilenberg-Zilber normal form of a sequence is obtained by collapsing repeats.
"""
import logging
from itertools import combinations, product as cartesian

import networkx as nx

from ..errors import DimensionBoundError, InputError

logger = logging.getLogger(__name__)


def normal_form(seq):
    out = []
    for v in seq:
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


def is_degenerate(seq):
    return any(a == b for a, b in zip(seq, seq[1:]))


def face(seq, i):
    return seq[:i] + seq[i + 1:]


def degeneracy(seq, i):
    return seq[: i + 1] + seq[i:]


def _sort_key(simplex):
    return tuple(repr(v) for v in simplex)


class SimplicialSet:
    def __init__(self, simplices, dimension_bound=None, name=""):
        closed = set()
        stack = [tuple(s) for s in simplices]
        while stack:
            s = stack.pop()
            if not s or s in closed:
                continue
            if is_degenerate(s):
                raise InputError(f"Simplex {s!r} is degenerate")
            closed.add(s)
            if len(s) > 1:
                stack.extend(face(s, i) for i in range(len(s)))
        self.simplices = frozenset(closed)
        self.name = name
        self.dimension = max((len(s) - 1 for s in closed), default=-1)
        self.dimension_bound = self.dimension if dimension_bound is None else dimension_bound
        if self.dimension > self.dimension_bound:
            raise DimensionBoundError(
                f"{name or 'simplicial set'} has dimension {self.dimension} above its bound {self.dimension_bound}"
            )
        by_dim = {}
        for s in closed:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {d: sorted(ss, key=_sort_key) for d, ss in by_dim.items()}
        self._levels = {}

    def __eq__(self, other):
        return isinstance(other, SimplicialSet) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        counts = [len(self._by_dim.get(d, [])) for d in range(self.dimension + 1)]
        return f"SimplicialSet({self.name or '?'}, nondegenerate per dimension={counts})"

    @property
    def is_empty(self):
        return not self.simplices

    @property
    def vertices(self):
        return [s[0] for s in self._by_dim.get(0, [])]

    def nondegenerate(self, dim):
        if dim > self.dimension_bound:
            raise DimensionBoundError(f"Dimension {dim} is above the bound {self.dimension_bound} of {self.name}")
        return list(self._by_dim.get(dim, []))

    def counts(self):
        return [len(self._by_dim.get(d, [])) for d in range(self.dimension + 1)]

    def contains(self, seq):
        return normal_form(seq) in self.simplices

    def level(self, n):
        """All n-simplices, degenerate ones included, as vertex sequences."""
        if n in self._levels:
            return self._levels[n]
        out = []
        for k in range(min(n, self.dimension) + 1):
            for x in self._by_dim.get(k, []):
                # monotone surjections [n] -> [k] as cut points
                for cuts in combinations(range(1, n + 1), k):
                    bounds = (0,) + cuts + (n + 1,)
                    seq = []
                    for j in range(k + 1):
                        seq.extend([x[j]] * (bounds[j + 1] - bounds[j]))
                    out.append(tuple(seq))
        out.sort(key=_sort_key)
        self._levels[n] = out
        return out

    def is_subcomplex_of(self, other):
        return self.simplices <= other.simplices

    def union(self, other, name=""):
        return SimplicialSet(self.simplices | other.simplices, max(self.dimension_bound, other.dimension_bound), name)

    def intersection(self, other, name=""):
        return SimplicialSet(self.simplices & other.simplices, min(self.dimension_bound, other.dimension_bound), name)

    def restrict_to(self, predicate, name=""):
        return SimplicialSet([s for s in self.simplices if predicate(s)], self.dimension_bound, name)

    def skeleton(self, k):
        return self.restrict_to(lambda s: len(s) - 1 <= k, name=f"sk{k}({self.name})")

    def one_skeleton_graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(s for s in self._by_dim.get(1, []))
        return graph

    def to_json(self):
        return {
            "name": self.name,
            "dimension_bound": self.dimension_bound,
            "simplices": {
                str(d): [list(s) for s in self._by_dim.get(d, [])] for d in range(self.dimension + 1)
            },
            "faces": {
                str(d): [[list(face(s, i)) for i in range(len(s))] for s in self._by_dim.get(d, [])]
                for d in range(1, self.dimension + 1)
            },
        }


class SimplicialMap:
    """A map of simplicial sets, determined by where it sends vertices."""

    def __init__(self, source, target, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)

    def __call__(self, seq):
        return tuple(self.vertex_map[v] for v in seq)

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.source == other.source
            and self.target == other.target
            and self.vertex_map == other.vertex_map
        )

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.vertex_map.items(), key=repr))))

    def is_valid(self):
        if set(self.vertex_map) != set(self.source.vertices):
            return False
        return all(self.target.contains(self(s)) for s in self.source.simplices)

    def then(self, other):
        return SimplicialMap(self.source, other.target, {v: other.vertex_map[w] for v, w in self.vertex_map.items()})

    def image(self):
        return SimplicialSet(
            {normal_form(self(s)) for s in self.source.simplices}, self.target.dimension_bound, f"im({self.source.name})"
        )


def empty(name="empty"):
    return SimplicialSet([], 0, name)


def delta(n):
    if n < 0:
        raise InputError(f"Delta[{n}] needs n >= 0")
    return SimplicialSet([tuple(range(n + 1))], n, f"Delta[{n}]")


def boundary(n):
    if n < 0:
        raise InputError(f"boundary Delta[{n}] needs n >= 0")
    full = tuple(range(n + 1))
    faces = [face(full, i) for i in range(n + 1)] if n >= 1 else []
    return SimplicialSet(faces, n, f"dDelta[{n}]")


def horn(n, k):
    if n < 1 or not 0 <= k <= n:
        raise InputError(f"Horn Lambda^{k}[{n}] needs n >= 1 and 0 <= k <= n")
    full = tuple(range(n + 1))
    return SimplicialSet([face(full, i) for i in range(n + 1) if i != k], n, f"Lambda^{k}[{n}]")


def poset_nerve(elements, relations, name="poset"):
    """Nerve of the poset generated by ``relations`` (pairs a <= b)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    graph.add_edges_from((a, b) for a, b in relations if a != b)
    if not nx.is_directed_acyclic_graph(graph):
        raise InputError(f"Relations of {name} are not antisymmetric")
    order = nx.transitive_closure_dag(graph)
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        for nxt in order.successors(chain[-1]):
            extend(chain + [nxt])

    for x in graph.nodes:
        extend([x])
    return SimplicialSet(chains, max(len(c) for c in chains) - 1 if chains else 0, name)


def cube(m):
    """The nerve of the poset {0 < 1}^m; vertices are 0/1 tuples."""
    points = list(cartesian((0, 1), repeat=m))
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        last = chain[-1]
        for p in points:
            if p != last and all(a <= b for a, b in zip(last, p)):
                extend(chain + [p])

    for p in points:
        extend([p])
    return SimplicialSet(chains, m, f"cube[{m}]")


def in_cube_boundary(chain, m):
    """Boundary of the m-cube by induction on m: the boundary of the first
    m - 1 coordinates times the interval, union the cube times the two ends."""
    if m == 0:
        return False
    if len({p[m - 1] for p in chain}) == 1:
        return True
    return in_cube_boundary(normal_form([p[: m - 1] for p in chain]), m - 1)


def cube_boundary(m):
    full = cube(m)
    return full.restrict_to(lambda s: in_cube_boundary(s, m), name=f"dcube[{m}]")


def product(X, Y):
    """X x Y on nondegenerate data: shuffles of pairs of simplices."""
    simplices = set()
    for x in X.simplices:
        for y in Y.simplices:
            p, q = len(x) - 1, len(y) - 1
            for ups in combinations(range(p + q), p):
                i = j = 0
                seq = [(x[0], y[0])]
                for step in range(p + q):
                    if step in ups:
                        i += 1
                    else:
                        j += 1
                    seq.append((x[i], y[j]))
                simplices.add(tuple(seq))
    return SimplicialSet(simplices, X.dimension_bound + Y.dimension_bound, f"({X.name} x {Y.name})")


def power(X, m, name=None):
    """X^m; vertices are m-tuples of vertices of X."""
    top = m * X.dimension
    simplices = []
    for d in range(top + 1):
        for columns in cartesian(X.level(d), repeat=m):
            seq = tuple(zip(*columns)) if m else ((),) * (d + 1)
            if not is_degenerate(seq):
                simplices.append(seq)
    return SimplicialSet(simplices, m * X.dimension_bound, name or f"{X.name}^{m}")


def disjoint_union(parts, name="coproduct"):
    """Coproduct of named parts; vertices become ``(tag, vertex)``."""
    simplices = []
    bound = 0
    for tag, X in parts:
        bound = max(bound, X.dimension_bound)
        simplices.extend(tuple((tag, v) for v in s) for s in X.simplices)
    return SimplicialSet(simplices, bound, name)


def build_sset(kind, n=None, k=None, m=None, elements=None, relations=None, factors=None):
    if kind == "delta":
        return delta(n)
    if kind == "boundary":
        return boundary(n)
    if kind == "horn":
        return horn(n, k)
    if kind == "poset_nerve":
        return poset_nerve(elements or [], relations or [])
    if kind == "product":
        if not factors or len(factors) != 2:
            raise InputError("product needs exactly two factors")
        return product(*factors)
    if kind == "cube":
        return cube(m)
    if kind == "cube_boundary":
        return cube_boundary(m)
    if kind == "point":
        return delta(0)
    if kind == "empty":
        return empty()
    raise InputError(f"Unknown simplicial set kind {kind!r}")
