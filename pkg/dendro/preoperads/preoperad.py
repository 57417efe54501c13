"""Preoperads: simplicial dendroidal sets whose colours form a discrete space.

A handle evaluates at a level n and a tree T to a finite list of tokens. It
restricts along morphisms of trees (``restrict``) and along monotone maps
[m] -> [n] (``reindex``, the map given as the tuple of its values). The
spaces X_T met here have simplices determined by their vertices, so
``space(T)`` rebuilds X_T as a finite simplicial set.
"""
import logging

from ..dendroidal.dset import DendroidalSet, Nerve, collapse_to_edge, edge_inclusion
from ..errors import InputError, PreconditionError
from ..simplicial.invariants import components
from ..simplicial.sset import SimplicialSet, normal_form
from ..trees.catalog import eta
from ..trees.omega import compose, hom_omega

logger = logging.getLogger(__name__)


class Preoperad:
    name = "X"
    max_arity = 2
    level_bound = 1

    def __init__(self):
        self._evals = {}
        self._spaces = {}

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"

    def eval(self, n, T):
        key = (n, T)
        if key not in self._evals:
            self._evals[key] = list(self._eval(n, T))
        return self._evals[key]

    def _eval(self, n, T):
        raise NotImplementedError

    def restrict(self, phi, x, n):
        raise NotImplementedError

    def reindex(self, T, alpha, x):
        raise NotImplementedError

    def contains(self, n, T, x):
        return x in self.eval(n, T)

    def objects(self):
        return self.eval(0, eta("0"))

    def object_at(self, T, e, x, n):
        """The object (a level-0 token at eta("0")) that x puts on the edge e."""
        y = self.restrict(edge_inclusion(T, e, "0"), x, n)
        return self.reindex(eta("0"), (0,), y) if n else y

    def vertices_of(self, T, x, n):
        return tuple(self.reindex(T, (i,), x) for i in range(n + 1))

    def space(self, T, top=None):
        """X_T up to level ``top`` as a simplicial set on its level-0 tokens."""
        top = self.level_bound if top is None else top
        key = (T, top)
        if key in self._spaces:
            return self._spaces[key]
        simplices = []
        for n in range(top + 1):
            seen = {}
            for x in self.eval(n, T):
                seq = self.vertices_of(T, x, n)
                if seq in seen and seen[seq] != x:
                    raise PreconditionError(
                        f"{self.name} has two {n}-simplices at {T.describe()} with the same vertices",
                        witness={"tree": T.describe(), "level": n, "vertices": repr(seq)},
                    )
                seen[seq] = x
                simplices.append(normal_form(seq))
        space = SimplicialSet(simplices, top, f"{self.name}_{T.describe()}")
        self._spaces[key] = space
        return space

    def level_slice(self, n):
        return LevelSlice(self, n)

    @property
    def provenance(self):
        return {"kind": type(self).__name__, "name": self.name}


class LevelSlice(DendroidalSet):
    """The dendroidal set T -> X_{n,T}."""

    def __init__(self, X, n):
        super().__init__()
        if n > X.level_bound:
            raise InputError(f"Level {n} is above the bound {X.level_bound} of {X.name}")
        self.X = X
        self.n = n
        self.name = f"{X.name}_{n}"
        self.max_arity = X.max_arity

    def _eval(self, T):
        return self.X.eval(self.n, T)

    def restrict(self, phi, x):
        return self.X.restrict(phi, x, self.n)

    def contains(self, T, x):
        return self.X.contains(self.n, T, x)

    @property
    def provenance(self):
        return {"kind": "level_slice", "level": self.n, "of": self.X.provenance}


def level_slice(X, n):
    return LevelSlice(X, n)


class Constant(Preoperad):
    """A dendroidal set seen as a preoperad constant in the simplicial direction."""

    def __init__(self, A, level_bound=1):
        super().__init__()
        self.A = A
        self.name = A.name
        self.max_arity = A.max_arity
        self.level_bound = level_bound

    def _eval(self, n, T):
        return self.A.eval(T)

    def restrict(self, phi, x, n):
        return self.A.restrict(phi, x)

    def reindex(self, T, alpha, x):
        return x

    @property
    def provenance(self):
        return {"kind": "constant", "of": self.A.provenance}


class Product(Preoperad):
    """K x A: level n at T is K_n x A_T. Not a preoperad unless K is discrete."""

    def __init__(self, K, A):
        super().__init__()
        self.K = K
        self.A = A
        self.name = f"{K.name} x {A.name}"
        self.max_arity = A.max_arity
        self.level_bound = K.dimension_bound

    def _eval(self, n, T):
        return [(k, a) for k in self.K.level(n) for a in self.A.eval(T)]

    def restrict(self, phi, x, n):
        k, a = x
        return k, self.A.restrict(phi, a)

    def reindex(self, T, alpha, x):
        k, a = x
        return tuple(k[i] for i in alpha), a

    @property
    def provenance(self):
        return {"kind": "product", "space": self.K.name, "of": self.A.provenance}


class OmegaKT(Preoperad):
    """Omega[K, T]: K x Omega[T] with K x eta collapsed to a point at every edge.

    Tokens are ``("edge", phi)`` when phi factors through an edge and
    ``("cell", k, phi)`` otherwise.
    """

    def __init__(self, K, tree):
        super().__init__()
        self.K = K
        self.tree = tree
        self.name = f"Omega[{K.name}, {tree.describe()}]"
        self.max_arity = max([len(s.leaves) for s in tree.subtrees] + [1])
        self.level_bound = max(K.dimension_bound, 0)

    @staticmethod
    def _token(k, phi):
        if not phi.image[1]:
            return "edge", phi
        return "cell", k, phi

    def _eval(self, n, S):
        out = []
        for phi in hom_omega(S, self.tree):
            if not phi.image[1]:
                out.append(("edge", phi))
            else:
                out.extend(("cell", k, phi) for k in self.K.level(n))
        return out

    def restrict(self, phi, x, n):
        if x[0] == "edge":
            return "edge", compose(x[1], phi)
        return self._token(x[1], compose(x[2], phi))

    def reindex(self, T, alpha, x):
        if x[0] == "edge":
            return x
        return "cell", tuple(x[1][i] for i in alpha), x[2]

    @property
    def provenance(self):
        return {"kind": "omega", "space": self.K.name, "tree": self.tree.describe()}


def omega_kt(K, tree):
    return OmegaKT(K, tree)


class SubPreoperad(Preoperad):
    """The tokens of ``ambient`` satisfying ``predicate(T, x)``, closed under both restrictions."""

    def __init__(self, ambient, predicate, name, provenance=None):
        super().__init__()
        self.ambient = ambient
        self.predicate = predicate
        self.name = name
        self.max_arity = ambient.max_arity
        self.level_bound = ambient.level_bound
        self._provenance = provenance or {"kind": "sub", "name": name}

    def _eval(self, n, T):
        return [x for x in self.ambient.eval(n, T) if self.predicate(T, x)]

    def restrict(self, phi, x, n):
        return self.ambient.restrict(phi, x, n)

    def reindex(self, T, alpha, x):
        return self.ambient.reindex(T, alpha, x)

    @property
    def provenance(self):
        return self._provenance


def _core_cell(x):
    return x[0] == "edge" or len(x[2].image[1]) <= 1


def omega_sub(omega, L):
    """Omega[L, T] inside Omega[K, T] for a subcomplex L of K."""
    return SubPreoperad(
        omega,
        lambda T, x: x[0] == "edge" or L.contains(x[1]),
        f"Omega[{L.name}, {omega.tree.describe()}]",
        {"kind": "omega", "space": L.name, "tree": omega.tree.describe()},
    )


def sc_kt(K, tree):
    """Sc[K, T]: the part of Omega[K, T] over subtrees with at most one vertex."""
    omega = OmegaKT(K, tree)
    return SubPreoperad(
        omega,
        lambda T, x: _core_cell(x),
        f"Sc[{K.name}, {tree.describe()}]",
        {"kind": "core", "space": K.name, "tree": tree.describe()},
    )


def core_union_boundary(omega, L):
    """Sc[K, T] union Omega[L, T] inside Omega[K, T]."""
    return SubPreoperad(
        omega,
        lambda T, x: _core_cell(x) or L.contains(x[1]),
        f"Sc[{omega.K.name}, {omega.tree.describe()}] u Omega[{L.name}, {omega.tree.describe()}]",
        {"kind": "core_union", "space": L.name, "tree": omega.tree.describe()},
    )


class SimplicialNerve(Preoperad):
    """The nerve of a simplicial operad: level n is the nerve of its n-simplices."""

    def __init__(self, S):
        super().__init__()
        self.S = S
        self.name = f"N({S.name})"
        self.max_arity = S.arity_cap
        self.level_bound = S.level_bound
        self._nerves = {}

    def nerve(self, n):
        if n not in self._nerves:
            self._nerves[n] = Nerve(self.S.level_operad(n))
        return self._nerves[n]

    @staticmethod
    def object_token(colour):
        return Nerve.token({"0": colour}, {})

    def _eval(self, n, T):
        return self.nerve(n).eval(T)

    def restrict(self, phi, x, n):
        return self.nerve(n).restrict(phi, x)

    def reindex(self, T, alpha, x):
        ops = {
            key: op._replace(label=tuple(op.label[i] for i in alpha)) for key, op in Nerve.ops(x).items()
        }
        return Nerve.token(Nerve.colouring(x), ops)

    @property
    def provenance(self):
        return {"kind": "nerve", "operad": self.S.name}


def simplicial_nerve(S):
    return SimplicialNerve(S)


class GammaShriek(Preoperad):
    """gamma_!(X): on linear trees, eps^*(x) is replaced by the component of x in X_eta."""

    def __init__(self, X):
        super().__init__()
        self.X = X
        self.name = f"gamma({X.name})"
        self.max_arity = X.max_arity
        self.level_bound = X.level_bound
        self._classes = None

    def classes(self):
        """Component of each level-0 colour token of X, as its least member."""
        if self._classes is None:
            space = self.X.space(eta("0"))
            comp = components(space)
            reps = {}
            for v in sorted(comp, key=repr):
                reps.setdefault(comp[v], v)
            self._classes = {v: reps[c] for v, c in comp.items()}
        return self._classes

    def _colour(self, T, y, n):
        return self.classes()[self.X.object_at(T, T.root, y, n)]

    def _in_colours(self, T, y, n):
        if not T.is_linear:
            return False
        eps = collapse_to_edge(T, T.root)
        section = edge_inclusion(T, T.root, T.root)
        return self.X.restrict(eps, self.X.restrict(section, y, n), n) == y

    def _normal(self, T, y, n):
        if self._in_colours(T, y, n):
            return "colour", self._colour(T, y, n)
        return "dendrex", y

    def _eval(self, n, T):
        out = [("dendrex", y) for y in self.X.eval(n, T) if not self._in_colours(T, y, n)]
        if T.is_linear:
            out.extend(("colour", c) for c in sorted(set(self.classes().values()), key=repr))
        return out

    def restrict(self, phi, x, n):
        if x[0] == "colour":
            return x
        return self._normal(phi.source, self.X.restrict(phi, x[1], n), n)

    def reindex(self, T, alpha, x):
        if x[0] == "colour":
            return x
        return self._normal(T, self.X.reindex(T, alpha, x[1]), len(alpha) - 1)

    @property
    def provenance(self):
        return {"kind": "gamma", "of": self.X.provenance}


def gamma_shriek(X):
    return GammaShriek(X)
