"""The pushout Q of P <- K -> H along a full embedding u: K -> H.

K is a category with one object, H a category with objects {0, 1} and u
sends the object of K to 0. Q has the colours of P and one new colour ``t``
standing for the object 1. Its operations are represented by terms

    ("PQ", ho, p, hs)   ho in H(0,1) or None, p in P, hs[j] in H(1,0) or None
    ("H11", h)          h in H(1,1)

where ``ho`` is set exactly when the output is t and ``hs[j]`` exactly when
input j is t. Terms are identified by moving images of K across the seam:

    (h u(k), p, hs)          ~ (h, f(k) p, hs)
    (ho, p, .. u(k) h' ..)   ~ (ho, p o_j f(k), .. h' ..)
    (h, f(k), (h1,))         ~ H11(h u(k) h1)

and each class is represented by its least term.
"""
import logging
from itertools import permutations, product

from ..errors import InputError, PreconditionError
from .operad import FiniteOperad, OperadMap, Operation, matching_permutation, op_key

logger = logging.getLogger(__name__)

MAX_FACTORIZATIONS = 2


def term_key(term):
    if term[0] == "H11":
        return (0, repr(term[1]))
    _, ho, p, hs = term
    return (1, "" if ho is None else repr(ho), op_key(p), tuple("" if h is None else repr(h) for h in hs))


def _fresh_colour(colours, name="t"):
    while name in colours:
        name += "'"
    return name


class PushoutOperad(FiniteOperad):
    def __init__(self, P, f, u, name=None):
        K, H = u.source, u.target
        if len(K.colours) != 1:
            raise PreconditionError(f"K must have exactly one object, got {K.colours}")
        if len(H.colours) != 2:
            raise PreconditionError(f"H must have exactly two objects, got {H.colours}")
        (k0,) = K.colours
        self.zero = u.colour_map[k0]
        (self.one,) = [c for c in H.colours if c != self.zero]
        self.c0 = f.colour_map[k0]
        P.check_colour(self.c0)

        self.P, self.K, self.H, self.f, self.u = P, K, H, f, u
        self.t = _fresh_colour(P.colours)
        super().__init__(list(P.colours) + [self.t], P.arity_cap)
        self.name = name or f"{P.name} +_{K.name} {H.name}"

        self.u_of = {k: u(K.arrow(k)).label for k in K.arrows}
        self.f_of = {k: f(K.arrow(k)) for k in K.arrows}
        endo = {a.label for a in H.hom(self.zero, self.zero)}
        if set(self.u_of.values()) != endo or len(endo) != len(self.u_of):
            raise PreconditionError(
                f"u: {K.name} -> {H.name} is not fully faithful",
                witness={"K(0,0)": sorted(self.u_of), "H(0,0)": sorted(endo)},
            )
        for m, label in ((f, "f"), (u, "u")):
            bad = m.violations(1)
            if bad:
                raise PreconditionError(f"{label} is not a functor", witness={"law": bad[0].law, **bad[0].instance})
        self.u_inverse = {h: k for k, h in self.u_of.items()}
        self.h01 = [a.label for a in H.hom(self.zero, self.one)]
        self.h10 = [a.label for a in H.hom(self.one, self.zero)]
        self.h11 = [a.label for a in H.hom(self.one, self.one)]
        self._rep = {}
        self._ops = {}

    # H composition on labels: ``later`` after ``earlier``
    def _hc(self, later, earlier):
        return self.H.composition[(later, earlier)]

    def _base_signature(self, inputs, output):
        base_inputs = tuple(self.c0 if c == self.t else c for c in inputs)
        return base_inputs, self.c0 if output == self.t else output

    def _terms(self, inputs, output):
        terms = []
        if inputs == (self.t,) and output == self.t:
            terms.extend(("H11", h) for h in self.h11)
        base_inputs, base_output = self._base_signature(inputs, output)
        ho_choices = self.h01 if output == self.t else [None]
        hs_choices = [self.h10 if c == self.t else [None] for c in inputs]
        for p in self.P.operations(base_inputs, base_output):
            for ho in ho_choices:
                for hs in product(*hs_choices):
                    terms.append(("PQ", ho, p, tuple(hs)))
        return terms

    def _classes(self, inputs, output):
        sig = (tuple(inputs), output)
        if sig in self._ops:
            return self._ops[sig]
        terms = self._terms(*sig)
        parent = {term: term for term in terms}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                if term_key(rb) < term_key(ra):
                    ra, rb = rb, ra
                parent[rb] = ra

        for term in terms:
            if term[0] == "H11":
                continue
            _, ho, p, hs = term
            for k, uk in self.u_of.items():
                fk = self.f_of[k]
                if ho is not None:
                    union(("PQ", self._hc(ho, uk), p, hs), ("PQ", ho, self.P.compose_or_raise(fk, 0, p), hs))
                for j, h in enumerate(hs):
                    if h is not None:
                        moved = hs[:j] + (self._hc(uk, h),) + hs[j + 1:]
                        union(("PQ", ho, p, moved), ("PQ", ho, self.P.compose_or_raise(p, j, fk), hs))
                if ho is not None and len(hs) == 1 and hs[0] is not None and p == fk:
                    union(term, ("H11", self._hc(self._hc(ho, uk), hs[0])))

        reps = {}
        for term in terms:
            rep = find(term)
            self._rep[term] = rep
            reps[rep] = Operation(sig[0], output, rep)
        self._ops[sig] = sorted(reps.values(), key=lambda op: term_key(op.label))
        logger.debug(f"{self.name}: {len(terms)} terms in {len(reps)} classes at {list(sig[0])} -> {output}")
        return self._ops[sig]

    def normalize(self, term, inputs, output):
        inputs = tuple(inputs)
        if term not in self._rep:
            self._classes(inputs, output)
        if term not in self._rep:
            raise InputError(f"Term {term!r} does not have signature {list(inputs)} -> {output}")
        return Operation(inputs, output, self._rep[term])

    def operations(self, inputs, output):
        inputs = tuple(inputs)
        for c in list(inputs) + [output]:
            self.check_colour(c)
        return list(self._classes(inputs, output))

    def identity(self, c):
        if c == self.t:
            return self.normalize(("H11", self.H.identities[self.one]), (c,), c)
        return self.normalize(("PQ", None, self.P.identity(c), (None,)), (c,), c)

    def compose(self, A, i, B):
        if A.inputs[i] != B.output:
            raise InputError(f"Cannot compose in {self.name}: colours differ at input {i}")
        inputs = A.inputs[:i] + B.inputs + A.inputs[i + 1:]
        if len(inputs) > self.arity_cap:
            return None
        a, b = A.label, B.label
        if a[0] == "H11":
            if b[0] == "H11":
                term = ("H11", self._hc(a[1], b[1]))
            else:
                _, ho, p, hs = b
                term = ("PQ", self._hc(a[1], ho), p, hs)
            return self.normalize(term, inputs, A.output)

        _, ho, p, hs = a
        h_i = hs[i]
        if h_i is None:
            _, _, p2, hs2 = b
            term = ("PQ", ho, self.P.compose_or_raise(p, i, p2), hs[:i] + hs2 + hs[i + 1:])
        elif b[0] == "H11":
            term = ("PQ", ho, p, hs[:i] + (self._hc(h_i, b[1]),) + hs[i + 1:])
        else:
            _, ho2, p2, hs2 = b
            k = self.u_inverse[self._hc(h_i, ho2)]
            inner = self.P.compose_or_raise(self.f_of[k], 0, p2)
            term = ("PQ", ho, self.P.compose_or_raise(p, i, inner), hs[:i] + hs2 + hs[i + 1:])
        return self.normalize(term, inputs, A.output)

    def act(self, A, perm):
        perm = tuple(perm)
        if A.label[0] == "H11":
            return A
        _, ho, p, hs = A.label
        inputs = tuple(A.inputs[s] for s in perm)
        term = ("PQ", ho, self.P.act(p, perm), tuple(hs[s] for s in perm))
        return self.normalize(term, inputs, A.output)

    # the two structure maps and the universal property

    def colour_of_object(self, obj):
        return self.c0 if obj == self.zero else self.t

    def g_op(self, a):
        src, tgt = self.H.arrows[a.label]
        if src == self.zero and tgt == self.zero:
            fk = self.f_of[self.u_inverse[a.label]]
            return self.normalize(("PQ", None, fk, (None,)), (self.c0,), self.c0)
        if src == self.zero:
            return self.normalize(("PQ", a.label, self.P.identity(self.c0), (None,)), (self.c0,), self.t)
        if tgt == self.zero:
            return self.normalize(("PQ", None, self.P.identity(self.c0), (a.label,)), (self.t,), self.c0)
        return self.normalize(("H11", a.label), (self.t,), self.t)

    def v_op(self, p):
        return self.normalize(("PQ", None, p, (None,) * len(p.inputs)), p.inputs, p.output)

    @property
    def g(self):
        return OperadMap(self.H, self, {self.zero: self.c0, self.one: self.t}, self.g_op, name="g")

    @property
    def v(self):
        return OperadMap(self.P, self, {c: c for c in self.P.colours}, self.v_op, name="v")

    def factor(self, alpha, beta):
        """The map gamma: Q -> R with gamma g = beta and gamma v = alpha."""
        R = alpha.target
        if beta.target is not R:
            raise InputError("alpha and beta must have the same target")
        if beta.colour_map[self.zero] != alpha.colour_map[self.c0]:
            raise PreconditionError("alpha and beta disagree on the colour of the seam")
        for k in self.K.arrows:
            if alpha(self.f_of[k]) != beta(self.H.arrow(self.u_of[k])):
                raise PreconditionError(
                    "alpha f and beta u differ", witness={"arrow": repr(k)}
                )

        def gamma(q):
            term = q.label
            if term[0] == "H11":
                return beta(self.H.arrow(term[1]))
            _, ho, p, hs = term
            r = alpha(p)
            for j, h in enumerate(hs):
                if h is not None:
                    r = R.compose_or_raise(r, j, beta(self.H.arrow(h)))
            if ho is not None:
                r = R.compose_or_raise(beta(self.H.arrow(ho)), 0, r)
            return r

        colour_map = dict(alpha.colour_map)
        colour_map[self.t] = beta.colour_map[self.one]
        return OperadMap(self, R, colour_map, gamma, name="gamma")


def pushout_full_embedding(P, f, u):
    """Q together with g: H -> Q, v: P -> Q and the factorization map."""
    Q = PushoutOperad(P, f, u)
    logger.info(f"Built pushout {Q.name} with new colour {Q.t!r}")
    return {"Q": Q, "g": Q.g, "v": Q.v, "factor": Q.factor}


def count_factorizations(Q, alpha, beta, max_arity=2, limit=MAX_FACTORIZATIONS):
    """How many operad maps Q -> R (up to arity ``max_arity``) restrict to alpha and beta.

    Stops counting at ``limit``.
    """
    R = alpha.target
    colour_map = dict(alpha.colour_map)
    colour_map[Q.t] = beta.colour_map[Q.one]
    ops = Q.all_operations(max_arity)

    forced = {}

    def force(q, value):
        if forced.get(q, value) != value:
            return False
        forced[q] = value
        return True

    consistent = True
    for c in Q.colours:
        consistent &= force(Q.identity(c), R.identity(colour_map[c]))
    for p in Q.P.all_operations(max_arity):
        consistent &= force(Q.v_op(p), alpha(p))
    for h in Q.H.arrows:
        consistent &= force(Q.g_op(Q.H.arrow(h)), beta(Q.H.arrow(h)))
    if not consistent:
        return 0

    order = sorted(ops, key=lambda q: (q not in forced, len(q.inputs), term_key(q.label)))
    index = {q: n for n, q in enumerate(order)}
    constraints = {q: [] for q in order}
    for a in order:
        n = len(a.inputs)
        for i in range(n):
            for b in order:
                if b.output != a.inputs[i]:
                    continue
                c = Q.compose(a, i, b)
                if c is None or c not in index:
                    continue
                last = max(index[a], index[b], index[c])
                constraints[order[last]].append(("compose", a, i, b, c))
        for s in permutations(range(n)):
            b = Q.act(a, s)
            last = max(index[a], index[b])
            constraints[order[last]].append(("act", a, s, b))

    values = {}
    count = 0

    def ok(q):
        for con in constraints[q]:
            if con[0] == "compose":
                _, a, i, b, c = con
                r = R.compose(values[a], i, values[b])
                if r is not None and r != values[c]:
                    return False
            else:
                _, a, s, b = con
                if R.act(values[a], s) != values[b]:
                    return False
        return True

    def search(n):
        nonlocal count
        if count >= limit:
            return
        if n == len(order):
            count += 1
            return
        q = order[n]
        candidates = [forced[q]] if q in forced else R.operations(
            tuple(colour_map[c] for c in q.inputs), colour_map[q.output]
        )
        for value in candidates:
            values[q] = value
            if ok(q):
                search(n + 1)
            del values[q]

    search(0)
    logger.info(f"{count} factorizations of ({alpha.name}, {beta.name}) through {Q.name} up to arity {max_arity}")
    return count


# brute-force presentation of the pushout, used as an oracle


class _PresentationTerms:
    """Formal composites of P- and H-generators with labelled leaves."""

    def __init__(self, Q, inputs, output):
        self.Q = Q
        self.inputs = tuple(inputs)
        self.output = output
        self._memo = {}

    def _object_of(self, colour):
        if colour == self.Q.c0:
            return self.Q.zero
        if colour == self.Q.t:
            return self.Q.one
        return None

    def exact(self, colour, labels, size):
        key = (colour, labels, size)
        if key in self._memo:
            return self._memo[key]
        Q, out = self.Q, []
        if size == 0:
            if len(labels) == 1 and self.inputs[next(iter(labels))] == colour:
                out.append(("x", next(iter(labels))))
        else:
            if colour in Q.P.colours:
                for arity in range(1, len(labels) + 1):
                    for p in Q.P.operations_into(colour, arity):
                        out.extend(("P", p, children) for children in self._children(p.inputs, labels, size - 1))
            obj = self._object_of(colour)
            if obj is not None:
                for src in (Q.zero, Q.one):
                    for a in Q.H.hom(src, obj):
                        for child in self.exact(Q.colour_of_object(src), labels, size - 1):
                            out.append(("H", a.label, child))
        self._memo[key] = out
        return out

    def _children(self, colours, labels, size):
        k = len(colours)
        labels = sorted(labels)
        results = []
        for assignment in product(range(k), repeat=len(labels)):
            blocks = [frozenset(l for l, a in zip(labels, assignment) if a == i) for i in range(k)]
            if not all(blocks):
                continue
            for split in _compositions(size, k):
                options = [self.exact(c, b, s) for c, b, s in zip(colours, blocks, split)]
                if all(options):
                    results.extend(product(*options))
        return results

    def upto(self, max_nodes):
        labels = frozenset(range(len(self.inputs)))
        return [t for size in range(max_nodes + 1) for t in self.exact(self.output, labels, size)]


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def term_size(term):
    if term[0] == "x":
        return 0
    if term[0] == "H":
        return 1 + term_size(term[2])
    return 1 + sum(term_size(c) for c in term[2])


def _local_rewrites(Q, term):
    P, H = Q.P, Q.H
    if term[0] == "P":
        p, children = term[1], term[2]
        if P.is_identity(p):
            yield children[0]
        for i, c in enumerate(children):
            if c[0] == "P":
                composite = P.compose(p, i, c[1])
                if composite is not None:
                    yield ("P", composite, children[:i] + c[2] + children[i + 1:])
        n = len(children)
        for s in permutations(range(n)):
            if s != tuple(range(n)):
                yield ("P", P.act(p, s), tuple(children[s[j]] for j in range(n)))
    elif term[0] == "H":
        a, child = term[1], term[2]
        src, tgt = H.arrows[a]
        if src == tgt and H.identities[src] == a:
            yield child
        if child[0] == "H":
            yield ("H", H.composition[(a, child[1])], child[2])
        if src == tgt == Q.zero:
            yield ("P", Q.f_of[Q.u_inverse[a]], (child,))


def _rewrites(Q, term):
    yield from _local_rewrites(Q, term)
    if term[0] == "P":
        children = term[2]
        for i, c in enumerate(children):
            for r in _rewrites(Q, c):
                yield ("P", term[1], children[:i] + (r,) + children[i + 1:])
    elif term[0] == "H":
        for r in _rewrites(Q, term[2]):
            yield ("H", term[1], r)


def evaluate_term(Q, term, inputs):
    """The operation of Q a formal term stands for, inputs ordered by leaf label."""

    def walk(t):
        if t[0] == "x":
            return Q.identity(inputs[t[1]]), [t[1]]
        if t[0] == "H":
            op, labels = walk(t[2])
            return Q.compose_or_raise(Q.g_op(Q.H.arrow(t[1])), 0, op), labels
        op = Q.v_op(t[1])
        values = [walk(c) for c in t[2]]
        for i in reversed(range(len(values))):
            op = Q.compose_or_raise(op, i, values[i][0])
        return op, [j for _, labels in values for j in labels]

    op, labels = walk(term)
    return Q.act(op, matching_permutation(list(range(len(labels))), labels))


def brute_force_pushout(Q, signatures, max_nodes=2):
    """Compare Q with the presentation of the pushout by generators and relations.

    Formal terms with at most ``max_nodes + 1`` generator nodes are closed
    under the relations (composition in P and in H, units, f(k) = u(k), the
    symmetric action); the classes of terms with at most ``max_nodes`` nodes
    are then compared with the operations of Q they evaluate to.
    """
    for c in Q.P.colours:
        if Q.P.operations_into(c, 0):
            raise PreconditionError(f"The presentation oracle needs P without nullary operations ({c!r} has some)")
    results = []
    for inputs, output in signatures:
        inputs = tuple(inputs)
        terms = _PresentationTerms(Q, inputs, output).upto(max_nodes + 1)
        parent = {t: t for t in terms}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in terms:
            for r in _rewrites(Q, t):
                if r in parent:
                    ra, rb = find(t), find(r)
                    if ra != rb:
                        parent[rb] = ra

        images = {}
        for t in terms:
            if term_size(t) <= max_nodes:
                images.setdefault(find(t), set()).add(evaluate_term(Q, t, inputs))
        well_defined = all(len(v) == 1 for v in images.values())
        hit = [next(iter(v)) for v in images.values()]
        q_ops = Q.operations(inputs, output)
        injective = well_defined and len(set(hit)) == len(hit)
        surjective = set(hit) >= set(q_ops)
        results.append(
            {
                "signature": [list(inputs), output],
                "terms": len(terms),
                "classes": len(images),
                "q_operations": len(q_ops),
                "well_defined": well_defined,
                "injective": injective,
                "surjective": surjective,
            }
        )
    agrees = all(r["injective"] and r["surjective"] for r in results)
    logger.info(f"Presentation oracle for {Q.name}: agrees={agrees} on {len(results)} signatures")
    return {"agrees": agrees, "signatures": results}
