"""Finite coloured operads in sets.

An operation carries its own signature: ``Operation(inputs, output, label)``.
The symmetric groups act on the right, ``act(p, s).inputs[j] == p.inputs[s[j]]``,
so that ``act(act(p, s), t) == act(p, compose_permutations(s, t))``.
Compositions whose arity would exceed ``arity_cap`` are undefined and return
None.
"""
import logging
from collections import namedtuple
from itertools import permutations, product

from ..errors import ArityCapError, InputError, PreconditionError

logger = logging.getLogger(__name__)

Operation = namedtuple("Operation", ["inputs", "output", "label"])
Violation = namedtuple("Violation", ["law", "instance"])

IDENTITY_LABEL = "id"


def compose_permutations(s, t):
    return tuple(s[t[j]] for j in range(len(t)))


def invert_permutation(s):
    out = [0] * len(s)
    for j, i in enumerate(s):
        out[i] = j
    return tuple(out)


def identity_permutation(n):
    return tuple(range(n))


def matching_permutation(lhs, rhs):
    """The s with ``rhs[s[j]] == lhs[j]``, for lists of distinct tags."""
    position = {tag: i for i, tag in enumerate(rhs)}
    return tuple(position[tag] for tag in lhs)


def op_key(p):
    return (p.inputs, p.output, repr(p.label))


class FiniteOperad:
    """Base class; subclasses provide ``operations``, ``identity``, ``compose`` and ``act``."""

    name = "operad"

    def __init__(self, colours, arity_cap):
        self.colours = sorted(colours, key=repr)
        self.arity_cap = arity_cap

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, colours={self.colours}, cap={self.arity_cap})"

    def check_colour(self, c):
        if c not in self.colours:
            raise InputError(f"Unknown colour {c!r} of {self.name}")

    def operations(self, inputs, output):
        raise NotImplementedError

    def identity(self, c):
        raise NotImplementedError

    def compose(self, p, i, q):
        raise NotImplementedError

    def act(self, p, perm):
        raise NotImplementedError

    def is_identity(self, p):
        return len(p.inputs) == 1 and p == self.identity(p.output)

    def compose_or_raise(self, p, i, q):
        result = self.compose(p, i, q)
        if result is None:
            raise ArityCapError(
                f"Composite of arity {len(p.inputs) + len(q.inputs) - 1} exceeds the cap {self.arity_cap} of {self.name}"
            )
        return result

    def operations_into(self, output, arity):
        out = []
        for inputs in product(self.colours, repeat=arity):
            out.extend(self.operations(tuple(inputs), output))
        return out

    def all_operations(self, max_arity=None):
        max_arity = self.arity_cap if max_arity is None else min(max_arity, self.arity_cap)
        out = []
        for n in range(max_arity + 1):
            for c in self.colours:
                out.extend(self.operations_into(c, n))
        return out

    def unary_isomorphisms(self):
        """Pairs (p, inverse) of mutually inverse unary operations."""
        unary = [p for p in self.all_operations(1) if len(p.inputs) == 1]
        out = []
        for p in unary:
            for q in self.operations((p.output,), p.inputs[0]):
                if self.compose(p, 0, q) == self.identity(p.output) and self.compose(q, 0, p) == self.identity(
                    p.inputs[0]
                ):
                    out.append((p, q))
                    break
        return out

    def is_sigma_free(self, max_arity=None):
        for p in self.all_operations(max_arity):
            n = len(p.inputs)
            for s in permutations(range(n)):
                if s != identity_permutation(n) and self.act(p, s) == p:
                    return False, p
        return True, None


class TableOperad(FiniteOperad):
    """An operad given by explicit composition and action tables.

    Identities are implicit (label ``id``); composition with an identity and
    the identity permutation need no table entry.
    """

    def __init__(self, colours, ops, compositions=None, actions=None, arity_cap=2, name="table"):
        super().__init__(colours, arity_cap)
        self.name = name
        self._ops = {}
        for p in ops:
            for c in list(p.inputs) + [p.output]:
                self.check_colour(c)
            self._ops.setdefault((tuple(p.inputs), p.output), []).append(p)
        for key in self._ops:
            self._ops[key] = sorted(set(self._ops[key]), key=op_key)
        self.compositions = dict(compositions or {})
        self.actions = dict(actions or {})

    def identity(self, c):
        return Operation((c,), c, IDENTITY_LABEL)

    def operations(self, inputs, output):
        found = list(self._ops.get((tuple(inputs), output), []))
        if len(inputs) == 1 and inputs[0] == output and output in self.colours:
            found = [self.identity(output)] + [p for p in found if p.label != IDENTITY_LABEL]
        return found

    def compose(self, p, i, q):
        if p.inputs[i] != q.output:
            raise InputError(f"Cannot compose {p} at {i} with {q}: colours differ")
        if len(p.inputs) + len(q.inputs) - 1 > self.arity_cap:
            return None
        if self.is_identity(p):
            return q
        if self.is_identity(q):
            return p
        try:
            return self.compositions[(p, i, q)]
        except KeyError:
            raise PreconditionError(
                f"Composition table of {self.name} has no entry for {p.label} o_{i} {q.label}",
                witness={"p": repr(p), "i": i, "q": repr(q)},
            )

    def act(self, p, perm):
        perm = tuple(perm)
        if perm == identity_permutation(len(p.inputs)):
            return p
        try:
            return self.actions[(p, perm)]
        except KeyError:
            raise PreconditionError(
                f"Action table of {self.name} has no entry for {p.label} . {perm}",
                witness={"p": repr(p), "perm": list(perm)},
            )


class CategoryOperad(FiniteOperad):
    """A finite category seen as an operad with unary operations only."""

    def __init__(self, objects, arrows, composition, identities, name="category"):
        super().__init__(objects, 1)
        self.name = name
        self.arrows = dict(arrows)
        self.composition = dict(composition)
        self.identities = dict(identities)
        self._by_ends = {}
        for a, (src, tgt) in self.arrows.items():
            self._by_ends.setdefault((src, tgt), []).append(a)

    def arrow(self, a):
        src, tgt = self.arrows[a]
        return Operation((src,), tgt, a)

    def hom(self, src, tgt):
        return [self.arrow(a) for a in sorted(self._by_ends.get((src, tgt), []), key=repr)]

    def operations(self, inputs, output):
        if len(inputs) != 1:
            return []
        return self.hom(inputs[0], output)

    def identity(self, c):
        return self.arrow(self.identities[c])

    def compose(self, p, i, q):
        if i != 0 or p.inputs[0] != q.output:
            raise InputError(f"Cannot compose arrows {p.label} and {q.label}")
        return self.arrow(self.composition[(p.label, q.label)])

    def act(self, p, perm):
        return p

    def then(self, q, p):
        """p after q."""
        return self.compose(p, 0, q)


def monoid_operad(elements, products, unit, colour="x", name="monoid"):
    """A monoid as a one-colour operad concentrated in arity one."""
    return CategoryOperad(
        [colour],
        {e: (colour, colour) for e in elements},
        {(a, b): products[(a, b)] for a in elements for b in elements},
        {colour: unit},
        name=name,
    )


def contractible_groupoid(objects, name=None):
    """E(objects): exactly one arrow between any two objects."""
    arrows = {f"{a}>{b}": (a, b) for a in objects for b in objects}
    composition = {}
    for a in objects:
        for b in objects:
            for c in objects:
                composition[(f"{b}>{c}", f"{a}>{b}")] = f"{a}>{c}"
    return CategoryOperad(objects, arrows, composition, {a: f"{a}>{a}" for a in objects}, name=name or f"E{objects}")


def groupoid_times_cyclic(objects, order=2, name=None):
    """E(objects) x Z/order: arrows ``a>b:z`` compose by adding z."""
    arrows = {f"{a}>{b}:{z}": (a, b) for a in objects for b in objects for z in range(order)}
    composition = {}
    for a in objects:
        for b in objects:
            for c in objects:
                for z in range(order):
                    for w in range(order):
                        composition[(f"{b}>{c}:{z}", f"{a}>{b}:{w}")] = f"{a}>{c}:{(z + w) % order}"
    return CategoryOperad(
        objects, arrows, composition, {a: f"{a}>{a}:0" for a in objects}, name=name or f"E{objects}xZ{order}"
    )


def commutative_operad(arity_cap, colour="x", nullary=False):
    """One colour, one operation in each arity, trivial actions."""
    low = 0 if nullary else 1
    ops = [Operation((colour,) * n, colour, f"mu{n}") for n in range(low, arity_cap + 1) if n != 1]
    by_arity = {n: Operation((colour,) * n, colour, f"mu{n}") for n in range(low, arity_cap + 1) if n != 1}
    by_arity[1] = Operation((colour,), colour, IDENTITY_LABEL)
    compositions = {}
    actions = {}
    for p in ops:
        n = len(p.inputs)
        for s in permutations(range(n)):
            actions[(p, s)] = p
        for i in range(n):
            for q in ops:
                m = len(q.inputs)
                if n + m - 1 <= arity_cap and (n + m - 1) in by_arity:
                    compositions[(p, i, q)] = by_arity[n + m - 1]
    return TableOperad([colour], ops, compositions, actions, arity_cap=arity_cap, name="Com")


def trivial_operad(colour="x"):
    """The operad eta: one colour and only its identity."""
    return TableOperad([colour], [], arity_cap=1, name="eta")


class OperadMap:
    """A map of operads given on colours and on operations."""

    def __init__(self, source, target, colour_map, op_map, name="map"):
        self.source = source
        self.target = target
        self.colour_map = dict(colour_map)
        self._op_map = op_map
        self.name = name

    def colour(self, c):
        return self.colour_map[c]

    def __call__(self, p):
        if callable(self._op_map):
            return self._op_map(p)
        if self.source.is_identity(p):
            return self.target.identity(self.colour_map[p.output])
        return self._op_map[p]

    def image_signature(self, p):
        return tuple(self.colour_map[c] for c in p.inputs), self.colour_map[p.output]

    def violations(self, max_arity=None):
        """Instances where colours, identities, composition or the action are not respected."""
        P, Q = self.source, self.target
        out = []
        ops = P.all_operations(max_arity)
        for c in P.colours:
            if self(P.identity(c)) != Q.identity(self.colour_map[c]):
                out.append(Violation("identity", {"colour": repr(c)}))
        for p in ops:
            image = self(p)
            if (image.inputs, image.output) != self.image_signature(p):
                out.append(Violation("signature", {"p": repr(p)}))
                continue
            n = len(p.inputs)
            for s in permutations(range(n)):
                if self(P.act(p, s)) != Q.act(image, s):
                    out.append(Violation("action", {"p": repr(p), "perm": list(s)}))
            for i in range(n):
                for q in ops:
                    if q.output != p.inputs[i]:
                        continue
                    composite = P.compose(p, i, q)
                    if composite is None:
                        continue
                    if self(composite) != Q.compose(image, i, self(q)):
                        out.append(Violation("composition", {"p": repr(p), "i": i, "q": repr(q)}))
        return out

    def then(self, other):
        return OperadMap(
            self.source,
            other.target,
            {c: other.colour_map[d] for c, d in self.colour_map.items()},
            lambda p: other(self(p)),
            name=f"{other.name}.{self.name}",
        )


def identity_map(P):
    return OperadMap(P, P, {c: c for c in P.colours}, lambda p: p, name=f"id_{P.name}")


def change_colours(P, colour_function, colours=None, name=None):
    """f^*(P): colours of the domain of f, operations pulled back from P."""
    colours = list(colour_function) if colours is None else list(colours)
    return PulledBackOperad(P, dict(colour_function), colours, name or f"f*({P.name})")


class PulledBackOperad(FiniteOperad):
    def __init__(self, base, colour_function, colours, name):
        super().__init__(colours, base.arity_cap)
        self.base = base
        self.f = colour_function
        self.name = name

    def _wrap(self, p, inputs, output):
        return Operation(tuple(inputs), output, (p.label, p.inputs, p.output))

    def _unwrap(self, p):
        label, inputs, output = p.label
        return Operation(inputs, output, label)

    def operations(self, inputs, output):
        base_ops = self.base.operations(tuple(self.f[c] for c in inputs), self.f[output])
        return [self._wrap(p, inputs, output) for p in base_ops]

    def identity(self, c):
        return self._wrap(self.base.identity(self.f[c]), (c,), c)

    def compose(self, p, i, q):
        if p.inputs[i] != q.output:
            raise InputError(f"Cannot compose {p} at {i} with {q}: colours differ")
        r = self.base.compose(self._unwrap(p), i, self._unwrap(q))
        if r is None:
            return None
        return self._wrap(r, p.inputs[:i] + q.inputs + p.inputs[i + 1:], p.output)

    def act(self, p, perm):
        r = self.base.act(self._unwrap(p), perm)
        return self._wrap(r, tuple(p.inputs[s] for s in perm), p.output)


def classify_operad_morphism(u, max_arity=None):
    """Flags fully_faithful, essentially_surjective and isofibration, with witnesses."""
    P, Q = u.source, u.target
    max_arity = min(P.arity_cap, Q.arity_cap) if max_arity is None else max_arity
    witnesses = []

    for c in P.colours:
        if u.colour_map.get(c) not in Q.colours:
            raise InputError(f"Colour {c!r} is not sent to a colour of {Q.name}")

    fully_faithful = True
    for n in range(max_arity + 1):
        for inputs in product(P.colours, repeat=n):
            for x in P.colours:
                source_ops = P.operations(tuple(inputs), x)
                target_ops = Q.operations(tuple(u.colour_map[c] for c in inputs), u.colour_map[x])
                images = {u(p) for p in source_ops}
                if len(images) != len(source_ops) or images != set(target_ops):
                    fully_faithful = False
                    if len(witnesses) < 5:
                        witnesses.append({"flag": "fully_faithful", "signature": [list(inputs), x]})

    q_isos = Q.unary_isomorphisms()
    image_colours = {u.colour_map[c] for c in P.colours}
    essentially_surjective = True
    for y in Q.colours:
        if y in image_colours:
            continue
        if not any(b.inputs[0] in image_colours and b.output == y for b, _ in q_isos):
            essentially_surjective = False
            witnesses.append({"flag": "essentially_surjective", "colour": repr(y)})

    p_isos = P.unary_isomorphisms()
    isofibration = True
    for b, _ in q_isos:
        for x in P.colours:
            if u.colour_map[x] != b.inputs[0]:
                continue
            if not any(a.inputs[0] == x and u(a) == b for a, _ in p_isos):
                isofibration = False
                witnesses.append({"flag": "isofibration", "iso": repr(b), "colour": repr(x)})

    logger.info(
        f"Classified {u.name}: fully_faithful={fully_faithful} essentially_surjective={essentially_surjective} "
        f"isofibration={isofibration}"
    )
    return {
        "fully_faithful": fully_faithful,
        "essentially_surjective": essentially_surjective,
        "isofibration": isofibration,
        "witnesses": witnesses,
    }
