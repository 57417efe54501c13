"""The operad P[f] obtained by attaching one free operation f to P.

Operations are decorated trees, stored as nested tuples:

    ("leaf", j)                 the j-th input of the operation
    ("P", p, (child, ...))      a vertex labelled by the operation p of P
    ("f", (child, ...))         a vertex labelled by the free generator

Children of a P-vertex plug into the inputs of p in order, children of an
f-vertex into the slots of f. A term is in canonical form when no P-vertex
has a P-vertex child, no P-vertex carries an identity, and the children of
every P-vertex are sorted by their codes (the label of p moving along with
the permutation, ties broken by the smallest resulting label).
"""
import logging
import random
from itertools import permutations, product

from ..errors import ArityCapError, InputError, PreconditionError
from .operad import FiniteOperad, Operation, invert_permutation, op_key

logger = logging.getLogger(__name__)

F = "f"


def term_code(term):
    kind = term[0]
    if kind == "leaf":
        return ("L", term[1])
    if kind == F:
        return ("F", tuple(term_code(c) for c in term[1]))
    return ("P", op_key(term[1]), tuple(term_code(c) for c in term[2]))


def multiplicity(term):
    kind = term[0]
    if kind == "leaf":
        return 0
    children = term[1] if kind == F else term[2]
    return (1 if kind == F else 0) + sum(multiplicity(c) for c in children)


def term_nodes(term):
    """Number of vertices of a decorated tree, P-vertices and f-vertices alike."""
    kind = term[0]
    if kind == "leaf":
        return 0
    children = term[1] if kind == F else term[2]
    return 1 + sum(term_nodes(c) for c in children)


def leaf_labels(term):
    kind = term[0]
    if kind == "leaf":
        return [term[1]]
    children = term[1] if kind == F else term[2]
    return [j for c in children for j in leaf_labels(c)]


def relabel(term, mapping):
    kind = term[0]
    if kind == "leaf":
        return ("leaf", mapping[term[1]])
    if kind == F:
        return (F, tuple(relabel(c, mapping) for c in term[1]))
    return ("P", term[1], tuple(relabel(c, mapping) for c in term[2]))


def substitute(term, j, replacement):
    kind = term[0]
    if kind == "leaf":
        return replacement if term[1] == j else term
    if kind == F:
        return (F, tuple(substitute(c, j, replacement) for c in term[1]))
    return ("P", term[1], tuple(substitute(c, j, replacement) for c in term[2]))


class DecoratedTreeOp:
    """A canonical decorated tree together with its signature."""

    __slots__ = ("term", "inputs", "output")

    def __init__(self, term, inputs, output):
        self.term = term
        self.inputs = tuple(inputs)
        self.output = output

    def __eq__(self, other):
        return isinstance(other, DecoratedTreeOp) and self.term == other.term and self.inputs == other.inputs

    def __hash__(self):
        return hash((self.term, self.inputs))

    def __repr__(self):
        return f"DecoratedTreeOp({describe_term(self.term)} : {list(self.inputs)} -> {self.output})"

    @property
    def multiplicity(self):
        return multiplicity(self.term)

    def as_operation(self):
        return Operation(self.inputs, self.output, self.term)


def describe_term(term):
    kind = term[0]
    if kind == "leaf":
        return f"x{term[1]}"
    if kind == F:
        return "f(" + ", ".join(describe_term(c) for c in term[1]) + ")"
    return f"{term[1].label}(" + ", ".join(describe_term(c) for c in term[2]) + ")"


class FreeCellOperad(FiniteOperad):
    """Lazy handle on P[f]; enumeration is capped by multiplicity, composition is not."""

    def __init__(self, base, f_inputs, f_output, max_multiplicity=2, seed=0):
        super().__init__(base.colours, base.arity_cap)
        for c in list(f_inputs) + [f_output]:
            base.check_colour(c)
        self.base = base
        self.f_inputs = tuple(f_inputs)
        self.f_output = f_output
        self.max_multiplicity = max_multiplicity
        self.seed = seed
        self.name = f"{base.name}[f:{list(f_inputs)}->{f_output}]"
        self._cache = {}

    # rewriting

    def _redexes(self, term, path=()):
        """Pairs (path, i): contract child i into the P-vertex at path, or drop it when i is None."""
        kind = term[0]
        if kind == "leaf":
            return []
        found = []
        if kind == "P":
            p, children = term[1], term[2]
            if self.base.is_identity(p):
                found.append((path, None))
            for i, c in enumerate(children):
                if c[0] == "P":
                    found.append((path, i))
        children = term[1] if kind == F else term[2]
        for i, c in enumerate(children):
            found.extend(self._redexes(c, path + (i,)))
        return found

    def _replace_at(self, term, path, fn):
        if not path:
            return fn(term)
        kind = term[0]
        children = list(term[1] if kind == F else term[2])
        children[path[0]] = self._replace_at(children[path[0]], path[1:], fn)
        return (F, tuple(children)) if kind == F else ("P", term[1], tuple(children))

    def _contract(self, term, i):
        p, children = term[1], term[2]
        child = children[i]
        composite = self.base.compose(p, i, child[1])
        if composite is None:
            raise ArityCapError(f"Contraction in {self.name} exceeds the arity cap {self.base.arity_cap}")
        return ("P", composite, children[:i] + child[2] + children[i + 1:])

    def _sort_children(self, term):
        kind = term[0]
        if kind == "leaf":
            return term
        if kind == F:
            return (F, tuple(self._sort_children(c) for c in term[1]))
        p = term[1]
        children = [self._sort_children(c) for c in term[2]]
        codes = [term_code(c) for c in children]
        order = sorted(range(len(children)), key=lambda j: codes[j])
        best = None
        # permutations only move children with equal codes
        blocks = []
        for j in order:
            if blocks and codes[blocks[-1][0]] == codes[j]:
                blocks[-1].append(j)
            else:
                blocks.append([j])
        for choice in product(*(permutations(b) for b in blocks)):
            perm = tuple(j for block in choice for j in block)
            candidate = self.base.act(p, perm)
            if best is None or op_key(candidate) < op_key(best[0]):
                best = (candidate, perm)
        candidate, perm = best
        return ("P", candidate, tuple(children[j] for j in perm))

    def canonical_form(self, term, rng=None):
        rng = rng or random.Random(self.seed)
        while True:
            redexes = self._redexes(term)
            if not redexes:
                break
            path, i = rng.choice(redexes)
            if i is None:
                term = self._replace_at(term, path, lambda t: t[2][0])
            else:
                term = self._replace_at(term, path, lambda t: self._contract(t, i))
        return self._sort_children(term)

    # signatures

    def term_signature(self, term, inputs_count=None):
        colours = {}

        def walk(t, colour):
            kind = t[0]
            if kind == "leaf":
                if t[1] in colours and colours[t[1]] != colour:
                    raise InputError(f"Leaf {t[1]} of a decorated tree has two colours")
                colours[t[1]] = colour
                return
            if kind == F:
                if colour != self.f_output or len(t[1]) != len(self.f_inputs):
                    raise InputError("f-vertex does not match the signature of f")
                for c, col in zip(t[1], self.f_inputs):
                    walk(c, col)
                return
            p = t[1]
            if p.output != colour or len(p.inputs) != len(t[2]):
                raise InputError(f"P-vertex {p.label} does not match its edges")
            for c, col in zip(t[2], p.inputs):
                walk(c, col)

        output = self._output_colour(term)
        walk(term, output)
        n = len(colours) if inputs_count is None else inputs_count
        if sorted(colours) != list(range(n)):
            raise InputError("Leaves of a decorated tree must be labelled 0..n-1 once each")
        return tuple(colours[j] for j in range(n)), output

    def _output_colour(self, term):
        kind = term[0]
        if kind == F:
            return self.f_output
        if kind == "P":
            return term[1].output
        raise InputError("A bare leaf has no intrinsic colour")

    def make(self, term, rng=None):
        if term[0] == "leaf":
            raise InputError("Use identity(c) for the identity operation")
        inputs, output = self.term_signature(term)
        return DecoratedTreeOp(self.canonical_form(term, rng), inputs, output).as_operation()

    # operad structure

    def identity(self, c):
        return Operation((c,), c, ("leaf", 0))

    def generator(self):
        term = (F, tuple(("leaf", j) for j in range(len(self.f_inputs))))
        return Operation(self.f_inputs, self.f_output, term)

    def include(self, p):
        """The operation of P[f] coming from p in P."""
        if self.base.is_identity(p):
            return self.identity(p.output)
        term = ("P", p, tuple(("leaf", j) for j in range(len(p.inputs))))
        return Operation(p.inputs, p.output, self._sort_children(term))

    def compose(self, p, i, q):
        if p.inputs[i] != q.output:
            raise InputError(f"Cannot compose in {self.name}: colours differ")
        n, m = len(p.inputs), len(q.inputs)
        if n + m - 1 > self.arity_cap:
            return None
        if self.is_identity(p):
            return q
        if self.is_identity(q):
            return p
        shift = {j: (j if j < i else j + m - 1) for j in range(n) if j != i}
        shift[i] = -1
        upper = relabel(q.label, {j: i + j for j in range(m)})
        term = substitute(relabel(p.label, shift), -1, upper)
        inputs = p.inputs[:i] + q.inputs + p.inputs[i + 1:]
        return Operation(inputs, p.output, self.canonical_form(term))

    def act(self, p, perm):
        inverse = invert_permutation(perm)
        inputs = tuple(p.inputs[s] for s in perm)
        term = relabel(p.label, {old: inverse[old] for old in range(len(perm))})
        if term[0] == "leaf":
            return Operation(inputs, p.output, term)
        return Operation(inputs, p.output, self._sort_children(term))

    def multiplicity(self, p):
        return multiplicity(p.label)

    def operations(self, inputs, output):
        return self.enumerate_ops(tuple(inputs), output, self.max_multiplicity)

    # enumeration

    def enumerate_ops(self, inputs, output, max_multiplicity):
        key = (tuple(inputs), output, max_multiplicity)
        if key in self._cache:
            return self._cache[key]
        for c in list(inputs) + [output]:
            self.check_colour(c)
        n = len(inputs)
        found = set()
        if n == 1 and inputs[0] == output:
            found.add(self.identity(output))
        for term in self._generate(output, frozenset(range(n)), max_multiplicity, inputs, allow_p=True):
            if term[0] == "leaf":
                continue
            found.add(Operation(tuple(inputs), output, self.canonical_form(term)))
        result = sorted(found, key=lambda p: repr(term_code(p.label)))
        self._cache[key] = result
        logger.debug(f"{self.name}: {len(result)} operations at {list(inputs)} -> {output} with m <= {max_multiplicity}")
        return result

    def _generate(self, colour, leaves, budget, inputs, allow_p):
        out = []
        if len(leaves) == 1:
            (j,) = leaves
            if inputs[j] == colour:
                out.append(("leaf", j))
        if colour == self.f_output and budget >= 1:
            for children in self._children(self.f_inputs, leaves, budget - 1, inputs, allow_p=True):
                out.append((F, children))
        if allow_p:
            max_children = len(leaves) + budget * 1
            for arity in range(max_children + 1):
                for p in self.base.operations_into(colour, arity):
                    if self.base.is_identity(p):
                        continue
                    for children in self._children(p.inputs, leaves, budget, inputs, allow_p=False):
                        out.append(("P", p, children))
        return out

    def _children(self, colours, leaves, budget, inputs, allow_p):
        k = len(colours)
        leaves = sorted(leaves)
        results = []
        for assignment in product(range(k), repeat=len(leaves)) if k else ([()] if not leaves else []):
            blocks = [frozenset(l for l, a in zip(leaves, assignment) if a == i) for i in range(k)]
            for split in _compositions(budget, k):
                options = []
                for colour, block, b in zip(colours, blocks, split):
                    opts = self._generate(colour, block, b, inputs, allow_p) if (block or b or allow_p) else []
                    if not opts:
                        break
                    options.append(opts)
                else:
                    for combo in product(*options):
                        results.append(tuple(combo))
        return results


def _compositions(total, parts):
    """Ways to write ``total`` as an ordered sum of ``parts`` non-negative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def attach_free_cell(P, profile_inputs, profile_output, max_multiplicity=2, seed=0):
    return FreeCellOperad(P, profile_inputs, profile_output, max_multiplicity=max_multiplicity, seed=seed)


def check_sigma_free(P, max_arity):
    free, witness = P.is_sigma_free(max_arity)
    if not free:
        raise PreconditionError(f"{P.name} is not Sigma-free", witness={"operation": repr(witness)})
