from itertools import permutations

from ..errors import InputError
from .operad import FiniteOperad, Operation


class TreeOperad(FiniteOperad):
    """The free operad on a tree: colours are edges, operations are subtrees.

    An operation is labelled by the sorted vertex set of its subtree; its
    inputs list the subtree's leaves in some order.
    """

    def __init__(self, tree):
        super().__init__(tree.edges, max([len(s.leaves) for s in tree.subtrees] + [1]))
        self.tree = tree
        self.name = f"Omega[{tree.describe()}]"

    def identity(self, c):
        return Operation((c,), c, ())

    def subtree_of(self, p):
        return self.tree.subtree(p.output, p.label)

    def operations(self, inputs, output):
        inputs = tuple(inputs)
        if len(set(inputs)) != len(inputs) or output not in self.tree.edges:
            return []
        found = []
        for s in self.tree.subtrees_at(output, len(inputs)):
            if set(s.leaves) == set(inputs):
                found.append(Operation(inputs, output, tuple(sorted(s.vertices))))
        return found

    def all_operations(self, max_arity=None):
        out = []
        for s in self.tree.subtrees:
            leaves = s.leaves
            if max_arity is not None and len(leaves) > max_arity:
                continue
            for listing in permutations(leaves):
                out.append(Operation(tuple(listing), s.root, tuple(sorted(s.vertices))))
        return out

    def compose(self, p, i, q):
        if p.inputs[i] != q.output:
            raise InputError(f"Cannot graft {q} into input {i} of {p}")
        inputs = p.inputs[:i] + q.inputs + p.inputs[i + 1:]
        if len(inputs) > self.arity_cap:
            return None
        return Operation(inputs, p.output, tuple(sorted(set(p.label) | set(q.label))))

    def act(self, p, perm):
        return Operation(tuple(p.inputs[s] for s in perm), p.output, p.label)

    def generators(self):
        return [op for op in self.all_operations() if len(op.label) == 1]


def free_operad_on_tree(tree):
    return TreeOperad(tree)
