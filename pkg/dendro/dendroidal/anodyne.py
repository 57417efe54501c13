"""Inner anodyne certificates by explicit horn attachments.

A certificate is a list of steps (tree, horn edges I, dendrex y of B at the
tree). Replaying it from A, each y restricted to Lambda^I[tree] lands in what
was built so far while y and its faces at edges of I do not; at the end
every nondegenerate dendrex of B within the bound has been reached.
"""
import logging
import random
from collections import namedtuple
from itertools import combinations

from ..errors import PreconditionError
from ..trees.omega import hom_omega
from .checks import corpus, horn_faces, nondegenerate_dendrices
from .dset import inner_face_multi

logger = logging.getLogger(__name__)

AttachStep = namedtuple("AttachStep", ["tree", "edges", "dendrex"])

DEFAULT_BUDGET = 5000


def edge_sets(T):
    """Nonempty sets of inner edges, smallest first."""
    inner = sorted(T.inner_edges)
    return [set(c) for r in range(1, len(inner) + 1) for c in combinations(inner, r)]


def singleton_sets(T):
    return [{e} for e in sorted(T.inner_edges)]


class Builder:
    """The subcomplex generated by A and the dendrices attached so far."""

    def __init__(self, A, B):
        self.A = A
        self.B = B
        self.attached = []
        self._images = {}

    def _image(self, S, y, T):
        key = (S, y, T)
        if key not in self._images:
            self._images[key] = {self.B.restrict(phi, y) for phi in hom_omega(T, S)}
        return self._images[key]

    def contains(self, T, x):
        if self.A.contains(T, x):
            return True
        return any(x in self._image(S, y, T) for S, _, y in self.attached)

    def step_problems(self, T, y, edges):
        problems = []
        for face in horn_faces(T, edges):
            if not self.contains(face.source, self.B.restrict(face, y)):
                problems.append(f"horn face {face.source.describe()} not built")
        for r in range(len(edges) + 1):
            for J in combinations(sorted(edges), r):
                mono = inner_face_multi(T, J)
                if self.contains(mono.source, self.B.restrict(mono, y)):
                    problems.append(f"face contracting {list(J)} already built")
        return problems

    def attach(self, T, edges, y):
        self.attached.append(AttachStep(T, frozenset(edges), y))

    def detach(self):
        self.attached.pop()


def check_inclusion(A, B, bound):
    for T in corpus(B, bound):
        for x in A.eval(T):
            if not B.contains(T, x):
                raise PreconditionError(
                    f"{A.name} is not contained in {B.name}",
                    witness={"tree": T.describe(), "dendrex": repr(x)},
                )


def candidates(A, B, bound, rank=None):
    rank = rank or (lambda T, x: 0)
    missing = [(T, x) for T, x in nondegenerate_dendrices(B, bound) if not A.contains(T, x)]
    missing.sort(key=lambda item: (item[0].num_vertices, rank(*item), item[0].code, repr(item[1])))
    return missing


def validate_certificate(A, B, steps, bound):
    """Replay ``steps`` from A; an empty list means the certificate is valid."""
    builder = Builder(A, B)
    problems = []
    for index, step in enumerate(steps):
        if not step.edges or not step.edges <= step.tree.inner_edges:
            problems.append({"step": index, "problem": "horn edges must be a nonempty set of inner edges"})
            break
        found = builder.step_problems(step.tree, step.dendrex, step.edges)
        if found:
            problems.append({"step": index, "problem": found})
            break
        builder.attach(step.tree, step.edges, step.dendrex)
    if not problems:
        for T, x in nondegenerate_dendrices(B, bound, up_to_iso=False):
            if not builder.contains(T, x):
                problems.append({"problem": "not reached", "tree": T.describe(), "dendrex": repr(x)})
                break
    return problems


def certify_inner_anodyne(A, B, bound, rank=None, budget=DEFAULT_BUDGET, seed=0, singleton=False):
    """Search for an attachment sequence building B from A within the bound.

    Returns a dict with ``status`` holds, fails or inconclusive. ``seed``
    only shuffles candidates of equal size. With ``singleton`` every step
    uses a horn at a single inner edge.
    """
    choices = singleton_sets if singleton else edge_sets
    check_inclusion(A, B, bound)
    todo = candidates(A, B, bound, rank)
    rng = random.Random(seed)
    if seed:
        # shuffle inside blocks of equal size so the order stays by vertex count
        blocks = {}
        for item in todo:
            blocks.setdefault(item[0].num_vertices, []).append(item)
        todo = []
        for size in sorted(blocks):
            block = blocks[size]
            rng.shuffle(block)
            todo.extend(block)
    logger.info(f"Certifying {A.name} -> {B.name}: {len(todo)} missing nondegenerate dendrices")

    builder = Builder(A, B)
    nodes = [0]
    frontier = []

    def search():
        nodes[0] += 1
        if nodes[0] > budget:
            return None
        remaining = [(T, y) for T, y in todo if not builder.contains(T, y)]
        if not remaining:
            return True
        if not frontier or len(remaining) < len(frontier):
            frontier[:] = remaining
        for T, y in remaining:
            for edges in choices(T):
                if builder.step_problems(T, y, edges):
                    continue
                builder.attach(T, edges, y)
                outcome = search()
                if outcome:
                    return True
                builder.detach()
                if outcome is None:
                    return None
        return False

    outcome = search()
    steps = list(builder.attached) if outcome else []
    if outcome:
        problems = validate_certificate(A, B, steps, bound)
        if problems:
            raise PreconditionError("Certificate failed re-validation", witness=problems[0])
        status = "holds"
    elif outcome is None:
        status = "inconclusive"
    else:
        larger = [
            (T, x)
            for T, x in nondegenerate_dendrices(B, bound + 1)
            if T.num_vertices == bound + 1 and not A.contains(T, x)
        ]
        status = "inconclusive" if larger else "fails"

    logger.info(f"Certification of {A.name} -> {B.name} finished: {status} after {nodes[0]} search nodes")
    if status == "inconclusive":
        logger.warning(f"No certificate within {bound} vertices and budget {budget}")
    return {
        "status": status,
        "steps": steps,
        "frontier": [(T.describe(), repr(x)) for T, x in frontier] if status != "holds" else [],
        "nodes": nodes[0],
    }


def describe_steps(steps):
    return [
        {"tree": s.tree.describe(), "horn_edges": sorted(s.edges), "dendrex": repr(s.dendrex)} for s in steps
    ]

