"""Generating maps of the cofibrations and trivial cofibrations.

The C and A families are maps of simplicial operads, the TC and TA families
maps of preoperads. Every map built here is an inclusion, so it is stored
as its source and target.
"""
import logging
from collections import namedtuple
from itertools import product

from ..dendroidal.checks import within_cap
from ..errors import InputError, PreconditionError
from ..operads.operad import CategoryOperad, trivial_operad
from ..operads.simplicial_operad import SimplicialOperad, corolla_operad, discrete
from ..simplicial.sset import SimplicialSet, boundary, delta, horn
from ..trees.catalog import corolla, eta
from ..trees.enumeration import enumerate_trees
from .preoperad import OmegaKT, SimplicialNerve, SubPreoperad, core_union_boundary, omega_sub

logger = logging.getLogger(__name__)

Generator = namedtuple("Generator", ["family", "source", "target", "parameters"])

OPERAD_FAMILIES = ("C1", "C2", "A1", "A2")
PREOPERAD_FAMILIES = ("TC1", "TC2", "TC3", "TA1", "TA2", "TA3")


class EmptySimplicialOperad(SimplicialOperad):
    name = "empty"

    def __init__(self):
        super().__init__([], 0, 0)

    def op_space(self, inputs, output):
        return SimplicialSet([], 0, "empty")


def check_equivalence_from_zero(H):
    """eta -> H at the object 0 is fully faithful and essentially surjective, at the level of sets."""
    if sorted(H.colours) != ["0", "1"]:
        raise PreconditionError(f"{H.name} must have objects 0 and 1", witness={"objects": H.colours})
    endo = H.hom("0", "0")
    if len(endo) != 1:
        raise PreconditionError(
            f"{H.name} is not fully faithful on 0: {len(endo)} endomorphisms",
            witness={"endomorphisms": [a.label for a in endo]},
        )
    for a in H.hom("0", "1"):
        for b in H.hom("1", "0"):
            if H.then(a, b) == H.identity("0") and H.then(b, a) == H.identity("1"):
                return a, b
    raise PreconditionError(f"0 and 1 are not isomorphic in {H.name}")


def _need(value, what, low=0):
    if value is None or value < low:
        raise InputError(f"{what} must be an integer >= {low}")
    return value


def generator(family, n=None, m=None, k=None, tree=None, arity=None, category=None):
    """The generating map of the given family.

    C2 and A2 use n for the arity of the corolla and m for the simplex;
    TC2, TA2, TC3 and TA3 use n for the simplex and ``arity`` or ``tree``
    for the tree.
    """
    if family == "C1":
        return Generator(family, EmptySimplicialOperad(), discrete(trivial_operad("0"), 1), {})
    if family == "C2":
        n, m = _need(n, "n"), _need(m, "m")
        return Generator(
            family, corolla_operad(n, boundary(m), m), corolla_operad(n, delta(m), m), {"n": n, "m": m}
        )
    if family == "A2":
        n, m = _need(n, "n"), _need(m, "m", 1)
        k = _need(k, "k")
        if k > m:
            raise InputError(f"Horn Lambda^{k}[{m}] needs k <= m")
        return Generator(
            family, corolla_operad(n, horn(m, k), m), corolla_operad(n, delta(m), m), {"n": n, "m": m, "k": k}
        )
    if family in ("A1", "TA1"):
        if category is None:
            raise InputError(f"{family} needs a category on the objects 0 and 1")
        check_equivalence_from_zero(category)
        if family == "A1":
            unit = category.identity("0").label
            zero = CategoryOperad(["0"], {unit: ("0", "0")}, {(unit, unit): unit}, {"0": unit}, name="eta")
            return Generator(family, discrete(zero, 1), discrete(category, 1), {"H": category.name})
        target = SimplicialNerve(discrete(category, 1))
        source = SubPreoperad(
            target,
            lambda T, x: all(c == "0" for c in dict(x[0]).values()),
            f"eta -> {target.name}",
            {"kind": "object", "object": "0"},
        )
        return Generator(family, source, target, {"H": category.name})
    if family == "TC1":
        target = OmegaKT(delta(0), eta("0"))
        return Generator(family, SubPreoperad(target, lambda T, x: False, "empty"), target, {})
    if family in ("TC2", "TA2"):
        n = _need(n, "n", 1 if family == "TA2" else 0)
        T = corolla(_need(arity, "arity")) if tree is None else tree
        if T.num_vertices != 1:
            raise InputError(f"{family} needs a tree with one vertex, got {T.describe()}")
        target = OmegaKT(delta(n), T)
        if family == "TC2":
            return Generator(family, omega_sub(target, boundary(n)), target, {"n": n, "tree": T.describe()})
        k = _need(k, "k")
        if k > n:
            raise InputError(f"Horn Lambda^{k}[{n}] needs k <= n")
        return Generator(family, omega_sub(target, horn(n, k)), target, {"n": n, "k": k, "tree": T.describe()})
    if family in ("TC3", "TA3"):
        n = _need(n, "n")
        T = tree if tree is not None else corolla(_need(arity, "arity"))
        target = OmegaKT(delta(n), T)
        return Generator(family, core_union_boundary(target, boundary(n)), target, {"n": n, "tree": T.describe()})
    raise InputError(f"Unknown generator family {family!r}")


def _signatures(colours, max_arity):
    for arity in range(max_arity + 1):
        for inputs in product(colours, repeat=arity):
            for output in colours:
                yield inputs, output


def operad_inclusion_report(gen, max_arity=None):
    """Operation spaces of the source sit inside those of the target, profile by profile."""
    S, T = gen.source, gen.target
    max_arity = T.arity_cap if max_arity is None else max_arity
    problems = []
    spaces = []
    if not set(S.colours) <= set(T.colours):
        problems.append({"colours": [c for c in S.colours if c not in T.colours]})
    for inputs, output in _signatures(T.colours, max_arity):
        big = T.op_space(inputs, output)
        small = S.op_space(inputs, output) if set(inputs) | {output} <= set(S.colours) else None
        counts = [small.counts() if small is not None else [], big.counts()]
        if small is not None and not small.is_subcomplex_of(big):
            problems.append({"profile": [list(inputs), output]})
        if big.simplices:
            spaces.append({"profile": [list(inputs), output], "counts": counts})
    return {"holds": not problems, "spaces": spaces, "problems": problems}


def preoperad_inclusion_report(gen, bound, level):
    """Levelwise inclusion of the source in the target on trees within the bound."""
    S, T = gen.source, gen.target
    rows = []
    problems = []
    for tree in enumerate_trees(bound, T.max_arity):
        if not within_cap(tree, T.max_arity):
            continue
        for n in range(min(level, T.level_bound) + 1):
            small, big = S.eval(n, tree), T.eval(n, tree)
            if not set(small) <= set(big):
                problems.append({"tree": tree.describe(), "level": n})
            if big:
                rows.append({"tree": tree.describe(), "level": n, "source": len(small), "target": len(big)})
    logger.info(f"{gen.family}: {len(rows)} nonempty (tree, level) pairs, {len(problems)} not included")
    return {"holds": not problems, "counts": rows, "problems": problems}
