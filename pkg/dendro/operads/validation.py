import logging
from itertools import permutations

from ..errors import DendroError
from .operad import Operation, Violation, compose_permutations, identity_permutation, matching_permutation

logger = logging.getLogger(__name__)


def _tags_after_compose(n_p, i, n_q, p_tags=None, q_tags=None):
    p_tags = [("p", j) for j in range(n_p)] if p_tags is None else p_tags
    q_tags = [("q", j) for j in range(n_q)] if q_tags is None else q_tags
    return p_tags[:i] + q_tags + p_tags[i + 1:]


def _check(violations, law, instance, thunk):
    try:
        if not thunk():
            violations.append(Violation(law, instance))
    except DendroError as e:
        violations.append(Violation(f"{law}:missing", {**instance, "error": e.message}))


def validate_operad(P, max_arity=None):
    """Every failing instance of the operad laws among operations of arity <= max_arity.

    A simplicial operad is validated levelwise up to its level bound, then
    against the face maps between adjacent levels.
    """
    if hasattr(P, "level_operad"):
        violations = []
        for level in range(P.level_bound + 1):
            for v in validate_operad(P.level_operad(level), max_arity):
                violations.append(Violation(v.law, {**v.instance, "level": level}))
        return violations + simplicial_violations(P, max_arity)

    max_arity = P.arity_cap if max_arity is None else min(max_arity, P.arity_cap)
    ops = P.all_operations(max_arity)
    by_output = {}
    for q in ops:
        by_output.setdefault(q.output, []).append(q)
    violations = []

    def within(*arities):
        return all(a <= max_arity for a in arities)

    for p in ops:
        n = len(p.inputs)
        key = repr(p)
        _check(violations, "left_unit", {"p": key}, lambda: P.compose(P.identity(p.output), 0, p) == p)
        for i in range(n):
            _check(violations, "right_unit", {"p": key, "i": i},
                   lambda: P.compose(p, i, P.identity(p.inputs[i])) == p)

        _check(violations, "action_unit", {"p": key}, lambda: P.act(p, identity_permutation(n)) == p)
        perms = list(permutations(range(n)))
        for s in perms:
            for t in perms:
                _check(violations, "action", {"p": key, "s": list(s), "t": list(t)},
                       lambda: P.act(P.act(p, s), t) == P.act(p, compose_permutations(s, t)))

        # (p.s) o_i q is defined when q ends in the colour p.s has at i, i.e. p.inputs[s[i]]
        for s in perms:
            for i in range(n):
                for q in by_output.get(p.inputs[s[i]], []):
                    m = len(q.inputs)
                    if not within(n + m - 1):
                        continue

                    def left_equivariance(s=s, i=i, q=q, m=m):
                        lhs = P.compose(P.act(p, s), i, q)
                        rhs = P.compose(p, s[i], q)
                        lhs_tags = _tags_after_compose(n, i, m, p_tags=[("p", s[j]) for j in range(n)])
                        rhs_tags = _tags_after_compose(n, s[i], m)
                        return lhs == P.act(rhs, matching_permutation(lhs_tags, rhs_tags))

                    _check(violations, "left_equivariance", {"p": key, "i": i, "q": repr(q), "s": list(s)},
                           left_equivariance)

        for i in range(n):
            for q in by_output.get(p.inputs[i], []):
                m = len(q.inputs)
                if not within(n + m - 1):
                    continue
                inst = {"p": key, "i": i, "q": repr(q)}
                for t in permutations(range(m)):
                    def right_equivariance(t=t):
                        lhs = P.compose(p, i, P.act(q, t))
                        rhs = P.compose(p, i, q)
                        lhs_tags = _tags_after_compose(n, i, m, q_tags=[("q", t[j]) for j in range(m)])
                        rhs_tags = _tags_after_compose(n, i, m)
                        return lhs == P.act(rhs, matching_permutation(lhs_tags, rhs_tags))

                    _check(violations, "right_equivariance", {**inst, "t": list(t)}, right_equivariance)

                for j in range(m):
                    for r in by_output.get(q.inputs[j], []):
                        k = len(r.inputs)
                        if not within(n + m + k - 2, m + k - 1):
                            continue
                        _check(violations, "sequential_associativity", {**inst, "j": j, "r": repr(r)},
                               lambda: P.compose(P.compose(p, i, q), i + j, r) == P.compose(p, i, P.compose(q, j, r)))
                for k_pos in range(i + 1, n):
                    for r in by_output.get(p.inputs[k_pos], []):
                        k = len(r.inputs)
                        if not within(n + m + k - 2, n + k - 1):
                            continue
                        _check(violations, "parallel_associativity", {**inst, "k": k_pos, "r": repr(r)},
                               lambda: P.compose(P.compose(p, i, q), k_pos + m - 1, r)
                               == P.compose(P.compose(p, k_pos, r), i, q))

    logger.info(f"Validated {P.name}: {len(ops)} operations, {len(violations)} violations")
    return violations


def _face(op, j):
    return Operation(op.inputs, op.output, op.label[:j] + op.label[j + 1:])


def simplicial_violations(S, max_arity=None):
    """Composites and actions of n-simplices are n-simplices and commute with the faces d_j."""
    max_arity = S.arity_cap if max_arity is None else min(max_arity, S.arity_cap)
    violations = []

    def is_simplex(r):
        return S.op_space(r.inputs, r.output).contains(r.label)

    for n in range(1, S.level_bound + 1):
        P, below = S.level_operad(n), S.level_operad(n - 1)
        ops = P.all_operations(max_arity)
        by_output = {}
        for q in ops:
            by_output.setdefault(q.output, []).append(q)

        for p in ops:
            key = repr(p)
            for s in permutations(range(len(p.inputs))):
                def action(p=p, s=s):
                    r = P.act(p, s)
                    return is_simplex(r) and all(below.act(_face(p, j), s) == _face(r, j) for j in range(n + 1))

                _check(violations, "simplicial_action", {"p": key, "s": list(s), "level": n}, action)

            for i in range(len(p.inputs)):
                for q in by_output.get(p.inputs[i], []):
                    if len(p.inputs) + len(q.inputs) - 1 > max_arity:
                        continue

                    def composition(p=p, i=i, q=q):
                        r = P.compose(p, i, q)
                        return is_simplex(r) and all(
                            below.compose(_face(p, j), i, _face(q, j)) == _face(r, j) for j in range(n + 1)
                        )

                    _check(violations, "simplicial_composition", {"p": key, "i": i, "q": repr(q), "level": n},
                           composition)

    logger.info(f"Checked {S.name} against its face maps up to level {S.level_bound}: {len(violations)} violations")
    return violations
