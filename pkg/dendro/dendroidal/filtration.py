"""The filtration of N_d(P[f]) by occurrences of the free generator.

N^(k) holds the dendrices with at most k occurrences of f. A^(k)_n adds to
it the faces of dendrices with k + 1 occurrences whose vertices are either
P-labelled or labelled by f alone, on trees with at most n + k vertices.
"""
import logging

from ..errors import PreconditionError
from ..operads.free_cell import F, attach_free_cell, check_sigma_free, term_nodes
from ..trees.catalog import corolla
from ..trees.enumeration import enumerate_trees
from ..trees.omega import factors_through, hom_omega
from .checks import horn_faces, is_degenerate, within_cap
from .dset import Nerve, Subobject, attach_free_cells, monos_into

logger = logging.getLogger(__name__)


def is_isolated_generator(op):
    term = op.label
    return term[0] == F and all(c[0] == "leaf" for c in term[1])


class FreeCellFiltration:
    def __init__(self, P, inputs, output, max_multiplicity=2, seed=0):
        check_sigma_free(P, P.arity_cap)
        self.P = P
        self.Pf = attach_free_cell(P, inputs, output, max_multiplicity=max_multiplicity, seed=seed)
        self.nerve = Nerve(self.Pf)
        self.base = Nerve(P)

    def m(self, x):
        return sum(self.Pf.multiplicity(op) for op in Nerve.ops(x).values())

    def nodes(self, x):
        return sum(term_nodes(op.label) for op in Nerve.ops(x).values())

    def member(self, x, k, n):
        """Whether x lies in A^(k)_n."""
        m = self.m(x)
        if m <= k:
            return True
        return m == k + 1 and self.nodes(x) <= n + k

    def in_U(self, T, q, k):
        if self.m(q) > k + 1 or is_degenerate(self.nerve, T, q):
            return False
        return all(self.Pf.multiplicity(op) == 0 or is_isolated_generator(op) for op in Nerve.ops(q).values())

    def U(self, k, n):
        """Nondegenerate dendrices spanning A^(k)_n, one tree per isomorphism class."""
        out = []
        for T in enumerate_trees(n + k, self.Pf.arity_cap):
            if not within_cap(T, self.Pf.arity_cap):
                continue
            out.extend((T, q) for q in self.nerve.eval(T) if self.in_U(T, q, k))
        return out

    def member_oracle(self, T, x, k, n):
        """``member`` by searching for x among the restrictions of the spanning dendrices."""
        if self.m(x) <= k:
            return True
        for S, q in self.U(k, n):
            if any(self.nerve.restrict(phi, q) == x for phi in hom_omega(T, S)):
                return True
        return False

    def filtration_stage(self, k, n):
        return Subobject(
            self.nerve,
            lambda T, x: self.member(x, k, n),
            f"A^({k})_{n}",
            {"kind": "filtration", "k": k, "n": n, "operad": self.Pf.name},
        )

    def multiplicity_stage(self, k):
        return Subobject(
            self.nerve,
            lambda T, x: self.m(x) <= k,
            f"N({self.Pf.name})^({k})",
            {"kind": "multiplicity", "k": k, "operad": self.Pf.name},
        )

    def horn_edges(self, T, q):
        """Inner edges next to an f-labelled vertex."""
        ops = Nerve.ops(q)
        flagged = {key for key, op in ops.items() if self.Pf.multiplicity(op) > 0}
        return sorted(e for e in T.inner_edges if e in flagged or T.parent[e] in flagged)

    def horn_square_check(self, T, q):
        """Compare Omega[T] x_{A_{n+1}} A_n with the horn at I_q, mono by mono."""
        m = self.m(q)
        if m == 0:
            raise PreconditionError("The dendrex has no occurrence of f", witness={"tree": T.describe()})
        k = m - 1
        n = T.num_vertices - k - 1
        if n < 0 or not self.in_U(T, q, k):
            raise PreconditionError(
                "The dendrex does not span the filtration",
                witness={"tree": T.describe(), "dendrex": repr(q)},
            )
        edges = self.horn_edges(T, q)
        faces = horn_faces(T, edges)
        mismatches = []
        monos = monos_into(T)
        for mono in monos:
            in_stage = self.member(self.nerve.restrict(mono, q), k, n)
            in_horn = any(factors_through(mono, face) for face in faces)
            if in_stage != in_horn:
                mismatches.append({"mono": repr(mono), "in_stage": in_stage, "in_horn": in_horn})
        return {
            "holds": not mismatches,
            "tree": T.describe(),
            "k": k,
            "n": n,
            "horn_edges": edges,
            "monos": len(monos),
            "mismatches": mismatches,
        }

    def pushout(self):
        """N_d(P)[f] as a cell complex over the nerve of P."""
        return attach_free_cells(self.base, [(self.Pf.f_inputs, self.Pf.f_output)])

    def generator_dendrex(self):
        C = corolla(len(self.Pf.f_inputs))
        colouring = {str(j + 1): c for j, c in enumerate(self.Pf.f_inputs)}
        colouring["0"] = self.Pf.f_output
        return C, Nerve.token(colouring, {"0": self.Pf.generator()})

    def compare_pushout(self, bound):
        """Match N_d(P)[f] against A^(0)_1 token by token on trees within the bound."""
        complex_ = self.pushout()
        C, generator = self.generator_dendrex()
        problems = []
        trees = [T for T in enumerate_trees(bound, self.Pf.arity_cap) if within_cap(T, self.Pf.arity_cap)]
        for T in trees:
            images = {}
            for x in complex_.eval(T):
                if x[0] == "base":
                    colouring, ops = Nerve.colouring(x[1]), Nerve.ops(x[1])
                    y = Nerve.token(colouring, {key: self.Pf.include(op) for key, op in ops.items()})
                else:
                    y = self.nerve.restrict(x[2], generator)
                if y in images:
                    problems.append({"tree": T.describe(), "problem": "not injective", "dendrex": repr(y)})
                images[y] = x
            stage = {y for y in self.nerve.eval(T) if self.member(y, 0, 1)}
            for y in stage - set(images):
                problems.append({"tree": T.describe(), "problem": "missed", "dendrex": repr(y)})
            for y in set(images) - stage:
                problems.append({"tree": T.describe(), "problem": "outside A^(0)_1", "dendrex": repr(y)})
        logger.info(f"Pushout comparison for {self.Pf.name} on {len(trees)} trees: {len(problems)} problems")
        return {"holds": not problems, "trees": len(trees), "problems": problems}

    def spanning_dendrices(self, bound):
        """Nondegenerate dendrices with at least one f whose vertices are P-labelled or f alone."""
        out = []
        for T in enumerate_trees(bound, self.Pf.arity_cap):
            if not within_cap(T, self.Pf.arity_cap):
                continue
            for q in self.nerve.eval(T):
                m = self.m(q)
                if m and self.in_U(T, q, m - 1):
                    out.append((T, q))
        return out

    def horn_square_report(self, bound):
        results = [self.horn_square_check(T, q) for T, q in self.spanning_dendrices(bound)]
        failures = [r for r in results if not r["holds"]]
        logger.info(f"Horn squares for {self.Pf.name}: {len(results)} checked, {len(failures)} failures")
        return {"holds": not failures, "checked": len(results), "failures": failures}
