"""Encoding 3,4-SAT instances as border-basis detection problems.

For an instance with n variables and m clauses the target ring has
N = 2n + 2m + 1 variables, in the fixed order

    x_1 .. x_n,  xb_1 .. xb_n,  c_1 .. c_m,  xc_1 .. xc_m,  X

(xb_i is the negated-literal companion of x_i, c_l / xc_l tag clause l,
and X is a filler that pads tag degrees).  Every variable i gets a
degree-4 tag term recording which clauses mention it, and two degree-7
polarity terms built from the tag.  The emitted system consists of

* one two-term polynomial per variable (its two polarity terms),
* one three-term polynomial per clause (each literal contributes its
  polarity term with the clause tag c_l swapped for xc_l),
* single-term polynomials for every degree-8 term and for the region
  leftovers, which force those terms into any border.

A satisfying assignment turns into a passing border selection (the false
polarity of each variable, one true literal per clause, every forced
term), and any accepted certificate reads back as a satisfying
assignment.  All support terms have degree 7 or 8 and supports are
pairwise disjoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .detection import BorderCertificate, BorderSelection
from .order_ideals import BudgetExceededError
from .polynomials import Polynomial, PolySystem
from .sat import Assignment, CnfInstance, evaluate, require_valid_34
from .terms import Ring, Term, children_of_set, terms_of_degree

TAG_DEGREE = 4


@dataclass(frozen=True)
class ReductionRing:
    """The target ring of the encoding, with its canonical variable order."""

    n: int
    m: int
    ring: Ring

    @classmethod
    def make(cls, n: int, m: int) -> "ReductionRing":
        names = (
            [f"x{i + 1}" for i in range(n)]
            + [f"xb{i + 1}" for i in range(n)]
            + [f"c{l + 1}" for l in range(m)]
            + [f"xc{l + 1}" for l in range(m)]
            + ["X"]
        )
        return cls(n, m, Ring(tuple(names)))

    @classmethod
    def for_instance(cls, inst: CnfInstance) -> "ReductionRing":
        return cls.make(inst.n_vars, inst.n_clauses)

    @property
    def n_vars(self) -> int:
        return 2 * self.n + 2 * self.m + 1

    def pos_index(self, var: int) -> int:
        return var

    def neg_index(self, var: int) -> int:
        return self.n + var

    def clause_tag_index(self, clause: int) -> int:
        return 2 * self.n + clause

    def clause_swap_index(self, clause: int) -> int:
        return 2 * self.n + self.m + clause

    @property
    def filler_index(self) -> int:
        return 2 * self.n + 2 * self.m

    def term(self, exponents: Dict[int, int]) -> Term:
        vec = [0] * self.n_vars
        for idx, e in exponents.items():
            vec[idx] += e
        return tuple(vec)


@dataclass(frozen=True)
class VariableGadget:
    """Everything the encoding derives from one instance variable.

    ``var`` is 0-based; ``clause_indices`` are the 0-based clauses where
    either polarity occurs.  ``covered`` collects the region terms that
    already appear in variable or clause polynomials; the region
    leftovers become forced single-term polynomials.
    """

    var: int
    clause_indices: Tuple[int, ...]
    tag_term: Term
    pos_term: Term
    neg_term: Term
    pos_clause_terms: FrozenSet[Term]
    neg_clause_terms: FrozenSet[Term]
    pos_parents: FrozenSet[Term]
    neg_parents: FrozenSet[Term]

    @property
    def all_parents(self) -> FrozenSet[Term]:
        return self.pos_parents | self.neg_parents

    @property
    def covered(self) -> FrozenSet[Term]:
        return (
            self.pos_clause_terms
            | self.neg_clause_terms
            | {self.pos_term, self.neg_term}
        )

    @property
    def region(self) -> FrozenSet[Term]:
        return frozenset(children_of_set(self.all_parents))


def _occurrences(inst: CnfInstance, var: int) -> Tuple[List[int], List[int]]:
    """0-based clause indices with a positive / negative occurrence of var."""
    lit = var + 1
    pos = [l for l, clause in enumerate(inst.clauses) if lit in clause]
    neg = [l for l, clause in enumerate(inst.clauses) if -lit in clause]
    return pos, neg


def build_gadget(inst: CnfInstance, var: int) -> VariableGadget:
    require_valid_34(inst)
    if not 0 <= var < inst.n_vars:
        raise ValueError(f"variable index {var} out of range")
    rring = ReductionRing.for_instance(inst)
    pos_occ, neg_occ = _occurrences(inst, var)
    clause_indices = tuple(sorted(pos_occ + neg_occ))
    tag = {rring.clause_tag_index(l): 1 for l in clause_indices}
    tag[rring.filler_index] = TAG_DEGREE - len(clause_indices)
    tag_term = rring.term(tag)
    pos_term = rring.term({**tag, rring.pos_index(var): 1, rring.neg_index(var): 2})
    neg_term = rring.term({**tag, rring.pos_index(var): 2, rring.neg_index(var): 1})

    def swap_tag(t: Term, clause: int) -> Term:
        vec = list(t)
        vec[rring.clause_tag_index(clause)] -= 1
        vec[rring.clause_swap_index(clause)] += 1
        return tuple(vec)

    def lift(t: Term, clause: int) -> Term:
        vec = list(t)
        vec[rring.clause_swap_index(clause)] += 1
        return tuple(vec)

    return VariableGadget(
        var=var,
        clause_indices=clause_indices,
        tag_term=tag_term,
        pos_term=pos_term,
        neg_term=neg_term,
        pos_clause_terms=frozenset(swap_tag(pos_term, l) for l in pos_occ),
        neg_clause_terms=frozenset(swap_tag(neg_term, l) for l in neg_occ),
        pos_parents=frozenset(lift(pos_term, l) for l in pos_occ),
        neg_parents=frozenset(lift(neg_term, l) for l in neg_occ),
    )


def _clause_support(inst: CnfInstance, gadgets: Sequence[VariableGadget], clause: int) -> List[Term]:
    """The three support terms of a clause polynomial, in literal order."""
    rring = ReductionRing.for_instance(inst)
    out = []
    for lit in inst.clauses[clause]:
        g = gadgets[abs(lit) - 1]
        base = g.pos_term if lit > 0 else g.neg_term
        vec = list(base)
        vec[rring.clause_tag_index(clause)] -= 1
        vec[rring.clause_swap_index(clause)] += 1
        out.append(tuple(vec))
    return out


def _forced_region_terms(gadgets: Sequence[VariableGadget]) -> List[Term]:
    """Region terms not already covered by variable or clause polynomials."""
    leftovers: set = set()
    for g in gadgets:
        leftovers.update(g.region - g.covered)
    return sorted(leftovers)


def reduce_instance(inst: CnfInstance, *, f1_cap: int = 1_000_000) -> PolySystem:
    """Emit the polynomial system encoding the instance.

    Canonical order: variable polynomials, clause polynomials, sorted
    region leftovers, then every degree-8 term in lex order.  All
    coefficients are 1.  Refuses instances whose degree-8 layer exceeds
    ``f1_cap`` terms.
    """
    require_valid_34(inst)
    rring = ReductionRing.for_instance(inst)
    n_vars = rring.n_vars
    full_layer = math.comb(n_vars + 7, 8)
    if full_layer > f1_cap:
        raise BudgetExceededError(
            f"degree-8 layer has {full_layer} terms, above the cap {f1_cap}"
        )
    gadgets = [build_gadget(inst, v) for v in range(inst.n_vars)]
    polys: List[Polynomial] = []
    for g in gadgets:
        polys.append(Polynomial([(g.pos_term, 1), (g.neg_term, 1)]))
    for l in range(inst.n_clauses):
        polys.append(Polynomial([(t, 1) for t in _clause_support(inst, gadgets, l)]))
    for t in _forced_region_terms(gadgets):
        polys.append(Polynomial.single(t))
    for t in terms_of_degree(n_vars, 8):
        polys.append(Polynomial.single(t))
    return PolySystem(rring.ring, tuple(polys))


def reduction_summary(inst: CnfInstance) -> Dict[str, int]:
    """Sizes of the encoding without materializing the degree-8 layer."""
    require_valid_34(inst)
    rring = ReductionRing.for_instance(inst)
    gadgets = [build_gadget(inst, v) for v in range(inst.n_vars)]
    return {
        "n": inst.n_vars,
        "m": inst.n_clauses,
        "N": rring.n_vars,
        "variable_polys": inst.n_vars,
        "clause_polys": inst.n_clauses,
        "region_polys": len(_forced_region_terms(gadgets)),
        "degree8_polys": math.comb(rring.n_vars + 7, 8),
    }


def assignment_to_border(inst: CnfInstance, assignment: Assignment) -> BorderSelection:
    """The border selection a satisfying assignment induces.

    Variable polynomials select the false polarity's term.  Clause
    polynomials select the swap term of the first true literal (one
    always exists).  Forced single-term polynomials select their term.
    The order matches ``reduce_instance`` exactly.
    """
    require_valid_34(inst)
    if not evaluate(inst, assignment):
        raise ValueError("assignment does not satisfy the instance")
    rring = ReductionRing.for_instance(inst)
    gadgets = [build_gadget(inst, v) for v in range(inst.n_vars)]
    selection: List[Term] = []
    for g in gadgets:
        selection.append(g.pos_term if not assignment[g.var] else g.neg_term)
    for l, clause in enumerate(inst.clauses):
        support = _clause_support(inst, gadgets, l)
        pick = None
        for pos, lit in enumerate(clause):
            truth = assignment[abs(lit) - 1] if lit > 0 else not assignment[abs(lit) - 1]
            if truth:
                pick = support[pos]
                break
        assert pick is not None  # the assignment satisfies every clause
        selection.append(pick)
    selection.extend(_forced_region_terms(gadgets))
    selection.extend(terms_of_degree(rring.n_vars, 8))
    return tuple(selection)


def border_to_assignment(inst: CnfInstance, cert: BorderCertificate) -> Assignment:
    """Read an assignment off an accepted certificate.

    A variable is true exactly when its positive polarity term sits in
    the order ideal.  The caller is responsible for having verified the
    certificate; the result then satisfies the instance.
    """
    require_valid_34(inst)
    gadgets = [build_gadget(inst, v) for v in range(inst.n_vars)]
    return tuple(g.pos_term in cert.order_ideal for g in gadgets)


def check_varclause_property(inst: CnfInstance, cert: BorderCertificate) -> bool:
    """No literal has both its polarity term and a swap term in the border.

    Accepted certificates always satisfy this: the shared parent of the
    two terms has every other child forced into the border, so having
    both would strand that parent without a child outside the border.
    """
    require_valid_34(inst)
    gadgets = [build_gadget(inst, v) for v in range(inst.n_vars)]
    for g in gadgets:
        for term, swaps in (
            (g.pos_term, g.pos_clause_terms),
            (g.neg_term, g.neg_clause_terms),
        ):
            if term in cert.border and any(s in cert.border for s in swaps):
                return False
    return True
