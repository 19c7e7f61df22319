"""Order ideals, borders, and the three-condition border characterization.

An order ideal is a finite, non-empty set of terms closed under taking
divisors.  Its border is the set of one-step multiples lying outside it.
A finite term set B is the border of some order ideal exactly when every
t in B satisfies:

  1. for every variable x dividing t and every other variable y, at least
     one of t*y, t*y/x, t/x lies in B;
  2. some variable x divides t with t/x outside B (so 1 can never be in a
     border);
  3. whenever some t' in B divides t, every parent of t' that still
     divides t lies in B as well.

``check_border_conditions`` decides this and reports witnessed
violations; ``reconstruct_order_ideal`` recovers the unique order ideal a
valid border belongs to.  Term sets are bucketed by total degree, which
makes the scans cheap when the degrees are concentrated: a degree layer
that is completely contained in B witnesses condition 1 for free, an
empty layer below a bucket settles condition 2 for that bucket, and
condition 3 only ever needs term pairs whose degrees differ by at least
two (a one-step-up parent that divides t and has t's degree is t itself).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Tuple, Union

from .terms import (
    Term,
    children,
    div_var,
    divides,
    divisors,
    mul_var,
    terms_up_to_degree,
    unit,
)


class BudgetExceededError(RuntimeError):
    """An enumeration or search refused to start or continue under its cap."""


_EMPTY: FrozenSet[Term] = frozenset()

# reconstruct_order_ideal re-verifies its output below this border size
_REVERIFY_LIMIT = 2048


class TermSet:
    """A finite set of terms indexed by total degree.

    Buckets are frozensets, so derived sets can share the unchanged layers
    (see :meth:`with_added`).  Iteration runs bucket by bucket in degree
    order; use :meth:`sorted_terms` when a fully canonical order matters.
    """

    __slots__ = ("_buckets", "n_vars", "_size", "_complete")

    def __init__(self, terms: Iterable[Term] = (), n_vars: int | None = None):
        staged: Dict[int, set] = {}
        arity = n_vars
        for t in terms:
            if arity is None:
                arity = len(t)
            elif len(t) != arity:
                raise ValueError("mixed term arities in one term set")
            staged.setdefault(sum(t), set()).add(t)
        self._buckets: Dict[int, FrozenSet[Term]] = {
            d: frozenset(s) for d, s in staged.items()
        }
        self.n_vars = arity
        self._size = sum(len(s) for s in self._buckets.values())
        self._complete: Dict[int, bool] = {}

    @classmethod
    def _from_buckets(cls, buckets: Dict[int, FrozenSet[Term]], n_vars: int | None) -> "TermSet":
        self = cls.__new__(cls)
        self._buckets = buckets
        self.n_vars = n_vars
        self._size = sum(len(s) for s in buckets.values())
        self._complete = {}
        return self

    @classmethod
    def ensure(cls, obj: Union["TermSet", Iterable[Term]], n_vars: int | None = None) -> "TermSet":
        if isinstance(obj, TermSet):
            return obj
        return cls(obj, n_vars=n_vars)

    def __contains__(self, t: Term) -> bool:
        bucket = self._buckets.get(sum(t))
        return bucket is not None and t in bucket

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[Term]:
        for d in sorted(self._buckets):
            yield from self._buckets[d]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TermSet):
            return NotImplemented
        return self._buckets == other._buckets

    def __repr__(self) -> str:
        return f"TermSet({self.sorted_terms()!r})"

    def degrees(self) -> List[int]:
        return sorted(self._buckets)

    def bucket(self, degree: int) -> FrozenSet[Term]:
        return self._buckets.get(degree, _EMPTY)

    def is_complete_degree(self, degree: int) -> bool:
        """True when the set contains every term of this total degree."""
        cached = self._complete.get(degree)
        if cached is not None:
            return cached
        bucket = self._buckets.get(degree)
        if bucket is None or self.n_vars is None or degree < 0:
            result = False
        else:
            result = len(bucket) == math.comb(self.n_vars + degree - 1, degree)
        self._complete[degree] = result
        return result

    def with_added(self, extra: Iterable[Term]) -> "TermSet":
        """A new set with extra terms; untouched degree layers are shared."""
        arity = self.n_vars
        added: Dict[int, set] = {}
        for t in extra:
            if arity is None:
                arity = len(t)
            elif len(t) != arity:
                raise ValueError("mixed term arities in one term set")
            added.setdefault(sum(t), set()).add(t)
        buckets = dict(self._buckets)
        for d, news in added.items():
            buckets[d] = buckets.get(d, _EMPTY) | news
        return TermSet._from_buckets(buckets, arity)

    def sorted_terms(self) -> List[Term]:
        out: List[Term] = []
        for d in sorted(self._buckets):
            out.extend(sorted(self._buckets[d]))
        return out


@dataclass(frozen=True)
class Violation:
    """One witnessed failure of a border condition at ``term``.

    ``detail`` depends on the condition: variable indices (x, y) for
    condition 1, empty for condition 2, the pair (t', parent) for
    condition 3.
    """

    condition: int
    term: Term
    detail: tuple


@dataclass(frozen=True)
class BorderCheckReport:
    is_border: bool
    violations: Tuple[Violation, ...]


def is_order_ideal(terms_in: Union[TermSet, Iterable[Term]]) -> bool:
    """True iff the set is non-empty and closed under taking divisors.

    Checking one-variable steps suffices: divisor-closure follows by
    induction on the degree gap.
    """
    ts = TermSet.ensure(terms_in)
    if not len(ts):
        raise ValueError("order ideal predicate needs a non-empty set")
    for t in ts:
        for i, e in enumerate(t):
            if e and div_var(t, i) not in ts:
                return False
    return True


def border(order_ideal: Union[TermSet, Iterable[Term]]) -> TermSet:
    """One-step multiples of the ideal that fall outside it."""
    ts = TermSet.ensure(order_ideal)
    if not is_order_ideal(ts):
        raise ValueError("input is not an order ideal")
    out = set()
    n = ts.n_vars
    for t in ts:
        for i in range(n):
            p = mul_var(t, i)
            if p not in ts:
                out.add(p)
    return TermSet(out, n_vars=n)


def border_closure(order_ideal: Union[TermSet, Iterable[Term]]) -> TermSet:
    """The ideal together with its border; again an order ideal."""
    ts = TermSet.ensure(order_ideal)
    edge = border(ts)
    return ts.with_added(edge)


def maxdeg(terms_in: Union[TermSet, Iterable[Term]]) -> int:
    ts = TermSet.ensure(terms_in)
    if not len(ts):
        raise ValueError("maxdeg of an empty set")
    return max(ts.degrees())


def _scan_condition1(ts: TermSet, emit: Callable[[Violation], bool]) -> bool:
    n = ts.n_vars
    for d in ts.degrees():
        if ts.is_complete_degree(d) or ts.is_complete_degree(d + 1):
            # A full layer at degree d supplies t*y/x, a full layer at
            # d + 1 supplies t*y, for every admissible pair (x, y).
            continue
        same = ts.bucket(d)
        below = ts.bucket(d - 1)
        above = ts.bucket(d + 1)
        for t in same:
            for x in range(n):
                if not t[x]:
                    continue
                if div_var(t, x) in below:
                    continue
                for y in range(n):
                    if y == x:
                        continue
                    up = mul_var(t, y)
                    if up in above:
                        continue
                    if div_var(up, x) in same:
                        continue
                    if emit(Violation(1, t, (x, y))):
                        return True
    return False


def _fails_condition2(t: Term, below: FrozenSet[Term]) -> bool:
    # Violated when every child lies in the set (or no variable divides t).
    return all(div_var(t, i) in below for i, e in enumerate(t) if e)


def _scan_condition2(ts: TermSet, emit: Callable[[Violation], bool]) -> bool:
    n = ts.n_vars
    for d in ts.degrees():
        same = ts.bucket(d)
        if d == 0:
            # The term 1 has no dividing variable at all.
            if emit(Violation(2, unit(n), ())):
                return True
            continue
        below = ts.bucket(d - 1)
        if not below:
            continue
        if len(below) * n < len(same):
            # Only parents of the lower layer can have all children inside
            # it; every other term of this layer passes immediately.
            seen = set()
            for b in below:
                for i in range(n):
                    p = mul_var(b, i)
                    if p in seen or p not in same:
                        continue
                    seen.add(p)
                    if _fails_condition2(p, below) and emit(Violation(2, p, ())):
                        return True
        else:
            for t in same:
                if _fails_condition2(t, below) and emit(Violation(2, t, ())):
                    return True
    return False


def _scan_condition3(ts: TermSet, emit: Callable[[Violation], bool]) -> bool:
    n = ts.n_vars
    degs = ts.degrees()
    for d in degs:
        lowers = [d0 for d0 in degs if d0 <= d - 2]
        # Degree gap one is vacuous: a parent of t' that divides t and has
        # t's degree can only be t itself, which is in the set.
        if not lowers:
            continue
        for t in ts.bucket(d):
            for d0 in lowers:
                step_up = ts.bucket(d0 + 1)
                for t0 in ts.bucket(d0):
                    if not divides(t0, t):
                        continue
                    for i in range(n):
                        if t0[i] >= t[i]:
                            continue
                        t1 = mul_var(t0, i)
                        if t1 not in step_up:
                            if emit(Violation(3, t, (t0, t1))):
                                return True
    return False


def check_border_conditions(
    border_candidate: Union[TermSet, Iterable[Term]],
    *,
    stop_at_first: bool = False,
) -> BorderCheckReport:
    """Decide whether a term set is the border of some order ideal.

    Returns every witnessed violation unless ``stop_at_first`` is set, in
    which case the scan stops at the first one (condition 2 is scanned
    first because it is the cheapest to refute).
    """
    ts = TermSet.ensure(border_candidate)
    if not len(ts):
        raise ValueError("border candidate must be non-empty")
    violations: List[Violation] = []

    def emit(v: Violation) -> bool:
        violations.append(v)
        return stop_at_first

    stopped = (
        _scan_condition2(ts, emit)
        or _scan_condition1(ts, emit)
        or _scan_condition3(ts, emit)
    )
    if not stopped:
        violations.sort(key=lambda v: (v.condition, v.term, v.detail))
    return BorderCheckReport(not violations, tuple(violations))


def condition3_via_divisor_sets(border_candidate: Union[TermSet, Iterable[Term]]) -> bool:
    """Independent reformulation of condition 3, used as a cross-check.

    For each member t, collect every divisor of t that itself has a
    divisor in the set; all of those must already be members.  Quadratic
    in the set size, intended for small inputs.
    """
    ts = TermSet.ensure(border_candidate)
    if not len(ts):
        raise ValueError("border candidate must be non-empty")
    members = list(ts)
    for t in members:
        for cand in divisors(t):
            if cand in ts:
                continue
            if any(divides(b, cand) for b in members):
                return False
    return True


def reconstruct_order_ideal(
    border_set: Union[TermSet, Iterable[Term]],
    *,
    _assume_checked: bool = False,
) -> TermSet:
    """The order ideal whose border the given set is.

    The ideal is exactly the set of divisors of border members that are
    not themselves in the border.  When the top degree layer of the
    border is complete, every term of lower degree divides some member,
    so the ideal is the complement of the border inside all terms up to
    that degree.
    """
    ts = TermSet.ensure(border_set)
    if not _assume_checked:
        report = check_border_conditions(ts, stop_at_first=True)
        if not report.is_border:
            raise ValueError(f"not a border: {report.violations[0]}")
    top = max(ts.degrees())
    if ts.is_complete_degree(top):
        ideal = {t for t in terms_up_to_degree(ts.n_vars, top) if t not in ts}
    else:
        ideal = set()
        for b in ts:
            for t in divisors(b):
                if t not in ts:
                    ideal.add(t)
    result = TermSet(ideal, n_vars=ts.n_vars)
    if len(ts) <= _REVERIFY_LIMIT:
        assert is_order_ideal(result)
        assert set(border(result)) == set(ts)
    return result


def enumerate_order_ideals(
    n_vars: int,
    max_degree: int,
    *,
    max_base_terms: int = 64,
) -> Iterator[FrozenSet[Term]]:
    """Every non-empty order ideal contained in the terms of degree <= max_degree.

    Depth-first inclusion/exclusion along a degree-then-lex linear
    extension; a term may be included only once all its children are, so
    each divisor-closed subset is produced exactly once.  Refuses to start
    when the base poset exceeds ``max_base_terms``.
    """
    base = list(terms_up_to_degree(n_vars, max_degree))
    if len(base) > max_base_terms:
        raise BudgetExceededError(
            f"{len(base)} base terms exceed the enumeration cap of {max_base_terms}"
        )
    current: set = set()

    def rec(idx: int) -> Iterator[FrozenSet[Term]]:
        if idx == len(base):
            if current:
                yield frozenset(current)
            return
        t = base[idx]
        yield from rec(idx + 1)
        if all(c in current for c in children(t)):
            current.add(t)
            yield from rec(idx + 1)
            current.remove(t)

    yield from rec(0)


def random_order_ideal(rng: random.Random, n_vars: int, max_degree: int) -> FrozenSet[Term]:
    """Grow a random order ideal from {1} by adopting admissible border terms.

    A border term may be adopted only when all of its children are already
    present; the grown set then stays divisor-closed at every step.
    """
    current: set = {unit(n_vars)}
    cap = math.comb(n_vars + max_degree, max_degree)
    for _ in range(rng.randrange(0, cap)):
        frontier = sorted(
            t
            for t in border(TermSet(current))
            if sum(t) <= max_degree and children(t) <= current
        )
        if not frontier:
            break
        current.add(rng.choice(frontier))
    return frozenset(current)
