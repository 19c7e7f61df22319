"""Border-basis detection: selection search, Buchberger criterion, verifier.

Deciding whether a polynomial system is a border basis for *some* order
ideal amounts to choosing one support term per polynomial (all distinct),
asking whether the chosen set satisfies the three border conditions,
whether the remaining support sits inside the reconstructed order ideal,
and whether every neighbor S-polynomial is a constant combination of the
system.  ``detect`` searches the selection space with sound pruning;
``verify_certificate`` re-checks a given selection with no search and is
polynomial in the encoding size.

Two structural facts keep the checks fast on large systems without
sacrificing generality:

* the S-polynomial of two neighboring single-term polynomials is
  identically zero (the heads cancel and there are no tails), so the
  Buchberger scan only needs pairs touching a multi-term polynomial;
* each selected term occurs in exactly one polynomial of a prebasis, so
  the constants of the combination are forced: c_j is just the
  coefficient of the j-th selected term inside the S-polynomial.
"""

from __future__ import annotations

import enum
import json
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .order_ideals import (
    TermSet,
    check_border_conditions,
    reconstruct_order_ideal,
)
from .polynomials import Polynomial, PolySystem
from .terms import Term, check_exponent_vector, div_var, mul_var

log = logging.getLogger("bbdetect.detection")

_ZERO = Fraction(0)

BorderSelection = Tuple[Term, ...]


class DetectStatus(enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SearchBudget:
    """Caps on the selection search; exceeding either is a distinct outcome."""

    max_candidates: Optional[int] = None
    timeout_secs: Optional[float] = None


@dataclass(frozen=True)
class NeighborPair:
    """Two selected border terms related one multiplication step apart.

    ``across``:   var_k * term_k == var_l * term_l  (equal degrees)
    ``adjacent``: var_k * term_k == term_l          (term_l one degree up)
    """

    k: int
    l: int
    kind: str
    var_k: int
    var_l: Optional[int]
    term_k: Term
    term_l: Term


@dataclass(frozen=True)
class BorderCertificate:
    """A passing selection plus the order ideal and border it determines."""

    selection: BorderSelection
    order_ideal: TermSet
    border: TermSet


@dataclass(frozen=True)
class BuchbergerResult:
    ok: bool
    failing_pair: Optional[NeighborPair] = None
    remainder: Optional[Polynomial] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of checking one selection, with a reason when rejected.

    ``reason`` is one of: selection-length, term-not-in-support,
    duplicate-border-term, border-conditions, prebasis-shape,
    tail-not-under-border, buchberger.
    """

    ok: bool
    reason: Optional[str] = None
    detail: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class DetectResult:
    status: DetectStatus
    certificate: Optional[BorderCertificate]
    candidates_checked: int
    elapsed_secs: float


def _divides_into(ts: TermSet, t: Term) -> bool:
    """Does t divide some member of ts?  (t itself need not be a member.)"""
    deg = sum(t)
    for d in ts.degrees():
        if d < deg:
            continue
        if ts.is_complete_degree(d):
            # t times any degree d - deg term is a member.
            return True
        for m in ts.bucket(d):
            if all(a <= b for a, b in zip(t, m)):
                return True
    return False


def _neighbor_relations_of(
    b: Term, k: int, selmap: Dict[Term, int]
) -> Iterator[Tuple[tuple, NeighborPair]]:
    """All neighbor pairs involving index k, keyed for deduplication."""
    n = len(b)
    for i in range(n):
        p = mul_var(b, i)
        l = selmap.get(p)
        if l is not None and l != k:
            # adjacent, k on the low side
            yield ("adj", k, l), NeighborPair(k, l, "adjacent", i, None, b, p)
        for j in range(n):
            if j == i or not p[j]:
                continue
            other = div_var(p, j)
            l = selmap.get(other)
            if l is None or l == k:
                continue
            lo, hi = (k, l) if k < l else (l, k)
            if k < l:
                pair = NeighborPair(k, l, "across", i, j, b, other)
            else:
                pair = NeighborPair(l, k, "across", j, i, other, b)
            yield ("acr", lo, hi), pair
    for i in range(n):
        if not b[i]:
            continue
        c = div_var(b, i)
        l = selmap.get(c)
        if l is not None and l != k:
            # adjacent, k on the high side
            yield ("adj", l, k), NeighborPair(l, k, "adjacent", i, None, c, b)


def neighbors(selection: Sequence[Term]) -> List[NeighborPair]:
    """Every neighbor pair among the selected terms.

    Full quadratic-free enumeration through parent lookups; meant for
    small systems and tests.  Two distinct terms share at most one common
    parent and the degree rules out a pair being both across and
    adjacent, so each pair appears exactly once.
    """
    sel = [tuple(t) for t in selection]
    selmap = {t: idx for idx, t in enumerate(sel)}
    if len(selmap) != len(sel):
        raise ValueError("selection terms must be distinct")
    found: Dict[tuple, NeighborPair] = {}
    for k, b in enumerate(sel):
        for key, pair in _neighbor_relations_of(b, k, selmap):
            found.setdefault(key, pair)
    return sorted(found.values(), key=lambda p: (p.k, p.l, p.kind))


def s_polynomial(g_k: Polynomial, g_l: Polynomial, pair: NeighborPair) -> Polynomial:
    """The cancellation combination of two neighboring prebasis polynomials."""
    if pair.k == pair.l:
        raise ValueError("a polynomial is not its own neighbor")
    if g_k.coefficient_of(pair.term_k) != 1 or g_l.coefficient_of(pair.term_l) != 1:
        raise ValueError("polynomials must be normalized at their border terms")
    lifted_k = mul_var(pair.term_k, pair.var_k)
    if pair.kind == "across":
        if pair.var_l is None or lifted_k != mul_var(pair.term_l, pair.var_l):
            raise ValueError("pair relation does not hold for these terms")
        return g_k.term_mul(_unit_var(len(pair.term_k), pair.var_k)) - g_l.term_mul(
            _unit_var(len(pair.term_l), pair.var_l)
        )
    if pair.kind == "adjacent":
        if lifted_k != pair.term_l:
            raise ValueError("pair relation does not hold for these terms")
        return g_k.term_mul(_unit_var(len(pair.term_k), pair.var_k)) - g_l
    raise ValueError(f"unknown neighbor kind {pair.kind!r}")


def _unit_var(n: int, i: int) -> Term:
    return tuple(1 if j == i else 0 for j in range(n))


def _shifted_coeffs(g: Polynomial, var: Optional[int]) -> Dict[Term, Fraction]:
    if var is None:
        return dict(g.coeffs)
    return {mul_var(t, var): c for t, c in g.coeffs.items()}


def _s_poly_coeffs(
    pair: NeighborPair,
    norm_k: Optional[Polynomial],
    norm_l: Optional[Polynomial],
) -> Dict[Term, Fraction]:
    """Coefficients of the S-polynomial; None stands for a bare border term."""
    out: Dict[Term, Fraction]
    if norm_k is None:
        out = {mul_var(pair.term_k, pair.var_k): Fraction(1)}
    else:
        out = _shifted_coeffs(norm_k, pair.var_k)
    rhs = (
        {(mul_var(pair.term_l, pair.var_l) if pair.var_l is not None else pair.term_l): Fraction(1)}
        if norm_l is None
        else _shifted_coeffs(norm_l, pair.var_l)
    )
    for t, c in rhs.items():
        v = out.get(t, _ZERO) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _reduce_by_forced_constants(
    s_coeffs: Dict[Term, Fraction],
    selmap: Dict[Term, int],
    normalized: Dict[int, Polynomial],
) -> Dict[Term, Fraction]:
    """Subtract c_j * g_j for every selected term appearing in S.

    Tails of the g_j never contain selected terms, so one pass over the
    original S support extracts every forced constant and leaves a
    remainder supported outside the border.
    """
    rem = dict(s_coeffs)
    for t in list(rem):
        j = selmap.get(t)
        if j is None:
            continue
        c = rem.pop(t)
        g = normalized.get(j)
        if g is None:
            continue  # single-term polynomial: nothing beyond the head
        for tt, cc in g.coeffs.items():
            if tt == t:
                continue
            v = rem.get(tt, _ZERO) - c * cc
            if v:
                rem[tt] = v
            else:
                rem.pop(tt, None)
    return rem


def _buchberger_core(
    selection: Sequence[Term],
    selmap: Dict[Term, int],
    normalized: Dict[int, Polynomial],
    border_ts: TermSet,
) -> BuchbergerResult:
    # Pairs of two single-term polynomials have S identically zero, so it
    # suffices to walk the neighborhoods of the multi-term ones.
    found: Dict[tuple, NeighborPair] = {}
    for k in sorted(normalized):
        for key, pair in _neighbor_relations_of(tuple(selection[k]), k, selmap):
            found.setdefault(key, pair)
    for key in sorted(found, key=lambda kk: (kk[1], kk[2], kk[0])):
        pair = found[key]
        s_coeffs = _s_poly_coeffs(pair, normalized.get(pair.k), normalized.get(pair.l))
        # Prebasis shape confines every S-polynomial to the border closure.
        assert all(
            t in border_ts or _divides_into(border_ts, t) for t in s_coeffs
        ), "S-polynomial escaped the border closure"
        rem = _reduce_by_forced_constants(s_coeffs, selmap, normalized)
        if rem:
            return BuchbergerResult(False, pair, Polynomial(rem))
    return BuchbergerResult(True)


def buchberger_check(
    normalized_polys: Sequence[Polynomial],
    selection: Sequence[Term],
) -> BuchbergerResult:
    """Do all neighbor S-polynomials reduce to zero by forced constants?

    ``normalized_polys`` must be monic at their selected terms and form a
    valid prebasis for the selection.
    """
    sel = [tuple(t) for t in selection]
    selmap = {t: idx for idx, t in enumerate(sel)}
    if len(selmap) != len(sel):
        raise ValueError("selection terms must be distinct")
    normalized = {
        j: g for j, g in enumerate(normalized_polys) if len(g) > 1
    }
    return _buchberger_core(sel, selmap, normalized, TermSet(sel))


def _check_selection(
    polys: Sequence[Polynomial],
    selection: Sequence[Term],
    *,
    border_ts: Optional[TermSet] = None,
    with_buchberger: bool = True,
) -> VerifyResult:
    sel = [tuple(t) for t in selection]
    if len(sel) != len(polys):
        return VerifyResult(False, "selection-length", (len(sel), len(polys)))
    for j, (p, t) in enumerate(zip(polys, sel)):
        if t not in p.coeffs:
            return VerifyResult(False, "term-not-in-support", (j, t))
    ts = border_ts if border_ts is not None else TermSet(sel)
    if len(ts) != len(sel):
        seen: Dict[Term, int] = {}
        for j, t in enumerate(sel):
            if t in seen:
                return VerifyResult(False, "duplicate-border-term", (seen[t], j, t))
            seen[t] = j
    report = check_border_conditions(ts, stop_at_first=True)
    if not report.is_border:
        return VerifyResult(False, "border-conditions", report.violations[0])
    # Prebasis shape: each polynomial meets the border in exactly its own
    # selected term; single-term polynomials satisfy this by construction.
    for j, (p, t) in enumerate(zip(polys, sel)):
        if len(p) == 1:
            continue
        for s in p.coeffs:
            if s != t and s in ts:
                return VerifyResult(False, "prebasis-shape", (j, s))
    # Tails must lie in the order ideal, equivalently divide border terms.
    for j, (p, t) in enumerate(zip(polys, sel)):
        if len(p) == 1:
            continue
        for s in p.coeffs:
            if s != t and not _divides_into(ts, s):
                return VerifyResult(False, "tail-not-under-border", (j, s))
    if with_buchberger:
        selmap = {t: j for j, t in enumerate(sel)}
        normalized = {
            j: p.normalize_at(sel[j]) for j, p in enumerate(polys) if len(p) > 1
        }
        result = _buchberger_core(sel, selmap, normalized, ts)
        if not result.ok:
            return VerifyResult(False, "buchberger", result)
    return VerifyResult(True)


def is_prebasis(system: PolySystem, selection: Sequence[Term]) -> bool:
    """Does the selection make the system a border prebasis?"""
    return bool(_check_selection(system.polys, selection, with_buchberger=False))


def verify_certificate(system: PolySystem, selection: Sequence[Term]) -> VerifyResult:
    """Re-check a claimed selection with no search.

    Runs the border conditions, the prebasis shape check, and the
    Buchberger criterion; every step is polynomial in the encoding size.
    """
    return _check_selection(system.polys, selection, with_buchberger=True)


def make_certificate(
    system: PolySystem,
    selection: Sequence[Term],
    *,
    _verified: bool = False,
) -> BorderCertificate:
    sel = tuple(tuple(t) for t in selection)
    if not _verified:
        result = verify_certificate(system, sel)
        if not result.ok:
            raise ValueError(f"selection rejected: {result.reason}")
    ts = TermSet(sel)
    ideal = reconstruct_order_ideal(ts, _assume_checked=True)
    return BorderCertificate(sel, ideal, ts)


class _BudgetStop(Exception):
    """Internal signal that the search budget ran out."""


class _Search:
    """Backtracking over border-term selections with sound pruning.

    Polynomials are processed by ascending support size, single-term ones
    forming a fixed base.  Candidate terms are tried in descending total
    degree, then lex.  A branch is abandoned when a chosen term repeats,
    when some member of the partial border has every child inside it
    (condition 2 can then never hold), or when two chosen terms sit two
    or more degrees apart in divisibility with none of the connecting
    parents available anywhere in the remaining supports.
    """

    def __init__(self, system: PolySystem, budget: SearchBudget):
        self.polys = system.polys
        self.budget = budget
        self.started = time.monotonic()
        self.candidates_checked = 0
        order = sorted(range(len(self.polys)), key=lambda j: (len(self.polys[j]), j))
        self.forced = [j for j in order if len(self.polys[j]) == 1]
        self.free = [j for j in order if len(self.polys[j]) > 1]
        self.base_terms: List[Term] = []
        self.base_flat: set = set()
        self.chosen: Dict[int, Term] = {}
        self.chosen_set: set = set()
        self.possible: set = set()

    def _out_of_time(self) -> bool:
        t = self.budget.timeout_secs
        return t is not None and time.monotonic() - self.started > t

    def _contains(self, t: Term) -> bool:
        return t in self.base_flat or t in self.chosen_set

    def _condition2_dead(self, t: Term) -> bool:
        # t is in the partial border and so are all of its children; no
        # later addition can restore condition 2 at t.
        return all(
            self._contains(div_var(t, i)) for i, e in enumerate(t) if e
        )

    def _prune_after_adding(self, b: Term) -> bool:
        if self._condition2_dead(b):
            return True
        for i in range(len(b)):
            p = mul_var(b, i)
            if self._contains(p) and self._condition2_dead(p):
                return True
        for other in self.chosen_set:
            if other == b:
                continue
            for lo, hi in ((other, b), (b, other)):
                if sum(hi) - sum(lo) < 2:
                    continue
                if not all(x <= y for x, y in zip(lo, hi)):
                    continue
                if not any(
                    mul_var(lo, i) in self.possible
                    for i in range(len(lo))
                    if lo[i] < hi[i]
                ):
                    return True
        return False

    def run(self) -> Iterator[Tuple[BorderSelection, VerifyResult]]:
        # Fixed part of every candidate border: the single-term choices.
        base_flat = set()
        for j in self.forced:
            (t,) = self.polys[j].coeffs
            if t in base_flat:
                return  # duplicate forced terms: no selection can work
            base_flat.add(t)
            self.base_terms.append(t)
        self.base_flat = base_flat
        self.base_ts = TermSet(self.base_terms)
        self.possible = set(base_flat)
        for j in self.free:
            self.possible.update(self.polys[j].coeffs)
        # Condition 2 already dead inside the base kills every completion.
        for t in self.base_flat:
            if self._condition2_dead(t):
                return
        yield from self._extend(0)

    def _candidates(self, j: int) -> List[Term]:
        return sorted(self.polys[j].coeffs, key=lambda t: (-sum(t), t))

    def _extend(self, depth: int) -> Iterator[Tuple[BorderSelection, VerifyResult]]:
        if depth == len(self.free):
            yield self._evaluate_complete()
            return
        j = self.free[depth]
        for b in self._candidates(j):
            if self._contains(b):
                continue
            self.chosen[j] = b
            self.chosen_set.add(b)
            if not self._prune_after_adding(b):
                yield from self._extend(depth + 1)
            del self.chosen[j]
            self.chosen_set.remove(b)

    def _evaluate_complete(self) -> Tuple[BorderSelection, VerifyResult]:
        cap = self.budget.max_candidates
        if cap is not None and self.candidates_checked >= cap:
            raise _BudgetStop
        if self._out_of_time():
            raise _BudgetStop
        self.candidates_checked += 1
        sel = tuple(
            self.chosen[j] if len(self.polys[j]) > 1 else next(iter(self.polys[j].coeffs))
            for j in range(len(self.polys))
        )
        ts = self.base_ts.with_added(self.chosen_set)
        outcome = _check_selection(self.polys, sel, border_ts=ts)
        return sel, outcome


def iter_passing_selections(system: PolySystem) -> Iterator[BorderSelection]:
    """Every selection that passes the full check, in search order.

    Exhaustive and unbudgeted; meant for analysis of small systems.
    """
    search = _Search(system, SearchBudget())
    for sel, outcome in search.run():
        if outcome.ok:
            yield sel


def detect(system: PolySystem, budget: Optional[SearchBudget] = None) -> DetectResult:
    """Search for a selection certifying the system as a border basis.

    Returns YES with the first passing certificate in canonical search
    order, NO once the selection space is exhausted, or BUDGET_EXCEEDED;
    running out of budget is never reported as NO.
    """
    budget = budget or SearchBudget()
    search = _Search(system, budget)
    started = search.started
    try:
        for sel, outcome in search.run():
            if outcome.ok:
                log.debug("selection passed after %d candidates", search.candidates_checked)
                cert = make_certificate(system, sel, _verified=True)
                return DetectResult(
                    DetectStatus.YES, cert, search.candidates_checked,
                    time.monotonic() - started,
                )
    except _BudgetStop:
        return DetectResult(
            DetectStatus.BUDGET_EXCEEDED, None, search.candidates_checked,
            time.monotonic() - started,
        )
    return DetectResult(
        DetectStatus.NO, None, search.candidates_checked, time.monotonic() - started
    )


def certificate_to_json_obj(cert: BorderCertificate) -> dict:
    return {
        "selection": [list(t) for t in cert.selection],
        "order_ideal": [list(t) for t in cert.order_ideal.sorted_terms()],
        "border": [list(t) for t in cert.border.sorted_terms()],
    }


def dump_certificate(cert: BorderCertificate) -> str:
    return json.dumps(certificate_to_json_obj(cert), sort_keys=True)


def selection_from_json_obj(obj: dict, n_vars: int) -> BorderSelection:
    if not isinstance(obj, dict) or "selection" not in obj:
        raise ValueError("certificate JSON must contain 'selection'")
    return tuple(check_exponent_vector(v, n_vars) for v in obj["selection"])


def load_certificate_selection(text: str, n_vars: int) -> BorderSelection:
    return selection_from_json_obj(json.loads(text), n_vars)
