"""Monomial terms as exponent tuples, plus divisibility combinatorics.

A term over N variables is a tuple of N non-negative ints; ``(0,) * N`` is
the term 1.  Plain tuples keep hashing and comparison cheap and make the
lexicographic tuple order the canonical order used everywhere for
iteration, tie-breaking and serialization.  Terms carry no ring reference;
containers (polynomials, term sets) check exponent-vector lengths at their
boundaries, and the :class:`Ring` only matters for parsing and printing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Set, Tuple

Term = Tuple[int, ...]

# Ingestion points (JSON loaders) reject exponents at or above this bound.
EXPONENT_LIMIT = 2**32


@dataclass(frozen=True)
class Ring:
    """Named variables of a polynomial ring; fixes the arity of its terms."""

    var_names: Tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if any(not isinstance(n, str) or not n for n in names):
            raise ValueError("variable names must be non-empty strings")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")

    @property
    def n_vars(self) -> int:
        return len(self.var_names)

    @classmethod
    def generic(cls, n_vars: int, prefix: str = "x") -> "Ring":
        """A ring with variables ``x1, ..., xN`` (or another prefix)."""
        if n_vars < 1:
            raise ValueError("n_vars must be positive")
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n_vars)))


def unit(n_vars: int) -> Term:
    """The term 1."""
    return (0,) * n_vars


def var_term(n_vars: int, index: int) -> Term:
    """The term consisting of a single variable to the first power."""
    if not 0 <= index < n_vars:
        raise ValueError(f"variable index {index} out of range for {n_vars} variables")
    return tuple(1 if i == index else 0 for i in range(n_vars))


def total_degree(t: Term) -> int:
    return sum(t)


def _require_same_arity(a: Term, b: Term) -> None:
    if len(a) != len(b):
        raise ValueError(f"term arity mismatch: {len(a)} vs {len(b)}")


def divides(a: Term, b: Term) -> bool:
    """True iff a | b, i.e. the exponents of a are componentwise <= b's."""
    _require_same_arity(a, b)
    return all(x <= y for x, y in zip(a, b))


def mul(a: Term, b: Term) -> Term:
    _require_same_arity(a, b)
    return tuple(x + y for x, y in zip(a, b))


def div(a: Term, b: Term) -> Term:
    """The quotient a / b; raises unless b divides a."""
    _require_same_arity(a, b)
    out = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in out):
        raise ValueError("term does not divide")
    return out


def mul_var(t: Term, i: int) -> Term:
    """t times the i-th variable.  No bounds check; callers index validly."""
    return t[:i] + (t[i] + 1,) + t[i + 1 :]


def div_var(t: Term, i: int) -> Term:
    """t divided by the i-th variable.  Caller must ensure t[i] > 0."""
    return t[:i] + (t[i] - 1,) + t[i + 1 :]


def children(t: Term) -> Set[Term]:
    """All terms one variable below t: { t / x_i : exponent of x_i > 0 }."""
    return {div_var(t, i) for i, e in enumerate(t) if e}


def parents(t: Term) -> Set[Term]:
    """All terms one variable above t; always exactly N of them."""
    return {mul_var(t, i) for i in range(len(t))}


def children_of_set(terms: Iterable[Term]) -> Set[Term]:
    """Union of children over a set of terms."""
    out: Set[Term] = set()
    for t in terms:
        out |= children(t)
    return out


def indeterminate_count(t: Term) -> int:
    """Number of distinct variables dividing t (equals len(children(t)))."""
    return sum(1 for e in t if e)


def divisors(t: Term) -> Iterator[Term]:
    """Every divisor of t, including 1 and t itself."""
    yield from product(*(range(e + 1) for e in t))


def terms_of_degree(n_vars: int, degree: int) -> Iterator[Term]:
    """All terms of the given total degree, in ascending lexicographic order.

    Yields exactly C(n_vars + degree - 1, degree) distinct terms.
    """
    if n_vars < 1:
        raise ValueError("n_vars must be positive")
    if degree < 0:
        raise ValueError("degree must be non-negative")

    def rec(slots: int, remaining: int) -> Iterator[Term]:
        if slots == 1:
            yield (remaining,)
            return
        for head in range(remaining + 1):
            for rest in rec(slots - 1, remaining - head):
                yield (head,) + rest

    yield from rec(n_vars, degree)


def terms_up_to_degree(n_vars: int, max_degree: int) -> Iterator[Term]:
    """All terms of total degree <= max_degree, by degree then lex order."""
    for d in range(max_degree + 1):
        yield from terms_of_degree(n_vars, d)


def check_exponent_vector(vec: Iterable[int], n_vars: int | None = None) -> Term:
    """Validate an exponent vector coming from external input.

    Enforces integer entries in [0, EXPONENT_LIMIT) and, when given, the
    expected arity.  Returns the vector as a term tuple.
    """
    t = tuple(vec)
    if n_vars is not None and len(t) != n_vars:
        raise ValueError(f"expected {n_vars} exponents, got {len(t)}")
    for e in t:
        if not isinstance(e, int) or isinstance(e, bool):
            raise ValueError(f"exponent {e!r} is not an integer")
        if e < 0 or e >= EXPONENT_LIMIT:
            raise ValueError(f"exponent {e} out of range [0, 2^32)")
    return t


def format_term(t: Term, ring: Ring | None = None) -> str:
    """Human-readable form like ``x1^2*x3``; the term 1 prints as ``1``."""
    names = ring.var_names if ring is not None else Ring.generic(len(t)).var_names
    if len(names) != len(t):
        raise ValueError("term arity does not match ring")
    parts = []
    for name, e in zip(names, t):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"
