"""Shared hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st

from bbdetect.order_ideals import TermSet, border
from bbdetect.terms import children, unit


def terms(n_vars, max_exponent=4):
    return st.tuples(*([st.integers(0, max_exponent)] * n_vars))


@st.composite
def term_sets(draw, n_vars=2, max_exponent=3, max_size=6):
    return draw(
        st.frozensets(terms(n_vars, max_exponent), min_size=1, max_size=max_size)
    )


@st.composite
def order_ideals(draw, n_vars=2, max_degree=4, max_steps=8):
    """Grow an order ideal from {1}; only divisor-complete border terms join."""
    current = {unit(n_vars)}
    steps = draw(st.integers(0, max_steps))
    for _ in range(steps):
        frontier = sorted(
            t
            for t in border(TermSet(current))
            if sum(t) <= max_degree and children(t) <= current
        )
        if not frontier:
            break
        current.add(draw(st.sampled_from(frontier)))
    return frozenset(current)


def rationals(max_num=6, max_den=4):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def nonzero_rationals(max_num=6, max_den=4):
    return rationals(max_num, max_den).filter(bool)


@st.composite
def polynomials(draw, n_vars=2, max_exponent=3, max_terms=4):
    pairs = draw(
        st.lists(
            st.tuples(terms(n_vars, max_exponent), rationals()),
            min_size=0,
            max_size=max_terms,
        )
    )
    from bbdetect.polynomials import Polynomial

    return Polynomial(pairs)
