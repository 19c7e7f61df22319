"""Term combinatorics: degree, divisibility, children/parents, enumeration."""

import math
from itertools import combinations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from bbdetect.terms import (
    Ring,
    check_exponent_vector,
    children,
    children_of_set,
    div,
    divides,
    divisors,
    format_term,
    indeterminate_count,
    mul,
    parents,
    terms_of_degree,
    terms_up_to_degree,
    total_degree,
    unit,
    var_term,
)

from strategies import terms


def test_total_degree():
    assert total_degree((0, 0)) == 0
    assert total_degree((2, 1)) == 3
    assert total_degree((5,)) == 5


def test_divides_basics():
    assert divides((0, 0), (3, 1))
    assert not divides((1, 0), (0, 1))
    assert divides((1, 1), (2, 3))
    with pytest.raises(ValueError):
        divides((1,), (1, 0))


def test_mul_div():
    assert mul((1, 0), (0, 1)) == (1, 1)
    assert div((2, 1), (1, 0)) == (1, 1)
    with pytest.raises(ValueError):
        div((1, 0), (0, 1))


def test_children_examples():
    assert children((0, 0)) == set()
    assert children((2, 1)) == {(1, 1), (2, 0)}


def test_parents_examples():
    assert parents((0, 0)) == {(1, 0), (0, 1)}
    assert parents((1, 1)) == {(2, 1), (1, 2)}


def test_indeterminate_count():
    assert indeterminate_count((0, 0, 0)) == 0
    assert indeterminate_count((2, 1, 0)) == 2


@given(terms(3))
def test_children_count_is_indeterminate_count(t):
    assert len(children(t)) == indeterminate_count(t)


@given(st.integers(1, 4).flatmap(lambda n: terms(n)))
def test_parents_count_is_n_vars(t):
    assert len(parents(t)) == len(t)


def test_common_parent_exhaustive_small():
    # over all distinct term pairs of degree <= 3 in 3 variables
    pool = list(terms_up_to_degree(3, 3))
    for t1, t2 in combinations(pool, 2):
        assert len(parents(t1) & parents(t2)) <= 1
        assert len(children(t1) & children(t2)) <= 1


@given(terms(4, 3), terms(4, 3))
def test_common_parent_random(t1, t2):
    if t1 != t2:
        assert len(parents(t1) & parents(t2)) <= 1


@given(terms(3, 2), st.frozensets(terms(3, 2), min_size=1, max_size=5))
def test_children_against_set_bound(t, pool):
    pool = pool - {t}
    if pool:
        assert len(children(t) & children_of_set(pool)) <= len(pool)


@given(terms(3, 3), terms(3, 3))
def test_divisibility_descends_to_a_child(t1, t2):
    if divides(t1, t2) and t1 != t2:
        assert any(divides(t1, c) for c in children(t2))


@given(terms(3), terms(3))
def test_mul_div_round_trip(t, s):
    assert div(mul(t, s), s) == t


def test_terms_of_degree_small():
    assert set(terms_of_degree(2, 2)) == {(0, 2), (1, 1), (2, 0)}
    assert list(terms_of_degree(1, 5)) == [(5,)]
    assert list(terms_of_degree(2, 0)) == [(0, 0)]


def test_terms_of_degree_is_sorted_and_unique():
    out = list(terms_of_degree(3, 4))
    assert out == sorted(out)
    assert len(out) == len(set(out)) == math.comb(3 + 4 - 1, 4)


def test_terms_of_degree_count_n11_d8():
    # Exhaustive enumeration count for the eleven-variable degree-8 layer.
    count = sum(1 for _ in terms_of_degree(11, 8))
    assert count == 43758 == math.comb(18, 8)


def test_terms_up_to_degree_order():
    out = list(terms_up_to_degree(2, 2))
    assert out == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_divisors():
    assert set(divisors((1, 1))) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert set(divisors((0, 0))) == {(0, 0)}


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(())
    with pytest.raises(ValueError):
        Ring(("x", "x"))
    with pytest.raises(ValueError):
        Ring(("x", ""))
    assert Ring.generic(3).var_names == ("x1", "x2", "x3")


def test_format_term():
    ring = Ring(("x1", "x2", "x3"))
    assert format_term((2, 0, 1), ring) == "x1^2*x3"
    assert format_term((0, 0, 0), ring) == "1"
    assert format_term((0, 1, 0), ring) == "x2"
    assert format_term((1, 2)) == "x1*x2^2"


def test_check_exponent_vector():
    assert check_exponent_vector([1, 2], 2) == (1, 2)
    with pytest.raises(ValueError):
        check_exponent_vector([1], 2)
    with pytest.raises(ValueError):
        check_exponent_vector([-1, 0], 2)
    with pytest.raises(ValueError):
        check_exponent_vector([2**32, 0], 2)
    with pytest.raises(ValueError):
        check_exponent_vector([1.5, 0], 2)


def test_unit_and_var_term():
    assert unit(3) == (0, 0, 0)
    assert var_term(3, 1) == (0, 1, 0)
    with pytest.raises(ValueError):
        var_term(2, 2)
