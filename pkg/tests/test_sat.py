"""Instance validation, the brute-force oracle, DIMACS, and generation."""

import pytest

from bbdetect.sat import (
    CnfInstance,
    GenerationBudgetError,
    all_assignments,
    brute_force_sat,
    evaluate,
    parse_dimacs,
    random_34,
    to_dimacs,
    validate_34,
)


TWO_CLAUSE = CnfInstance(3, ((1, 2, 3), (-1, -2, -3)))


def test_structural_validation():
    with pytest.raises(ValueError):
        CnfInstance(0, ())
    with pytest.raises(ValueError):
        CnfInstance(2, ((1, 0, 2),))
    with pytest.raises(ValueError):
        CnfInstance(2, ((1, 2, 3),))


def test_validate_34_accepts_two_clause():
    assert validate_34(TWO_CLAUSE) == []


def test_validate_34_duplicate_variable():
    inst = CnfInstance(3, ((1, 1, 2), (-1, -2, -3), (2, 3, -1), (3, -2, 1)))
    assert any("repeats" in p for p in validate_34(inst))


def test_validate_34_complementary_pair():
    inst = CnfInstance(3, ((1, -1, 2),))
    problems = validate_34(inst)
    assert any("complement" in p for p in problems)


def test_validate_34_occurrence_bound():
    clauses = tuple((1, 2, 3) for _ in range(4)) + ((-1, -2, -3),)
    inst = CnfInstance(3, clauses)
    assert any("occurs 5 times" in p for p in validate_34(inst))


def test_validate_34_polarity_coverage():
    inst = CnfInstance(3, ((1, 2, 3), (1, -2, -3)))
    assert any("never occurs negatively" in p for p in validate_34(inst))


def test_validate_34_clause_length():
    inst = CnfInstance(3, ((1, 2),))
    assert any("wants 3" in p for p in validate_34(inst))


def test_evaluate():
    assert evaluate(TWO_CLAUSE, (True, True, False))
    assert not evaluate(CnfInstance(3, ((1, 2, 3),)), (False, False, False))
    assert evaluate(CnfInstance(3, ()), (False, False, False))
    with pytest.raises(ValueError):
        evaluate(TWO_CLAUSE, (True,))


def test_brute_force_least_assignment_two_clause():
    # (F,F,T) satisfies both clauses and nothing smaller does
    assert brute_force_sat(TWO_CLAUSE) == (False, False, True)


def test_brute_force_least_assignment_single_clause():
    inst = CnfInstance(3, ((1, 2, 3),))
    assert brute_force_sat(inst) == (False, False, True)


def test_brute_force_empty_clause_list():
    assert brute_force_sat(CnfInstance(2, ())) == (False, False)


def test_brute_force_unsat_and_reenumeration():
    # all eight sign patterns over three variables leave nothing satisfiable
    clauses = tuple(
        tuple(v if bit else -v for v, bit in zip((1, 2, 3), pattern))
        for pattern in all_assignments(3)
    )
    inst = CnfInstance(3, clauses)
    assert brute_force_sat(inst) is None
    assert not any(evaluate(inst, a) for a in all_assignments(3))


def test_brute_force_oracle_contract():
    for seed in range(5):
        inst = random_34(3, 2, seed=seed)
        a = brute_force_sat(inst)
        assert a is not None and evaluate(inst, a)
        # nothing lexicographically smaller satisfies
        for other in all_assignments(3):
            if other >= a:
                break
            assert not evaluate(inst, other)


def test_brute_force_variable_limit():
    inst = CnfInstance(30, ())
    with pytest.raises(ValueError):
        brute_force_sat(inst)


def test_parse_dimacs():
    inst = parse_dimacs("c comment\np cnf 3 1\n1 2 3 0\n")
    assert inst == CnfInstance(3, ((1, 2, 3),))


def test_parse_dimacs_accepts_invalid_34_shapes():
    inst = parse_dimacs("p cnf 3 1\n1 -1 2 0\n")
    assert inst.clauses == ((1, -1, 2),)
    assert validate_34(inst)  # reported, not rejected


def test_parse_dimacs_errors():
    with pytest.raises(ValueError):
        parse_dimacs("1 2 3 0\n")
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 3 1\n1 2 three 0\n")
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 3 1\n1 2 3\n")
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 3 2\n1 2 3 0\n")


def test_dimacs_round_trip():
    text = to_dimacs(TWO_CLAUSE)
    assert parse_dimacs(text) == TWO_CLAUSE


def test_random_34_deterministic():
    a = random_34(3, 2, seed=7)
    b = random_34(3, 2, seed=7)
    assert a == b
    assert validate_34(a) == []


def test_random_34_seeds_vary():
    outputs = {random_34(4, 3, seed=s) for s in range(6)}
    assert len(outputs) > 1


def test_random_34_infeasible_shape():
    with pytest.raises(ValueError):
        random_34(3, 1, seed=0)  # cannot cover both polarities of 3 variables
    with pytest.raises(ValueError):
        random_34(3, 5, seed=0)  # would exceed four occurrences somewhere


def test_random_34_budget():
    with pytest.raises(GenerationBudgetError):
        random_34(3, 2, seed=0, max_attempts=0)
