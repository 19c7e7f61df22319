"""3,4-SAT instances: representation, validation, DIMACS, brute-force oracle.

Clauses are tuples of DIMACS-style literals (positive or negative 1-based
variable indices).  The container is deliberately permissive so malformed
input can be parsed and then *reported* by ``validate_34``; only the
reduction refuses invalid instances outright.  Valid instances have
exactly three distinct variables per clause, no complementary pair inside
a clause, at most four total occurrences per variable, and both polarities
of every variable appearing somewhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

Clause = Tuple[int, ...]
Assignment = Tuple[bool, ...]

MAX_OCCURRENCES = 4


class InvalidInstanceError(ValueError):
    """Raised when an operation requires a valid 3,4-SAT instance."""

    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


class GenerationBudgetError(RuntimeError):
    """The random generator exhausted its attempt budget."""


@dataclass(frozen=True)
class CnfInstance:
    """A CNF formula over variables 1..n_vars; clause order is preserved."""

    n_vars: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.n_vars < 1:
            raise ValueError("n_vars must be positive")
        for idx, clause in enumerate(self.clauses):
            for lit in clause:
                if not isinstance(lit, int) or lit == 0:
                    raise ValueError(f"clause {idx}: literal {lit!r} is not a nonzero int")
                if abs(lit) > self.n_vars:
                    raise ValueError(f"clause {idx}: variable {abs(lit)} out of range")

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)


def validate_34(inst: CnfInstance) -> List[str]:
    """All violations of the 3,4 shape; an empty list means valid."""
    problems: List[str] = []
    for idx, clause in enumerate(inst.clauses):
        if len(clause) != 3:
            problems.append(f"clause {idx + 1} has {len(clause)} literals, wants 3")
        seen_vars = [abs(lit) for lit in clause]
        if len(set(seen_vars)) != len(seen_vars):
            problems.append(f"clause {idx + 1} repeats a variable")
        if any(-lit in clause for lit in clause):
            problems.append(f"clause {idx + 1} contains a variable and its complement")
    pos_count = [0] * (inst.n_vars + 1)
    neg_count = [0] * (inst.n_vars + 1)
    for clause in inst.clauses:
        for lit in clause:
            if lit > 0:
                pos_count[lit] += 1
            else:
                neg_count[-lit] += 1
    for v in range(1, inst.n_vars + 1):
        total = pos_count[v] + neg_count[v]
        if total > MAX_OCCURRENCES:
            problems.append(f"variable {v} occurs {total} times, allows {MAX_OCCURRENCES}")
        if pos_count[v] == 0:
            problems.append(f"variable {v} never occurs positively")
        if neg_count[v] == 0:
            problems.append(f"variable {v} never occurs negatively")
    return problems


def require_valid_34(inst: CnfInstance) -> None:
    problems = validate_34(inst)
    if problems:
        raise InvalidInstanceError(problems)


def evaluate(inst: CnfInstance, assignment: Assignment) -> bool:
    """True iff every clause has a satisfied literal."""
    if len(assignment) != inst.n_vars:
        raise ValueError("assignment length does not match variable count")
    for clause in inst.clauses:
        if not any(
            assignment[lit - 1] if lit > 0 else not assignment[-lit - 1]
            for lit in clause
        ):
            return False
    return True


def brute_force_sat(inst: CnfInstance, *, max_vars: int = 24) -> Optional[Assignment]:
    """The lexicographically least satisfying assignment, or None if UNSAT.

    Enumerates all 2^n assignments with False < True, so the first hit is
    the least one.
    """
    if inst.n_vars > max_vars:
        raise ValueError(f"{inst.n_vars} variables exceed the brute-force limit {max_vars}")
    for values in product((False, True), repeat=inst.n_vars):
        if evaluate(inst, values):
            return values
    return None


def parse_dimacs(text: str) -> CnfInstance:
    """Parse standard DIMACS CNF; clause shape is validated separately."""
    n_vars: Optional[int] = None
    declared_clauses: Optional[int] = None
    literals: List[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            n_vars, declared_clauses = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            try:
                literals.append(int(tok))
            except ValueError:
                raise ValueError(f"non-integer token {tok!r} in DIMACS body") from None
    if n_vars is None:
        raise ValueError("missing 'p cnf' problem line")
    clauses: List[Clause] = []
    current: List[int] = []
    for lit in literals:
        if lit == 0:
            if current:
                clauses.append(tuple(current))
                current = []
        else:
            current.append(lit)
    if current:
        raise ValueError("last clause is not zero-terminated")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise ValueError(
            f"problem line declares {declared_clauses} clauses, found {len(clauses)}"
        )
    return CnfInstance(n_vars, tuple(clauses))


def to_dimacs(inst: CnfInstance) -> str:
    lines = [f"p cnf {inst.n_vars} {inst.n_clauses}"]
    for clause in inst.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def random_34(
    n_vars: int,
    n_clauses: int,
    seed: int = 0,
    *,
    max_attempts: int = 200_000,
) -> CnfInstance:
    """A random valid 3,4-SAT instance, deterministic per seed.

    Rejection sampling: draw clauses of three distinct variables with
    random polarities until the occurrence and polarity constraints hold.
    """
    if n_vars < 3:
        raise ValueError("need at least 3 variables for 3-literal clauses")
    if not 2 * n_vars <= 3 * n_clauses <= MAX_OCCURRENCES * n_vars:
        raise ValueError(
            f"no valid instance shape with n_vars={n_vars}, n_clauses={n_clauses}"
        )
    rng = random.Random(seed)
    variables = list(range(1, n_vars + 1))
    for _ in range(max_attempts):
        clauses = []
        for _ in range(n_clauses):
            chosen = rng.sample(variables, 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
        inst = CnfInstance(n_vars, tuple(clauses))
        if not validate_34(inst):
            return inst
    raise GenerationBudgetError(
        f"no valid instance found in {max_attempts} attempts (n={n_vars}, m={n_clauses})"
    )


def all_assignments(n_vars: int) -> Iterator[Assignment]:
    """Every assignment in lexicographic order (False < True)."""
    yield from product((False, True), repeat=n_vars)
