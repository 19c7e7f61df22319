"""Shared fixtures: canonical small instances and a bounded reduction cache."""

from __future__ import annotations

from functools import lru_cache

import pytest

from bbdetect.polynomials import Polynomial, PolySystem
from bbdetect.reduction import reduce_instance
from bbdetect.sat import CnfInstance, random_34, validate_34
from bbdetect.terms import Ring


# The canonical two-clause instance: every variable occurs once per polarity.
TWO_CLAUSE = CnfInstance(3, ((1, 2, 3), (-1, -2, -3)))


@lru_cache(maxsize=4)
def reduced(inst: CnfInstance) -> PolySystem:
    """Reduction cache; keeps at most a few large systems alive."""
    return reduce_instance(inst)


def corpus_instances(min_count: int = 20):
    """Valid 3,4-SAT instances with n = 3 and m in {2, 3}, two-clause first."""
    out = [TWO_CLAUSE]
    seed = 0
    while len(out) < min_count:
        m = 2 if len(out) % 2 else 3
        inst = random_34(3, m, seed=seed)
        seed += 1
        if inst not in out:
            assert not validate_34(inst)
            out.append(inst)
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_instances()


@pytest.fixture
def two_clause():
    return TWO_CLAUSE


@pytest.fixture
def xy_ring():
    return Ring(("x", "y"))


def poly(pairs):
    return Polynomial(pairs)


@pytest.fixture
def simple_system(xy_ring):
    """{x - 1, y - 2}: a border basis with order ideal {1}."""
    return PolySystem(
        xy_ring,
        (
            poly([((1, 0), 1), ((0, 0), -1)]),
            poly([((0, 1), 1), ((0, 0), -2)]),
        ),
    )


GRID_POINTS = ((0, 0), (1, 0), (0, 1), (1, 1))


@pytest.fixture
def grid_system(xy_ring):
    """Vanishing system of the 2x2 grid; border basis with ideal {1, x, y, xy}."""
    return PolySystem(
        xy_ring,
        (
            poly([((2, 0), 1), ((1, 0), -1)]),
            poly([((2, 1), 1), ((1, 1), -1)]),
            poly([((1, 2), 1), ((1, 1), -1)]),
            poly([((0, 2), 1), ((0, 1), -1)]),
        ),
    )


@pytest.fixture
def broken_grid_system(xy_ring):
    """The grid system with x^2 - x replaced by x^2 - y - x."""
    return PolySystem(
        xy_ring,
        (
            poly([((2, 0), 1), ((0, 1), -1), ((1, 0), -1)]),
            poly([((2, 1), 1), ((1, 1), -1)]),
            poly([((1, 2), 1), ((1, 1), -1)]),
            poly([((0, 2), 1), ((0, 1), -1)]),
        ),
    )
