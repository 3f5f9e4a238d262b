"""Shared fixtures: small named spaces and exhaustive sweep helpers."""

from itertools import combinations

import pytest

from roughchoice import build_space
from roughchoice.claims import enumerate_spaces


@pytest.fixture
def p3():
    """Path on three points: 0-1-2."""
    return build_space(3, [(0, 1), (1, 2)])


@pytest.fixture
def c4():
    """Cycle on four points."""
    return build_space(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def complete2():
    """Complete relation on two points."""
    return build_space(2, [(0, 1)])


@pytest.fixture
def singleton():
    return build_space(1, [])


@pytest.fixture
def eq_space():
    """An equivalence with classes {0,1} and {2}."""
    return build_space(3, [(0, 1)])


def all_subsets(space):
    """Every subset of the universe, by size then lexicographically."""
    pts = range(space.n)
    for r in range(space.n + 1):
        for c in combinations(pts, r):
            yield frozenset(c)


def spaces_up_to(max_n):
    return list(enumerate_spaces(max_n))
