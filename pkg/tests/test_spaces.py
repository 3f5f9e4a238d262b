"""Space construction, neighborhoods, dom/theta0 and block enumeration."""

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from roughchoice import (
    build_space,
    dom,
    enumerate_blocks,
    neighborhood,
    theta0,
)
from roughchoice.spaces import ToleranceSpace, canon

from conftest import all_subsets, spaces_up_to


def brute_force_blocks(space):
    """Oracle: maximal cliques by scanning every subset of the universe."""
    def is_clique(s):
        return all(space.related(x, y) for x in s for y in s)

    cliques = [frozenset(s) for s in all_subsets(space) if s and is_clique(s)]
    return sorted(
        (c for c in cliques if not any(c < d for d in cliques)), key=canon
    )


def test_build_space_rejects_bad_input():
    with pytest.raises(ValueError):
        build_space(0, [])
    with pytest.raises(ValueError):
        build_space(2, [(0, 5)])
    with pytest.raises(ValueError):
        build_space(3, [(0, 1)], symmetrize=False)
    # explicit mirror pair is accepted without symmetrization
    build_space(3, [(0, 1), (1, 0)], symmetrize=False)
    with pytest.raises(ValueError):
        build_space(2, [(0, 1)], labels=["a", "a"])


def test_reflexivity_and_symmetry_are_enforced():
    with pytest.raises(ValueError):
        ToleranceSpace(n=2, neigh=(frozenset({1}), frozenset({1})))
    with pytest.raises(ValueError):
        ToleranceSpace(n=2, neigh=(frozenset({0, 1}), frozenset({1})))


def test_neighborhood_contains_point(p3):
    for x in range(p3.n):
        assert x in neighborhood(p3, x)
    assert neighborhood(p3, 1) == frozenset({0, 1, 2})
    with pytest.raises(ValueError):
        neighborhood(p3, 3)


def test_dom_on_path(p3):
    # dom(1) meets both end neighborhoods, so it collapses to {1}
    assert dom(p3, 0) == frozenset({0, 1})
    assert dom(p3, 1) == frozenset({1})
    assert dom(p3, 2) == frozenset({1, 2})


def test_theta0_is_a_partition():
    for space in spaces_up_to(4):
        classes = theta0(space)
        seen = set()
        for c in classes:
            assert c
            assert not (seen & c)
            seen |= c
        assert seen == set(range(space.n))


def test_theta0_refines_dom_equality():
    for space in spaces_up_to(4):
        for c in theta0(space):
            doms = {dom(space, z) for z in c}
            assert len(doms) == 1


def test_blocks_match_brute_force_oracle():
    for space in spaces_up_to(4):
        family = enumerate_blocks(space)
        assert list(family.blocks) == brute_force_blocks(space)


def test_blocks_match_oracle_on_larger_spot_spaces():
    spots = [
        build_space(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]),
        build_space(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]),
        build_space(7, [(0, 1), (0, 2), (1, 2), (2, 3), (4, 5), (5, 6)]),
    ]
    for space in spots:
        family = enumerate_blocks(space)
        assert list(family.blocks) == brute_force_blocks(space)


def test_equivalence_blocks_are_its_classes(eq_space):
    family = enumerate_blocks(eq_space)
    assert set(family.blocks) == {frozenset({0, 1}), frozenset({2})}
    assert set(theta0(eq_space)) == set(family.blocks)


def test_block_family_queries(p3):
    family = enumerate_blocks(p3)
    assert family.blocks == (frozenset({0, 1}), frozenset({1, 2}))
    assert family.within(frozenset({0, 1})) == (0,)
    assert family.meeting(frozenset({0})) == (0,)
    assert family.meeting(frozenset({1})) == (0, 1)
    assert family.union_of((0, 1)) == frozenset({0, 1, 2})
    assert family.is_disjoint((0,))
    assert not family.is_disjoint((0, 1))
    assert family.index_of(frozenset({1, 2})) == 1


@given(
    n=st.integers(min_value=1, max_value=6),
    mask=st.integers(min_value=0),
)
def test_every_point_lies_in_a_block(n, mask):
    m = n * (n - 1) // 2
    pairs = [
        (i, j)
        for k, (i, j) in enumerate(
            (i, j) for i in range(n) for j in range(i + 1, n)
        )
        if (mask % (2 ** m if m else 1)) >> k & 1
    ]
    space = build_space(n, pairs)
    family = enumerate_blocks(space)
    covered = frozenset().union(*family.blocks)
    assert covered == space.universe
    # blocks are cliques and pairwise incomparable
    for b in family.blocks:
        assert all(space.related(x, y) for x in b for y in b)
    for a, b in combinations(family.blocks, 2):
        assert not (a < b or b < a)
