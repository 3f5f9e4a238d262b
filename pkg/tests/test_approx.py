"""Approximation operators against naive definitional oracles.

The oracles here are written independently of the library: subfamily
searches go through the full powerset of the block family, and the
selector cascade is re-derived from its three rules with brute-force
down-set / up-set checks.
"""

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from roughchoice import (
    build_space,
    classical_lower,
    classical_upper,
    coherence_audit,
    enumerate_blocks,
    lambda_select,
    lateral_lower,
    lateral_upper,
    lower_zero,
    maximal_disjoint_subcollections,
    minimal_disjoint_covers,
    prec,
    primitive_lower,
    primitive_upper,
    profile,
    star_lower,
    star_upper,
    theta_lower,
    theta_upper,
    upper_zero,
)
from roughchoice.spaces import theta0

from conftest import all_subsets, spaces_up_to


# ---------------------------------------------------------------------------
# Independent oracles


def powerset(items):
    items = list(items)
    for r in range(len(items) + 1):
        for c in combinations(items, r):
            yield frozenset(c)


def pairwise_disjoint(family, col):
    return all(
        not (family[i] & family[j]) for i, j in combinations(sorted(col), 2)
    )


def oracle_maximal_disjoint(family, indices):
    cands = [c for c in powerset(indices) if pairwise_disjoint(family, c)]
    return sorted(
        (c for c in cands if not any(c < d for d in cands)),
        key=lambda c: tuple(sorted(c)),
    )


def oracle_minimal_covers(family, indices, a):
    cands = [
        c
        for c in powerset(indices)
        if pairwise_disjoint(family, c)
        and a <= frozenset().union(frozenset(), *(family[i] for i in c))
    ]
    return sorted(
        (c for c in cands if not any(d < c for d in cands)),
        key=lambda c: tuple(sorted(c)),
    )


def oracle_select(family, cols):
    cols = set(cols)
    key = lambda c: tuple(sorted(c))
    # rule 1: the family is the full down-set of one of its members
    for g in sorted(cols, key=key):
        down = {
            c for c in powerset(g) if pairwise_disjoint(family, c)
        } | {g}
        if cols == down:
            return g
    # rule 2: the family is the full up-set (all supersets) of its minimum
    m = frozenset.intersection(*cols)
    if m in cols:
        up = {m | extra for extra in powerset(set(range(len(family))) - m)}
        if cols == up:
            return m
    # rule 3: canonically least member
    return min(cols, key=key)


def oracle_l0(space, family, a):
    chosen = oracle_select(
        family, oracle_maximal_disjoint(family, family.within(a))
    )
    return frozenset().union(frozenset(), *(family[i] for i in chosen))


def oracle_u0(space, family, a):
    if not a:
        return frozenset()
    covers = oracle_minimal_covers(family, family.meeting(a), a)
    if not covers:
        return None
    chosen = oracle_select(family, covers)
    return frozenset().union(*(family[i] for i in chosen))


def oracle_classical_lower(space, a):
    return frozenset().union(
        frozenset(), *(space.neigh[x] for x in range(space.n) if space.neigh[x] <= a)
    )


def oracle_classical_upper(space, a):
    return frozenset().union(
        frozenset(), *(space.neigh[x] for x in a if space.neigh[x] & a)
    )


def oracle_star_lower(space, a):
    out = set()
    for x in range(space.n):
        if any(space.related(x, y) and space.neigh[y] <= a for y in range(space.n)):
            out.add(x)
    return frozenset(out)


def oracle_star_upper(space, a):
    out = set()
    for x in range(space.n):
        if all(
            space.neigh[y] & a
            for y in range(space.n)
            if space.related(x, y)
        ):
            out.add(x)
    return frozenset(out)


def oracle_theta(space, a):
    lo, up = frozenset(), frozenset()
    for c in theta0(space):
        if c <= a:
            lo |= c
        if c & a:
            up |= c
    return lo, up


# ---------------------------------------------------------------------------
# Subfamily searches


def test_maximal_disjoint_matches_oracle():
    for space in spaces_up_to(4):
        family = enumerate_blocks(space)
        for a in all_subsets(space):
            idx = family.within(a)
            assert maximal_disjoint_subcollections(family, idx) == (
                oracle_maximal_disjoint(family, idx)
            )


def test_minimal_covers_match_oracle():
    for space in spaces_up_to(4):
        family = enumerate_blocks(space)
        for a in all_subsets(space):
            idx = family.meeting(a)
            assert minimal_disjoint_covers(family, idx, a) == (
                oracle_minimal_covers(family, idx, a)
            )


def test_documented_subfamily_examples():
    p3 = build_space(3, [(0, 1), (1, 2)])
    f3 = enumerate_blocks(p3)
    # maximal disjoint subfamilies of the whole family: each block alone
    assert maximal_disjoint_subcollections(f3, (0, 1)) == [
        frozenset({0}),
        frozenset({1}),
    ]
    # minimal disjoint covers
    assert minimal_disjoint_covers(f3, f3.meeting(frozenset({1})), frozenset({1})) == [
        frozenset({0}),
        frozenset({1}),
    ]
    assert (
        minimal_disjoint_covers(f3, f3.meeting(frozenset({0, 2})), frozenset({0, 2}))
        == []
    )
    assert minimal_disjoint_covers(
        f3, f3.meeting(frozenset({0, 1})), frozenset({0, 1})
    ) == [frozenset({0})]
    # path on four points: {0,1},{2,3} beats the middle block
    p4 = build_space(4, [(0, 1), (1, 2), (2, 3)])
    f4 = enumerate_blocks(p4)
    assert f4.blocks == (frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3}))
    assert maximal_disjoint_subcollections(f4, (0, 1, 2)) == [
        frozenset({0, 2}),
        frozenset({1}),
    ]


def test_covers_are_antichains_and_disjoint():
    for space in spaces_up_to(4):
        family = enumerate_blocks(space)
        for a in all_subsets(space):
            covers = minimal_disjoint_covers(family, family.meeting(a), a)
            for c in covers:
                assert pairwise_disjoint(family, c)
                assert a <= family.union_of(c)
            for c, d in combinations(covers, 2):
                assert not (c < d or d < c)


# ---------------------------------------------------------------------------
# Selector


def test_lambda_select_matches_oracle_everywhere():
    for space in spaces_up_to(3):
        family = enumerate_blocks(space)
        k = len(family)
        cols = [frozenset(c) for c in powerset(range(k))]
        # all nonempty families of collections would be 2^(2^k); sample the
        # structured ones: down-sets, up-sets, and every family of size <= 2
        families = []
        for g in cols:
            families.append(
                [c for c in powerset(g) if pairwise_disjoint(family, c)] + [g]
            )
            families.append([g | e for e in powerset(set(range(k)) - g)])
        for a in cols:
            for b in cols:
                families.append([a, b])
        for fam in families:
            assert lambda_select(family, fam) == oracle_select(family, set(fam))


def test_lambda_select_rules():
    p3 = build_space(3, [(0, 1), (1, 2)])
    family = enumerate_blocks(p3)
    # rule 3: lexicographic least of an unstructured family
    assert lambda_select(family, [frozenset({0}), frozenset({1})]) == frozenset({0})
    # rule 1: full down-set of {0} selects {0} (its disjoint subsets are just
    # the empty collection)
    assert lambda_select(family, [frozenset(), frozenset({0})]) == frozenset({0})
    # rule 2: full up-set of {1} selects {1}
    assert lambda_select(family, [frozenset({1}), frozenset({0, 1})]) == frozenset({1})
    with pytest.raises(ValueError):
        lambda_select(family, [])


def test_prec(complete2):
    family = enumerate_blocks(complete2)
    assert prec(family, frozenset(), frozenset({0}))
    assert prec(family, frozenset({0}), frozenset({0}))
    assert not prec(family, frozenset({0}), frozenset())


def test_coherence_on_all_small_spaces():
    for space in spaces_up_to(4):
        family = enumerate_blocks(space)
        if len(family) > 6:
            continue
        assert coherence_audit(space, family).status == "verified"


# ---------------------------------------------------------------------------
# The ten operators against oracles


def test_all_operators_match_oracles_exhaustively():
    for space in spaces_up_to(4):
        family = enumerate_blocks(space)
        for a in all_subsets(space):
            assert lower_zero(space, family, a) == oracle_l0(space, family, a)
            assert upper_zero(space, family, a) == oracle_u0(space, family, a)
            assert lateral_lower(space, family, a) == frozenset().union(
                frozenset(), *(b for b in family.blocks if b <= a)
            )
            assert lateral_upper(space, family, a) == frozenset().union(
                frozenset(), *(b for b in family.blocks if b & a)
            )
            assert classical_lower(space, a) == oracle_classical_lower(space, a)
            assert classical_upper(space, a) == oracle_classical_upper(space, a)
            assert star_lower(space, a) == oracle_star_lower(space, a)
            assert star_upper(space, a) == oracle_star_upper(space, a)
            lo, up = oracle_theta(space, a)
            assert theta_lower(space, a) == lo
            assert theta_upper(space, a) == up


def test_documented_operator_values():
    p3 = build_space(3, [(0, 1), (1, 2)])
    f3 = enumerate_blocks(p3)
    S = p3.universe
    assert lower_zero(p3, f3, S) == frozenset({0, 1})
    assert primitive_lower(p3, f3, S) == frozenset({0})
    assert lower_zero(p3, f3, frozenset({0})) == frozenset()
    assert upper_zero(p3, f3, frozenset({0})) == frozenset({0, 1})
    assert upper_zero(p3, f3, frozenset({0, 2})) is None
    assert primitive_upper(p3, f3, frozenset({1})) == frozenset({0})
    assert lateral_upper(p3, f3, frozenset({1})) == S
    assert classical_lower(p3, frozenset({0, 1})) == frozenset({0, 1})
    c4 = build_space(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert classical_lower(c4, frozenset({0, 1})) == frozenset()
    assert star_lower(p3, frozenset({0, 1})) == frozenset({0, 1})
    assert star_upper(p3, frozenset({0, 1})) == S
    assert theta_lower(p3, frozenset({0, 1})) == frozenset({0, 1})
    # a block approximates to itself from below
    for space in spaces_up_to(3):
        fam = enumerate_blocks(space)
        for b in fam.blocks:
            assert lower_zero(space, fam, b) == b


def test_empty_cover_policy():
    p3 = build_space(3, [(0, 1), (1, 2)])
    f3 = enumerate_blocks(p3)
    assert upper_zero(p3, f3, frozenset(), "defined") == frozenset()
    assert upper_zero(p3, f3, frozenset(), "undefined") is None
    assert primitive_upper(p3, f3, frozenset(), "undefined") is None


def test_profile_values_on_p3():
    p3 = build_space(3, [(0, 1), (1, 2)])
    f3 = enumerate_blocks(p3)
    p = profile(p3, f3, frozenset({0}))
    assert p.key() == ((), (0, 1), (), (0, 1))
    p = profile(p3, f3, frozenset({0, 2}))
    assert p.key() == ((), None, (), (0, 1, 2))


# ---------------------------------------------------------------------------
# Properties

space_strategy = st.builds(
    lambda n, mask: build_space(
        n,
        [
            p
            for k, p in enumerate(
                (i, j) for i in range(n) for j in range(i + 1, n)
            )
            if mask >> k & 1
        ],
    ),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=0, max_value=2 ** 15 - 1),
)


@st.composite
def space_and_subset(draw):
    space = draw(space_strategy)
    a = frozenset(
        x for x in range(space.n) if draw(st.booleans())
    )
    return space, a


@settings(max_examples=200, deadline=None)
@given(space_and_subset())
def test_lower_chain_property(pair):
    space, a = pair
    family = enumerate_blocks(space)
    l0 = lower_zero(space, family, a)
    lb = lateral_lower(space, family, a)
    ub = lateral_upper(space, family, a)
    assert l0 <= lb <= a <= ub
    # l0 is a union of pairwise-disjoint blocks inside a
    chosen = primitive_lower(space, family, a)
    assert pairwise_disjoint(family, chosen)
    assert all(family[i] <= a for i in chosen)
    assert family.union_of(chosen) == l0


@settings(max_examples=200, deadline=None)
@given(space_and_subset())
def test_upper_cover_property(pair):
    space, a = pair
    family = enumerate_blocks(space)
    u0 = upper_zero(space, family, a)
    if u0 is not None:
        chosen = primitive_upper(space, family, a)
        assert pairwise_disjoint(family, chosen)
        assert a <= u0
        assert family.union_of(chosen) == u0
    assert upper_zero(space, family, a) == u0  # deterministic


@settings(max_examples=200, deadline=None)
@given(space_and_subset())
def test_lateral_monotone_in_subset(pair):
    space, a = pair
    family = enumerate_blocks(space)
    for x in a:
        b = a - {x}
        assert lateral_lower(space, family, b) <= lateral_lower(space, family, a)
        assert lateral_upper(space, family, b) <= lateral_upper(space, family, a)
