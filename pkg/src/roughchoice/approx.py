"""Choice-based approximation operators over a block family.

Collections of blocks are represented as frozensets of positions into a
BlockFamily.  The order used everywhere for tie-breaking is the canonical
one: blocks by (size, sorted members), collections lexicographically on
their sorted index tuples.

The selector implemented here is deterministic and lattice-coherent with
the refinement order on collections (E below B iff E is a subset of B and
E is pairwise disjoint): it returns the greatest element of a full
down-set, the least element of a full up-set, and otherwise the
canonically least member of the family.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Literal, Optional

from .spaces import BlockFamily, ToleranceSpace, canon, dom, theta0
from .reports import AuditVerdict

#: Hard cap on block-family size for the subcollection searches.
MAX_FAMILY_SIZE = 24

EmptyCoverPolicy = Literal["defined", "undefined"]

Collection = frozenset  # of block indices


def collection_key(c: Collection) -> tuple[int, ...]:
    return tuple(sorted(c))


def prec(family: BlockFamily, e: Collection, b: Collection) -> bool:
    """E below B: E is included in B and pairwise disjoint."""
    return e <= b and family.is_disjoint(e)


def _check_cap(k: int) -> None:
    if k > MAX_FAMILY_SIZE:
        raise ValueError(
            f"block family of size {k} exceeds the search cap {MAX_FAMILY_SIZE}"
        )


def maximal_disjoint_subcollections(
    family: BlockFamily, indices: Iterable[int]
) -> list[Collection]:
    """All inclusion-maximal pairwise-disjoint subfamilies of the given blocks.

    Returns [frozenset()] for an empty input.
    """
    idx = sorted(indices)
    _check_cap(len(idx))
    if not idx:
        return [frozenset()]
    # Maximal disjoint subfamilies = maximal cliques of the disjointness graph.
    compat = {
        i: {j for j in idx if j != i and not (family[i] & family[j])} for i in idx
    }
    out: list[Collection] = []

    def grow(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: len(compat[v] & p))
        for v in sorted(p - compat[pivot]):
            grow(r | {v}, p & compat[v], x & compat[v])
            p.remove(v)
            x.add(v)

    grow(set(), set(idx), set())
    out.sort(key=collection_key)
    return out


def minimal_disjoint_covers(
    family: BlockFamily, indices: Iterable[int], a: frozenset[int]
) -> list[Collection]:
    """All minimal pairwise-disjoint subfamilies of the given blocks covering a.

    Since every candidate block meets a and the chosen blocks are disjoint,
    no block of a cover is redundant, so the disjoint covers are exactly the
    minimal ones.  Returns [] when no disjoint cover exists, and
    [frozenset()] for a = empty set (the empty cover).
    """
    idx = sorted(indices)
    _check_cap(len(idx))
    out: list[Collection] = []

    def extend(chosen: list[int], covered: frozenset[int], used: frozenset[int]) -> None:
        rest = a - covered
        if not rest:
            out.append(frozenset(chosen))
            return
        e = min(rest)
        for i in idx:
            b = family[i]
            if e in b and not (b & used):
                chosen.append(i)
                extend(chosen, covered | b, used | b)
                chosen.pop()

    extend([], frozenset(), frozenset())
    out.sort(key=collection_key)
    return out


def _is_down_set_of(family: BlockFamily, xs: set[Collection], g: Collection) -> bool:
    """True iff xs = {e : e prec g} plus g itself."""
    if len(g) > 20:
        return False
    down = {
        frozenset(c)
        for r in range(len(g) + 1)
        for c in combinations(sorted(g), r)
        if family.is_disjoint(c)
    }
    down.add(g)
    return xs == down


def lambda_select(
    family: BlockFamily, collections: Iterable[Collection]
) -> Collection:
    """Deterministic lattice-coherent selection from a family of collections.

    Piecewise: (1) a family that is the full down-set of a unique greatest
    element yields that element; (2) a family that is the full up-set of a
    unique least element yields that element; (3) otherwise the
    canonically least member is returned.
    """
    xs = sorted(set(collections), key=collection_key)
    if not xs:
        raise ValueError("selection from an empty family")
    xs_set = set(xs)
    # (1) greatest element whose down-set the family is
    greatest = [
        g for g in xs if all(x == g or prec(family, x, g) for x in xs)
    ]
    if len(greatest) == 1 and _is_down_set_of(family, xs_set, greatest[0]):
        return greatest[0]
    # (2) least element whose up-set (within the whole powerset) the family is
    least = [m for m in xs if all(m <= x for x in xs)]
    if len(least) == 1:
        m = least[0]
        if len(xs) == 2 ** (len(family) - len(m)) and all(m <= x for x in xs):
            return m
    # (3) canonical least
    return xs[0]


# ---------------------------------------------------------------------------
# The ten approximation operators


def primitive_lower(
    space: ToleranceSpace, family: BlockFamily, a: frozenset[int]
) -> Collection:
    """Selected maximal disjoint subfamily of the blocks inside a."""
    return lambda_select(
        family, maximal_disjoint_subcollections(family, family.within(a))
    )


def lower_zero(
    space: ToleranceSpace, family: BlockFamily, a: frozenset[int]
) -> frozenset[int]:
    """Union of the selected maximal disjoint subfamily of blocks inside a."""
    return family.union_of(primitive_lower(space, family, a))


def lateral_lower(
    space: ToleranceSpace, family: BlockFamily, a: frozenset[int]
) -> frozenset[int]:
    """Union of all blocks included in a."""
    return family.union_of(family.within(a))


def primitive_upper(
    space: ToleranceSpace,
    family: BlockFamily,
    a: frozenset[int],
    empty_cover: EmptyCoverPolicy = "defined",
) -> Optional[Collection]:
    """Selected minimal disjoint block cover of a, or None when there is none.

    For a = empty set the empty cover makes the result the empty collection
    under the default policy; with ``empty_cover="undefined"`` it is None.
    """
    if not a and empty_cover == "undefined":
        return None
    covers = minimal_disjoint_covers(family, family.meeting(a), a)
    if not covers:
        return None
    return lambda_select(family, covers)


def upper_zero(
    space: ToleranceSpace,
    family: BlockFamily,
    a: frozenset[int],
    empty_cover: EmptyCoverPolicy = "defined",
) -> Optional[frozenset[int]]:
    """Union of the selected minimal disjoint cover of a, or None."""
    c = primitive_upper(space, family, a, empty_cover)
    return None if c is None else family.union_of(c)


def lateral_upper(
    space: ToleranceSpace, family: BlockFamily, a: frozenset[int]
) -> frozenset[int]:
    """Union of all blocks that intersect a."""
    return family.union_of(family.meeting(a))


def classical_lower(space: ToleranceSpace, a: frozenset[int]) -> frozenset[int]:
    """Union of the neighborhoods included in a."""
    out: frozenset[int] = frozenset()
    for x in range(space.n):
        if space.neigh[x] <= a:
            out |= space.neigh[x]
    return out


def classical_upper(space: ToleranceSpace, a: frozenset[int]) -> frozenset[int]:
    """Union of the neighborhoods of points of a that intersect a."""
    out: frozenset[int] = frozenset()
    for x in a:
        if space.neigh[x] & a:
            out |= space.neigh[x]
    return out


def star_lower(space: ToleranceSpace, a: frozenset[int]) -> frozenset[int]:
    """Points related to some point whose neighborhood lies inside a."""
    return frozenset(
        x
        for x in range(space.n)
        if any(y in space.neigh[x] and space.neigh[y] <= a for y in range(space.n))
    )


def star_upper(space: ToleranceSpace, a: frozenset[int]) -> frozenset[int]:
    """Points all of whose related neighborhoods intersect a."""
    return frozenset(
        x
        for x in range(space.n)
        if all(
            space.neigh[y] & a for y in range(space.n) if y in space.neigh[x]
        )
    )


def theta_lower(space: ToleranceSpace, a: frozenset[int]) -> frozenset[int]:
    """Pawlak lower approximation with respect to the theta0 partition."""
    out: frozenset[int] = frozenset()
    for c in theta0(space):
        if c <= a:
            out |= c
    return out


def theta_upper(space: ToleranceSpace, a: frozenset[int]) -> frozenset[int]:
    """Pawlak upper approximation with respect to the theta0 partition."""
    out: frozenset[int] = frozenset()
    for c in theta0(space):
        if c & a:
            out |= c
    return out


@dataclass(frozen=True)
class ApproximationProfile:
    """The four-slot approximation profile of a subset; u0 may be absent."""

    l0: frozenset[int]
    u0: Optional[frozenset[int]]
    lateral_l: frozenset[int]
    lateral_u: frozenset[int]

    def key(self) -> tuple:
        return (
            canon(self.l0),
            None if self.u0 is None else canon(self.u0),
            canon(self.lateral_l),
            canon(self.lateral_u),
        )


def profile(
    space: ToleranceSpace,
    family: BlockFamily,
    a: frozenset[int],
    empty_cover: EmptyCoverPolicy = "defined",
) -> ApproximationProfile:
    """Assemble the approximation profile of a."""
    p = ApproximationProfile(
        l0=lower_zero(space, family, a),
        u0=upper_zero(space, family, a, empty_cover),
        lateral_l=lateral_lower(space, family, a),
        lateral_u=lateral_upper(space, family, a),
    )
    if not p.l0 <= p.lateral_l:
        raise AssertionError("profile invariant violated: l0 not within lateral_l")
    if p.u0 is not None and not a <= p.u0:
        raise AssertionError("profile invariant violated: subset not within u0")
    return p


# ---------------------------------------------------------------------------
# Coherence audit


def coherence_audit(
    space: ToleranceSpace, family: Optional[BlockFamily] = None
) -> AuditVerdict:
    """Check the two coherence equalities of the selector on all cone pairs.

    Sweeps every comparable pair (a, b) with a strictly below b and b itself
    pairwise disjoint (otherwise the upper cone is empty and no selection is
    possible); the lower cone must select a, the upper cone b.
    """
    from .spaces import enumerate_blocks

    if family is None:
        family = enumerate_blocks(space)
    k = len(family)
    if k > 12:
        raise ValueError("coherence audit limited to at most 12 blocks")
    all_cols = [
        frozenset(c)
        for r in range(k + 1)
        for c in combinations(range(k), r)
    ]
    disjoint = [c for c in all_cols if family.is_disjoint(c)]
    for a in disjoint:
        for b in disjoint:
            if a == b or not a <= b:
                continue
            lower_cone = [x for x in all_cols if prec(family, x, a) and prec(family, x, b)]
            upper_cone = [x for x in all_cols if prec(family, a, x) and prec(family, b, x)]
            got_l = lambda_select(family, lower_cone)
            got_u = lambda_select(family, upper_cone)
            if got_l != a or got_u != b:
                return AuditVerdict(
                    claim="COH",
                    scope=f"cone pairs over {k} blocks",
                    status="refuted",
                    counterexample={
                        "a": collection_key(a),
                        "b": collection_key(b),
                        "lower_selected": collection_key(got_l),
                        "upper_selected": collection_key(got_u),
                    },
                )
    return AuditVerdict(
        claim="COH", scope=f"cone pairs over {k} blocks", status="verified"
    )
