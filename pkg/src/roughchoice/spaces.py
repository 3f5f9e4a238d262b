"""Finite tolerance spaces and their primitive relational objects.

A tolerance space is a finite universe {0..n-1} together with a reflexive,
symmetric relation.  Everything downstream (approximations, quotients,
audits) is built from neighborhoods, the theta0 equivalence and the family
of blocks (maximal cliques of the relation graph).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


def canon(s: Iterable[int]) -> tuple[int, ...]:
    """Canonical form of a subset: sorted tuple."""
    return tuple(sorted(s))


def subset_rank(s: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Total order on subsets: by size, then lexicographically."""
    t = canon(s)
    return (len(t), t)


@dataclass(frozen=True)
class ToleranceSpace:
    """Universe {0..n-1} with a reflexive symmetric relation.

    ``neigh[x]`` is the neighborhood of x (always contains x).
    """

    n: int
    neigh: tuple[frozenset[int], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("universe must have at least one point")
        if len(self.neigh) != self.n:
            raise ValueError("neighborhood table size mismatch")
        for x, nb in enumerate(self.neigh):
            if x not in nb:
                raise ValueError(f"relation not reflexive at {x}")
            for y in nb:
                if not 0 <= y < self.n:
                    raise ValueError(f"index {y} out of range")
                if x not in self.neigh[y]:
                    raise ValueError(f"relation not symmetric at ({x},{y})")
        if self.labels is not None and (
            len(self.labels) != self.n or len(set(self.labels)) != self.n
        ):
            raise ValueError("labels must be n distinct strings")

    def related(self, x: int, y: int) -> bool:
        return y in self.neigh[x]

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def pairs(self) -> list[tuple[int, int]]:
        """Off-diagonal related pairs (i, j) with i < j, sorted."""
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if j in self.neigh[i]
        ]


def build_space(
    n: int,
    pairs: Sequence[tuple[int, int]],
    symmetrize: bool = True,
    labels: Optional[Sequence[str]] = None,
) -> ToleranceSpace:
    """Build a tolerance space from edge pairs.

    The reflexive closure is always applied.  With ``symmetrize`` off,
    input whose mirror pair is missing is rejected rather than repaired.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    nb: list[set[int]] = [{x} for x in range(n)]
    given = set()
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"pair ({i},{j}) out of range for n={n}")
        given.add((i, j))
    if not symmetrize:
        for i, j in given:
            if i != j and (j, i) not in given:
                raise ValueError(f"asymmetric input: ({i},{j}) without ({j},{i})")
    for i, j in given:
        nb[i].add(j)
        nb[j].add(i)
    return ToleranceSpace(
        n=n,
        neigh=tuple(frozenset(s) for s in nb),
        labels=tuple(labels) if labels is not None else None,
    )


def neighborhood(space: ToleranceSpace, x: int) -> frozenset[int]:
    """All points related to x (contains x)."""
    if not 0 <= x < space.n:
        raise ValueError(f"index {x} out of range")
    return space.neigh[x]


def dom(space: ToleranceSpace, z: int) -> frozenset[int]:
    """Intersection of all neighborhoods containing z."""
    if not 0 <= z < space.n:
        raise ValueError(f"index {z} out of range")
    out = space.universe
    for x in range(space.n):
        if z in space.neigh[x]:
            out &= space.neigh[x]
    return out


def theta0(space: ToleranceSpace) -> list[frozenset[int]]:
    """Partition of the universe by equal dom values (an equivalence)."""
    by_dom: dict[frozenset[int], set[int]] = {}
    for z in range(space.n):
        by_dom.setdefault(dom(space, z), set()).add(z)
    classes = [frozenset(c) for c in by_dom.values()]
    classes.sort(key=canon)
    return classes


def _bron_kerbosch(
    r: set[int], p: set[int], x: set[int],
    neigh: tuple[frozenset[int], ...], out: list[frozenset[int]],
) -> None:
    if not p and not x:
        out.append(frozenset(r))
        return
    pivot = max(p | x, key=lambda v: len(neigh[v] & p))
    for v in sorted(p - neigh[pivot]):
        _bron_kerbosch(r | {v}, p & neigh[v], x & neigh[v], neigh, out)
        p.remove(v)
        x.add(v)


@dataclass(frozen=True)
class BlockFamily:
    """All blocks (maximal cliques) of a space, in canonical order."""

    space: ToleranceSpace
    blocks: tuple[frozenset[int], ...]
    _index: dict[frozenset[int], int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {b: i for i, b in enumerate(self.blocks)}
        )

    def __len__(self) -> int:
        return len(self.blocks)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.blocks[i]

    def index_of(self, block: frozenset[int]) -> int:
        return self._index[block]

    def within(self, a: frozenset[int]) -> tuple[int, ...]:
        """Indices of blocks included in a, in canonical order."""
        return tuple(i for i, b in enumerate(self.blocks) if b <= a)

    def meeting(self, a: frozenset[int]) -> tuple[int, ...]:
        """Indices of blocks that intersect a, in canonical order."""
        return tuple(i for i, b in enumerate(self.blocks) if b & a)

    def union_of(self, collection: Iterable[int]) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for i in collection:
            out |= self.blocks[i]
        return out

    def is_disjoint(self, collection: Iterable[int]) -> bool:
        seen: set[int] = set()
        for i in collection:
            b = self.blocks[i]
            if seen & b:
                return False
            seen |= b
        return True


def enumerate_blocks(space: ToleranceSpace) -> BlockFamily:
    """All maximal cliques of the relation graph, canonically ordered.

    For an equivalence the blocks are exactly its classes.
    """
    neigh_strict = tuple(nb - {x} for x, nb in enumerate(space.neigh))
    found: list[frozenset[int]] = []
    _bron_kerbosch(set(), set(range(space.n)), set(), neigh_strict, found)
    found.sort(key=canon)
    return BlockFamily(space=space, blocks=tuple(found))


def blocks_within(family: BlockFamily, a: frozenset[int]) -> list[frozenset[int]]:
    """Blocks included in a, canonical order preserved."""
    return [family[i] for i in family.within(a)]


def blocks_meeting(family: BlockFamily, a: frozenset[int]) -> list[frozenset[int]]:
    """Blocks intersecting a, canonical order preserved."""
    return [family[i] for i in family.meeting(a)]
