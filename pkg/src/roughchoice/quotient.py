"""Quotient of the power set by profile equality, with the partial algebra.

Subsets with identical approximation profiles are identified; the quotient
carries the order, the partial operations and the predicates of the
essential rough partial algebra.  Operation tables are built from the
canonical (least-rank) representative of each class; whether the outcome
actually is representative-independent is measured by the audit below, not
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import approx
from .approx import ApproximationProfile, EmptyCoverPolicy
from .reports import AuditVerdict, encode_space
from .spaces import (
    BlockFamily,
    ToleranceSpace,
    canon,
    enumerate_blocks,
    subset_rank,
)

MAX_QUOTIENT_N = 15

UNDEF = -1  # table marker for undefined cells in exports


def weq(a: Optional[int], b: Optional[int]) -> bool:
    """Weak equality: agree whenever both sides are defined."""
    if a is None or b is None:
        return True
    return a == b


@dataclass(frozen=True)
class RoughClass:
    id: int
    profile: ApproximationProfile
    members: tuple[frozenset[int], ...]


class QuotientAlgebra:
    """Carrier, order, operation tables and predicates over profile classes."""

    def __init__(
        self, space: ToleranceSpace, empty_cover: EmptyCoverPolicy = "defined"
    ):
        if space.n > MAX_QUOTIENT_N:
            raise ValueError(
                f"quotient construction capped at n <= {MAX_QUOTIENT_N}"
            )
        self.space = space
        self.empty_cover = empty_cover
        self.family: BlockFamily = enumerate_blocks(space)
        self._build_classes()
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _build_classes(self) -> None:
        space, family = self.space, self.family
        universe = sorted(range(space.n))
        groups: dict[tuple, list[frozenset[int]]] = {}
        for r in range(space.n + 1):
            for comb in combinations(universe, r):
                a = frozenset(comb)
                p = approx.profile(space, family, a, self.empty_cover)
                groups.setdefault(p.key(), []).append(a)
        ordered = sorted(groups.items(), key=lambda kv: subset_rank(kv[1][0]))
        self.classes: list[RoughClass] = []
        self.class_of: dict[frozenset[int], int] = {}
        self._profiles: list[ApproximationProfile] = []
        for i, (key, members) in enumerate(ordered):
            members = sorted(members, key=subset_rank)
            p = approx.profile(space, family, members[0], self.empty_cover)
            self.classes.append(RoughClass(id=i, profile=p, members=tuple(members)))
            self._profiles.append(p)
            for m in members:
                self.class_of[m] = i
        self.zero = self.class_of[frozenset()]
        self.one = self.class_of[space.universe]

    def rep(self, x: int) -> frozenset[int]:
        return self.classes[x].members[0]

    def __len__(self) -> int:
        return len(self.classes)

    def _build_tables(self) -> None:
        n_cls = len(self.classes)
        S = self.space.universe
        prof = self._profiles
        cls = self.class_of

        self.IU = [p.u0 is not None for p in prof]
        self.IN = list(self.IU)
        self.L0 = [cls[p.l0] for p in prof]
        self.U0 = [None if p.u0 is None else cls[p.u0] for p in prof]
        self.Lb = [cls[p.lateral_l] for p in prof]
        self.Ub = [cls[p.lateral_u] for p in prof]
        self.simneg = [cls[S - p.lateral_u] for p in prof]
        self.ominus = [None if p.u0 is None else cls[S - p.u0] for p in prof]

        self.leq = [[self._leq_profiles(x, y) for y in range(n_cls)] for x in range(n_cls)]

        self.sqcup = [
            [cls[self.rep(x) | self.rep(y)] for y in range(n_cls)]
            for x in range(n_cls)
        ]
        self.sqcap = [
            [cls[self.rep(x) & self.rep(y)] for y in range(n_cls)]
            for x in range(n_cls)
        ]
        self.ovee = [
            [
                None
                if prof[x].u0 is None or prof[y].u0 is None
                else cls[prof[x].u0 | prof[y].u0]
                for y in range(n_cls)
            ]
            for x in range(n_cls)
        ]
        self.owedge = [
            [
                None
                if prof[x].u0 is None or prof[y].u0 is None
                else cls[prof[x].u0 & prof[y].u0]
                for y in range(n_cls)
            ]
            for x in range(n_cls)
        ]
        self.curlyvee = [
            [
                None if self.ovee[x][y] is None else self.U0[self.ovee[x][y]]
                for y in range(n_cls)
            ]
            for x in range(n_cls)
        ]
        self.curlywedge = [
            [
                None if self.owedge[x][y] is None else self.L0[self.owedge[x][y]]
                for y in range(n_cls)
            ]
            for x in range(n_cls)
        ]
        self.rsquig = [
            [self.sqcup[self.simneg[x]][self.Ub[y]] for y in range(n_cls)]
            for x in range(n_cls)
        ]
        self.rtail = [
            [
                None
                if self.ominus[x] is None or self.U0[y] is None
                else self.sqcup[self.ominus[x]][self.U0[y]]
                for y in range(n_cls)
            ]
            for x in range(n_cls)
        ]

        block_classes = {cls[b] for b in self.family.blocks}
        self.s_map = [x if x in block_classes else self.zero for x in range(n_cls)]
        bad_pair_classes = set()
        for i, j in combinations(range(self.space.n), 2):
            p = frozenset((i, j))
            if not any(p <= b for b in self.family.blocks):
                bad_pair_classes.add(cls[p])
        self.t_map = [x if x in bad_pair_classes else self.zero for x in range(n_cls)]
        self.block_classes = block_classes
        self.bad_pair_classes = bad_pair_classes

    def _leq_profiles(self, x: int, y: int) -> bool:
        """Slotwise inclusion; the u0 slot counts only when present on both sides."""
        p, q = self._profiles[x], self._profiles[y]
        if not (p.l0 <= q.l0 and p.lateral_l <= q.lateral_l and p.lateral_u <= q.lateral_u):
            return False
        if p.u0 is not None and q.u0 is not None and not p.u0 <= q.u0:
            return False
        return True

    # -- queries ------------------------------------------------------------

    def lneq(self, x: int, y: int) -> bool:
        return self.leq[x][y] and x != y

    def is_single_block_class(self, x: int) -> bool:
        return x in self.block_classes

    def is_disjoint_union_class(self, x: int) -> bool:
        """True iff some member of the class is a union of pairwise-disjoint blocks."""
        return any(
            is_union_of_disjoint_blocks(self.family, m) for m in self.classes[x].members
        )

    # -- export -------------------------------------------------------------

    def to_dict(self) -> dict:
        def cell(v: Optional[int]) -> int:
            return UNDEF if v is None else v

        def mat(t) -> list[list[int]]:
            return [[cell(v) for v in row] for row in t]

        def vec(t) -> list[int]:
            return [cell(v) for v in t]

        def set_or_null(s):
            return None if s is None else list(canon(s))

        return {
            "space": encode_space(self.space),
            "empty_cover": self.empty_cover,
            "zero": self.zero,
            "one": self.one,
            "classes": [
                {
                    "id": c.id,
                    "profile": {
                        "l0": set_or_null(c.profile.l0),
                        "u0": set_or_null(c.profile.u0),
                        "lateral_l": set_or_null(c.profile.lateral_l),
                        "lateral_u": set_or_null(c.profile.lateral_u),
                    },
                    "members": [list(canon(m)) for m in c.members],
                }
                for c in self.classes
            ],
            "leq": [[1 if v else 0 for v in row] for row in self.leq],
            "ops": {
                "sqcup": mat(self.sqcup),
                "sqcap": mat(self.sqcap),
                "ovee": mat(self.ovee),
                "owedge": mat(self.owedge),
                "curlyvee": mat(self.curlyvee),
                "curlywedge": mat(self.curlywedge),
                "rsquig": mat(self.rsquig),
                "rtail": mat(self.rtail),
                "L0": vec(self.L0),
                "U0": vec(self.U0),
                "Lb": vec(self.Lb),
                "Ub": vec(self.Ub),
                "simneg": vec(self.simneg),
                "ominus": vec(self.ominus),
                "s": list(self.s_map),
                "t": list(self.t_map),
            },
            "predicates": {
                "IU": [1 if v else 0 for v in self.IU],
                "IN": [1 if v else 0 for v in self.IN],
            },
        }


def is_union_of_disjoint_blocks(family: BlockFamily, a: frozenset[int]) -> bool:
    """True iff a equals the union of some pairwise-disjoint set of blocks."""
    inside = family.within(a)
    if family.union_of(inside) != a:
        return False
    return bool(approx.minimal_disjoint_covers(family, inside, a))


def build_quotient(
    space: ToleranceSpace, empty_cover: EmptyCoverPolicy = "defined"
) -> QuotientAlgebra:
    return QuotientAlgebra(space, empty_cover)


# ---------------------------------------------------------------------------
# Representative-independence audit

_AUDITED_OPS = (
    "sqcup",
    "sqcap",
    "ovee",
    "owedge",
    "simneg",
    "ominus",
    "L0",
    "U0",
    "Lb",
    "Ub",
)


def well_definedness_audit(
    space: ToleranceSpace, empty_cover: EmptyCoverPolicy = "defined"
) -> list[AuditVerdict]:
    """Evaluate every representative-defined operation over all representatives.

    An operation is well defined on the space when, for every class (pair),
    all representative choices land in the same class and agree on
    definedness.  One verdict per operation, with the least counterexample.
    """
    if space.n > 12:
        raise ValueError("well-definedness audit capped at n <= 12")
    q = QuotientAlgebra(space, empty_cover)
    family = q.family
    S = space.universe

    def u0(a):
        return approx.upper_zero(space, family, a, empty_cover)

    unary = {
        "L0": lambda a: approx.lower_zero(space, family, a),
        "U0": u0,
        "Lb": lambda a: approx.lateral_lower(space, family, a),
        "Ub": lambda a: approx.lateral_upper(space, family, a),
        "simneg": lambda a: S - approx.lateral_upper(space, family, a),
        "ominus": lambda a: None if u0(a) is None else S - u0(a),
    }
    binary = {
        "sqcup": lambda a, b: a | b,
        "sqcap": lambda a, b: a & b,
        "ovee": lambda a, b: None
        if u0(a) is None or u0(b) is None
        else u0(a) | u0(b),
        "owedge": lambda a, b: None
        if u0(a) is None or u0(b) is None
        else u0(a) & u0(b),
    }

    def outcome(v) -> Optional[int]:
        return None if v is None else q.class_of[v]

    verdicts = []
    scope = f"all representative tuples, {len(q)} classes"
    for op in _AUDITED_OPS:
        counterexample = None
        if op in unary:
            fn = unary[op]
            for c in q.classes:
                results = {m: outcome(fn(m)) for m in c.members}
                if len(set(results.values())) > 1:
                    items = sorted(results.items(), key=lambda kv: subset_rank(kv[0]))
                    counterexample = {
                        "op": op,
                        "class": c.id,
                        "representatives": [list(canon(m)) for m, _ in items[:2]],
                        "result_classes": [r for _, r in items[:2]],
                    }
                    break
        else:
            fn = binary[op]
            done = False
            for cx in q.classes:
                for cy in q.classes:
                    results = {}
                    for mx in cx.members:
                        for my in cy.members:
                            results[(mx, my)] = outcome(fn(mx, my))
                    if len(set(results.values())) > 1:
                        items = sorted(
                            results.items(),
                            key=lambda kv: (subset_rank(kv[0][0]), subset_rank(kv[0][1])),
                        )
                        seen = {}
                        for (mx, my), r in items:
                            seen.setdefault(r, (mx, my))
                            if len(seen) == 2:
                                break
                        pairs = sorted(
                            seen.values(),
                            key=lambda p: (subset_rank(p[0]), subset_rank(p[1])),
                        )
                        counterexample = {
                            "op": op,
                            "classes": [cx.id, cy.id],
                            "representatives": [
                                [list(canon(a)), list(canon(b))] for a, b in pairs
                            ],
                            "result_classes": sorted(
                                (r if r is not None else UNDEF) for r in seen
                            ),
                        }
                        done = True
                        break
                if done:
                    break
        verdicts.append(
            AuditVerdict(
                claim=f"WD-{op}",
                scope=scope,
                status="verified" if counterexample is None else "refuted",
                counterexample=counterexample,
            )
        )
    return verdicts
