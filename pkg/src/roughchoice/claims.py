"""Executable checks for every enumerated claim, with sweeps and searches.

Each registered claim maps to one check procedure that yields instances in
a deterministic order (subsets by rank, classes by id, spaces by size then
relation encoding), so the first refuting instance found is minimal within
the swept scope.  Weak equality ranges over points where both sides are
defined; any other predicate consuming an undefined value is false.

Readings fixed here and flagged in report headers:
  * "y != L0(y) != U0(y)" is read as the conjunction of the two
    inequalities, with an inequality against an undefined value false.
  * the triple clause in the two-element-set characterization is read as
    "for all classes a, b, c strictly between 0 and x, at least two
    coincide".
  * "the class corresponds to a set containing a two-element set in no
    block" is read as: every member contains such a pair.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional

from . import approx, tarski
from .approx import EmptyCoverPolicy
from .quotient import QuotientAlgebra, is_union_of_disjoint_blocks, weq
from .reports import AuditVerdict, decode_space, encode_space
from .spaces import ToleranceSpace, build_space, canon, enumerate_blocks, subset_rank

# Instance = (detail, ok) with ok None meaning the instance is vacuous.
Instance = tuple[dict, Optional[bool]]


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class SweepSpec:
    mode: str = "exhaustive"  # "exhaustive" | "random"
    max_n: int = 4
    seed: Optional[int] = None
    count: int = 50
    subset_policy: str = "all"  # "all" | "sampled"
    sample_size: int = 20
    empty_cover: EmptyCoverPolicy = "defined"

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if self.mode == "exhaustive" and self.max_n > 5:
            raise ValueError("exhaustive sweeps are capped at n <= 5")
        if self.mode == "random" and self.seed is None:
            raise ValueError("random sweeps require an explicit seed")


def pair_order(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def space_from_encoding(n: int, mask: int) -> ToleranceSpace:
    pairs = [p for k, p in enumerate(pair_order(n)) if mask >> k & 1]
    return build_space(n, pairs)


def enumerate_spaces(max_n: int) -> Iterator[ToleranceSpace]:
    """All tolerance spaces with n <= max_n, by size then relation encoding."""
    for n in range(1, max_n + 1):
        m = n * (n - 1) // 2
        for mask in range(2 ** m):
            yield space_from_encoding(n, mask)


def random_space(n: int, rng: _random.Random, p: float = 0.4) -> ToleranceSpace:
    pairs = [pq for pq in pair_order(n) if rng.random() < p]
    return build_space(n, pairs)


def sweep_spaces(sweep: SweepSpec) -> Iterator[ToleranceSpace]:
    if sweep.mode == "exhaustive":
        yield from enumerate_spaces(sweep.max_n)
    else:
        rng = _random.Random(sweep.seed)
        for _ in range(sweep.count):
            yield random_space(sweep.max_n, rng)


# ---------------------------------------------------------------------------
# Per-space evaluation context


class Ctx:
    """Caches the relational objects and operators of one space."""

    def __init__(self, space: ToleranceSpace, empty_cover: EmptyCoverPolicy = "defined",
                 subsets: Optional[list[frozenset[int]]] = None):
        self.space = space
        self.empty_cover = empty_cover
        self.family = enumerate_blocks(space)
        self._cache: dict = {}
        self._subsets = subsets

    def subsets(self) -> list[frozenset[int]]:
        if self._subsets is None:
            universe = sorted(range(self.space.n))
            self._subsets = [
                frozenset(c)
                for r in range(self.space.n + 1)
                for c in combinations(universe, r)
            ]
        return self._subsets

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def l0(self, a):
        return self._memo(("l0", a), lambda: approx.lower_zero(self.space, self.family, a))

    def u0(self, a):
        return self._memo(
            ("u0", a),
            lambda: approx.upper_zero(self.space, self.family, a, self.empty_cover),
        )

    def lb(self, a):
        return self._memo(("lb", a), lambda: approx.lateral_lower(self.space, self.family, a))

    def ub(self, a):
        return self._memo(("ub", a), lambda: approx.lateral_upper(self.space, self.family, a))

    def simneg(self, a):
        return self.space.universe - self.ub(a)

    def curly_vee(self, a, b):
        ua, ub_ = self.u0(a), self.u0(b)
        if ua is None or ub_ is None:
            return None
        return self.u0(ua | ub_)

    def curly_wedge(self, a, b):
        ua, ub_ = self.u0(a), self.u0(b)
        if ua is None or ub_ is None:
            return None
        return self.l0(ua & ub_)

    def is_udb(self, a) -> bool:
        return is_union_of_disjoint_blocks(self.family, a)

    def is_block(self, a) -> bool:
        return a in set(self.family.blocks)

    def has_bad_pair(self, a) -> bool:
        """a contains a two-element subset included in no block."""
        return any(
            not any(frozenset(pq) <= b for b in self.family.blocks)
            for pq in combinations(sorted(a), 2)
        )

    def bad_pairs(self) -> list[frozenset[int]]:
        return [
            frozenset(pq)
            for pq in combinations(range(self.space.n), 2)
            if not any(frozenset(pq) <= b for b in self.family.blocks)
        ]

    @cached_property
    def q(self) -> QuotientAlgebra:
        return QuotientAlgebra(self.space, self.empty_cover)


def _fs(a) -> list[int]:
    return list(canon(a))


# ---------------------------------------------------------------------------
# Claim registry


@dataclass(frozen=True)
class Claim:
    tag: str
    description: str
    check: Callable[[Ctx], Iterator[Instance]] = field(compare=False)


REGISTRY: dict[str, Claim] = {}


def claim(tag: str, description: str):
    def wrap(fn):
        REGISTRY[tag] = Claim(tag=tag, description=description, check=fn)
        return fn

    return wrap


def _leq_sets(*chain) -> bool:
    """Inclusion chain over possibly-undefined sets; undefined makes it false."""
    if any(c is None for c in chain):
        return False
    return all(a <= b for a, b in zip(chain, chain[1:]))


def _weq_sets(a, b) -> bool:
    if a is None or b is None:
        return True
    return a == b


# -- T1 group: operator laws (set level) --------------------------------------------------


@claim("T1a", "the 0-lower approximation is idempotent and within the lateral lower")
def _t1a(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        l0 = ctx.l0(a)
        ok = ctx.l0(l0) == l0 and l0 <= ctx.lb(a)
        yield {"A": _fs(a)}, ok


@claim("T1b", "the 0-lower approximation is within its own 0-upper approximation")
def _t1b(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        l0 = ctx.l0(a)
        u = ctx.u0(l0)
        yield {"A": _fs(a)}, u is not None and l0 <= u


@claim("T1c", "weak fixpoint chain of the 0-upper approximation")
def _t1c(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        u = ctx.u0(a)
        if u is None:
            yield {"A": _fs(a)}, None
            continue
        uu = ctx.u0(u)
        ok = _weq_sets(ctx.l0(u), u) and _weq_sets(u, uu)
        if uu is not None:
            ok = ok and uu <= ctx.ub(a)
        yield {"A": _fs(a)}, ok


@claim("T1d", "monotonicity of the 0-lower approximation")
def _t1d(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        for b in ctx.subsets():
            if not a <= b:
                continue
            yield {"A": _fs(a), "B": _fs(b)}, ctx.l0(a) <= ctx.l0(b)


@claim("T1e", "conditional monotonicity of the 0-upper approximation")
def _t1e(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        for b in ctx.subsets():
            if not a <= b:
                continue
            ua, ub_ = ctx.u0(a), ctx.u0(b)
            det = {"A": _fs(a), "B": _fs(b)}
            if ua is None or ub_ is None or not (a <= ua and b <= ub_):
                yield det, None
            else:
                yield det, ua <= ub_


@claim("T1f", "monotonicity of the lateral approximations")
def _t1f(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        for b in ctx.subsets():
            if not a <= b:
                continue
            ok = ctx.lb(a) <= ctx.lb(b) and ctx.ub(a) <= ctx.ub(b)
            yield {"A": _fs(a), "B": _fs(b)}, ok


@claim("T1g", "fixed points of both lower operators are unions of disjoint blocks")
def _t1g(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        if ctx.l0(a) == a == ctx.lb(a):
            yield {"A": _fs(a)}, ctx.is_udb(a)
        else:
            yield {"A": _fs(a)}, None


@claim("T1h", "the full inclusion chain across all ten operators")
def _t1h(ctx: Ctx) -> Iterator[Instance]:
    sp, fam = ctx.space, ctx.family
    for a in ctx.subsets():
        u = ctx.u0(a)
        chain = [
            ctx.l0(a),
            approx.classical_lower(sp, a),
            approx.star_lower(sp, a),
            approx.theta_lower(sp, a),
            a,
            approx.theta_upper(sp, a),
        ]
        if u is not None:
            chain.append(u)
        chain.append(approx.star_upper(sp, a))
        yield {"A": _fs(a)}, _leq_sets(*chain)


@claim("T1i", "a block is a fixed point of the 0-lower and lateral lower operators")
def _t1i(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        if ctx.is_block(a):
            yield {"A": _fs(a)}, ctx.l0(a) == a == ctx.lb(a)
        else:
            yield {"A": _fs(a)}, None


@claim("T2", "every subset is within its double lateral complement")
def _t2(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        yield {"A": _fs(a)}, a <= ctx.simneg(ctx.simneg(a))


# -- PR3 group: blockless pairs and curly operations (set level) --------------------------------


@claim("PR3a", "the join-like operation on equal arguments is the double 0-upper")
def _pr3a(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        u = ctx.u0(a)
        uu = None if u is None else ctx.u0(u)
        v = ctx.curly_vee(a, a)
        det = {"A": _fs(a)}
        if v is None or uu is None:
            yield det, None
        else:
            yield det, v == uu


@claim("PR3b", "the join-like operation lands on 0-lower fixed points")
def _pr3b(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        for b in ctx.subsets():
            v = ctx.curly_vee(a, b)
            det = {"A": _fs(a), "B": _fs(b)}
            if v is None:
                yield det, None
            else:
                yield det, ctx.l0(v) == v


@claim("PR3c", "two-element sets in no block have empty lowers and no 0-upper")
def _pr3c(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.bad_pairs():
        ok = ctx.l0(a) == frozenset() == ctx.lb(a) and ctx.u0(a) is None
        yield {"A": _fs(a)}, ok
    if not ctx.bad_pairs():
        yield {}, None


@claim("PR3d", "the lateral upper of such a pair is a union of at least two blocks")
def _pr3d(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.bad_pairs():
        yield {"A": _fs(a)}, len(ctx.family.meeting(a)) >= 2
    if not ctx.bad_pairs():
        yield {}, None


@claim("PR3e", "the meet-like operation: idempotence up to 0-upper, commutativity")
def _pr3e(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        w = ctx.curly_wedge(a, a)
        det = {"A": _fs(a)}
        yield det, _weq_sets(w, ctx.u0(a)) if w is not None or ctx.u0(a) is not None else None
    for a in ctx.subsets():
        for b in ctx.subsets():
            det = {"A": _fs(a), "B": _fs(b)}
            wab, wba = ctx.curly_wedge(a, b), ctx.curly_wedge(b, a)
            if wab is None and wba is None:
                yield det, None
            else:
                yield det, _weq_sets(wab, wba)


@claim("PR3f", "joining below an upper fixed point gives that 0-upper")
def _pr3f(ctx: Ctx) -> Iterator[Instance]:
    for a in ctx.subsets():
        for b in ctx.subsets():
            det = {"A": _fs(a), "B": _fs(b)}
            ub_ = ctx.u0(b)
            if not (a <= b) or ub_ is None or not b <= ub_:
                yield det, None
                continue
            v = ctx.curly_vee(a, b)
            if v is None:
                yield det, None
            else:
                yield det, v == ub_


# -- Quotient-level helpers -------------------------------------------------


def _leq_p(q: QuotientAlgebra, x: Optional[int], y: Optional[int]) -> bool:
    if x is None or y is None:
        return False
    return q.leq[x][y]


def _leq_chain(q: QuotientAlgebra, *xs) -> bool:
    return all(_leq_p(q, a, b) for a, b in zip(xs, xs[1:]))


def _eq_p(x: Optional[int], y: Optional[int]) -> bool:
    return x is not None and y is not None and x == y


def _neq_p(x: Optional[int], y: Optional[int]) -> bool:
    return x is not None and y is not None and x != y


def _u0u0(q: QuotientAlgebra, x: int) -> Optional[int]:
    u = q.U0[x]
    return None if u is None else q.U0[u]


def _cls_det(q: QuotientAlgebra, **ids) -> dict:
    d = {}
    for k, v in ids.items():
        d[k] = v
        d[k + "_rep"] = _fs(q.rep(v))
    return d


# -- T3 group: class characterizations ------------------------------------------------


@claim("T3a", "disjoint-block-union classes are exactly the common lower fixed points")
def _t3a(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        lhs = q.is_disjoint_union_class(x)
        rhs = q.L0[x] == x and q.Lb[x] == x
        yield _cls_det(q, x=x), lhs == rhs


@claim("T3b", "0-upper fixed points are disjoint-block-union classes")
def _t3b(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        if q.U0[x] == x:
            yield _cls_det(q, x=x), q.is_disjoint_union_class(x)
        else:
            yield _cls_det(q, x=x), None


@claim("T3c", "single-block classes are fixed by all three non-lateral-upper operators")
def _t3c(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        if q.is_single_block_class(x):
            ok = q.L0[x] == x and q.U0[x] == x and q.Lb[x] == x
            yield _cls_det(q, x=x), ok
        else:
            yield _cls_det(q, x=x), None


def _t3d_premise(q: QuotientAlgebra, x: int) -> bool:
    if not (q.L0[x] == x and q.U0[x] == x):
        return False
    return all(
        _neq_p(y, q.L0[y]) and _neq_p(q.L0[y], q.U0[y])
        for y in range(len(q))
        if q.lneq(y, x)
    )


@claim("T3d", "single-block classes via strictly-below classes moving under both operators")
def _t3d(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        yield _cls_det(q, x=x), _t3d_premise(q, x) == q.is_single_block_class(x)


def _t3e_premise(q: QuotientAlgebra, x: int) -> bool:
    if not (q.L0[x] == x and q.U0[x] == x):
        return False
    return all(
        q.lneq(q.L0[y], q.L0[x]) for y in range(len(q)) if q.lneq(y, x)
    )


@claim("T3e", "single-block classes via strict 0-lower monotonicity below")
def _t3e(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        yield _cls_det(q, x=x), _t3e_premise(q, x) == q.is_single_block_class(x)


@claim("T3f", "classes with no 0-upper and degenerate 0-lower contain a blockless pair")
def _t3f(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        premise = (
            not q.is_single_block_class(x)
            and (q.L0[x] == q.zero or q.is_single_block_class(q.L0[x]))
            and q.U0[x] is None
        )
        if not premise:
            yield _cls_det(q, x=x), None
            continue
        ok = all(ctx.has_bad_pair(m) for m in q.classes[x].members)
        yield _cls_det(q, x=x), ok


@claim("T3g", "complement of the 0-upper is antitone against the 0-lower")
def _t3g(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        if not q.IU[x]:
            yield _cls_det(q, x=x), None
            continue
        yield _cls_det(q, x=x), _leq_p(q, q.ominus[x], q.ominus[q.L0[x]])


# -- T4 group: class-level operator laws ------------------------------------------------


def _aer_items(q: QuotientAlgebra):
    """Shared single-variable and pair checks used by the T4 group and the axiom suite."""
    return q


@claim("T4a", "weak commutativity and weak idempotence of the curly operations")
def _t4a(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = weq(q.curlyvee[x][x], _u0u0(q, x)) and weq(q.curlywedge[x][x], q.U0[x])
        yield _cls_det(q, x=x), ok
    for x in range(len(q)):
        for y in range(len(q)):
            ok = weq(q.curlyvee[x][y], q.curlyvee[y][x]) and weq(
                q.curlywedge[x][y], q.curlywedge[y][x]
            )
            yield _cls_det(q, x=x, y=y), ok


@claim("T4b", "lower chain below the element; defined 0-upper above the element")
def _t4b(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = _leq_chain(q, q.L0[x], q.Lb[x], x, q.Ub[x])
        if q.IU[x]:
            ok = ok and _leq_p(q, x, q.U0[x])
        yield _cls_det(q, x=x), ok


@claim("T4c", "0-lower idempotent; defined 0-upper below its iterate")
def _t4c(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = q.L0[q.L0[x]] == q.L0[x]
        if q.IU[x]:
            ok = ok and _leq_p(q, q.U0[x], _u0u0(q, x))
        yield _cls_det(q, x=x), ok


@claim("T4d", "lateral lower fixes 0-lower outputs; composite below lateral lower")
def _t4d(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = q.Lb[q.L0[x]] == q.L0[x] and _leq_p(q, q.L0[q.Lb[x]], q.Lb[x])
        yield _cls_det(q, x=x), ok


@claim("T4e", "lateral lower idempotent; 0-lower fixes defined 0-upper outputs")
def _t4e(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = q.Lb[q.Lb[x]] == q.Lb[x]
        if q.IU[x]:
            ok = ok and _eq_p(q.L0[q.U0[x]], q.U0[x])
        yield _cls_det(q, x=x), ok


@claim("T4f", "0-lower below its 0-upper; lateral upper below its iterate")
def _t4f(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = _leq_p(q, q.L0[x], q.U0[q.L0[x]]) and _leq_p(
            q, q.Ub[x], q.Ub[q.Ub[x]]
        )
        yield _cls_det(q, x=x), ok


@claim("T4g", "the guarded five-step upper chain")
def _t4g(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        if not q.IU[x]:
            yield _cls_det(q, x=x), None
            continue
        u = q.U0[x]
        ok = _leq_chain(q, x, u, q.Ub[x], q.Ub[u], q.Ub[q.Ub[x]])
        yield _cls_det(q, x=x), ok


@claim("T4h", "order monotonicity of 0-lower and both lateral operators")
def _t4h(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        for y in range(len(q)):
            det = _cls_det(q, x=x, y=y)
            if not q.leq[x][y]:
                yield det, None
                continue
            ok = (
                q.leq[q.L0[x]][q.L0[y]]
                and q.leq[q.Ub[x]][q.Ub[y]]
                and q.leq[q.Lb[x]][q.Lb[y]]
            )
            yield det, ok


@claim("T4i", "guarded order monotonicity of the 0-upper")
def _t4i(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        for y in range(len(q)):
            det = _cls_det(q, x=x, y=y)
            if not (q.leq[x][y] and q.IU[x]):
                yield det, None
                continue
            yield det, _leq_p(q, q.U0[x], q.U0[y])


@claim("T4j", "comparable defined pairs collapse the four binary operations")
def _t4j(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        for y in range(len(q)):
            det = _cls_det(q, x=x, y=y)
            if not (q.leq[x][y] and q.IU[x] and q.IU[y]):
                yield det, None
                continue
            ok = (
                _eq_p(q.curlywedge[x][y], q.U0[x])
                and _eq_p(q.owedge[x][y], q.U0[x])
                and _eq_p(q.curlyvee[x][y], q.U0[y])
                and _eq_p(q.ovee[x][y], q.U0[y])
            )
            yield det, ok


@claim("T4k", "guarded monotonicity of the meet-like operation")
def _t4k(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    n = len(q)
    for x in range(n):
        for y in range(n):
            for a in range(n):
                for b in range(n):
                    det = {"x": x, "y": y, "a": a, "b": b}
                    if not (
                        q.IU[x] and q.IU[y] and q.IU[a] and q.IU[b]
                        and q.leq[x][y] and q.leq[a][b]
                    ):
                        yield det, None
                        continue
                    yield det, _leq_p(q, q.curlywedge[x][a], q.curlywedge[y][b])


@claim("T4l", "guarded monotonicity of the join-like operation")
def _t4l(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    n = len(q)
    for x in range(n):
        for y in range(n):
            for a in range(n):
                for b in range(n):
                    det = {"x": x, "y": y, "a": a, "b": b}
                    ova, ovb = q.ovee[x][a], q.ovee[y][b]
                    if not (
                        q.IU[x] and q.IU[y] and q.IU[a] and q.IU[b]
                        and ova is not None and q.IU[ova]
                        and ovb is not None and q.IU[ovb]
                        and q.leq[x][y] and q.leq[a][b]
                    ):
                        yield det, None
                        continue
                    yield det, _leq_p(q, q.curlyvee[x][a], q.curlyvee[y][b])


def _t_characterization(q: QuotientAlgebra, x: int) -> bool:
    n = len(q)
    if q.IU[x]:
        return False
    if q.s_map[q.Ub[x]] != q.zero:
        return False
    if not q.lneq(q.L0[x], x):
        return False
    if any(q.t_map[y] != q.zero for y in range(n) if q.lneq(y, x)):
        return False
    between = [a for a in range(n) if q.lneq(q.zero, a) and q.lneq(a, x)]
    for a in between:
        for b in between:
            for c in between:
                if not (a == b or b == c or c == a):
                    return False
    return True


@claim("T4m", "characterization of blockless-pair classes")
def _t4m(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        yield _cls_det(q, x=x), (q.t_map[x] == x) == _t_characterization(q, x)


@claim("T4n", "guarded exchange of the two negations")
def _t4n(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        if not q.IU[x]:
            yield _cls_det(q, x=x), None
            continue
        lhs = q.simneg[q.ominus[x]]
        rhs = q.ominus[q.simneg[x]]
        yield _cls_det(q, x=x), _leq_p(q, lhs, rhs)


@claim("T4o", "lateral negation antitone against 0-lower; bounds swap")
def _t4o(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = (
            q.leq[q.simneg[x]][q.simneg[q.L0[x]]]
            and q.simneg[q.zero] == q.one
            and q.simneg[q.one] == q.zero
        )
        yield _cls_det(q, x=x), ok


@claim("T4p", "double lateral negation above; guarded 0-upper antitony")
def _t4p(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = q.leq[x][q.simneg[q.simneg[x]]]
        if q.IU[x]:
            ok = ok and q.leq[q.simneg[q.U0[x]]][q.simneg[x]]
        yield _cls_det(q, x=x), ok


@claim("T4q", "lateral negation of the lateral upper below the negations")
def _t4q(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = q.leq[q.simneg[q.Ub[x]]][q.simneg[x]]
        if q.IU[x]:
            ok = ok and _leq_p(q, q.simneg[q.Ub[x]], q.simneg[q.U0[x]])
        yield _cls_det(q, x=x), ok


@claim("T4r", "lateral negation chain; guarded sharp-negation antitony")
def _t4r(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = _leq_chain(q, q.simneg[x], q.simneg[q.Lb[x]], q.simneg[q.L0[x]])
        if q.IN[x]:
            ok = ok and _leq_p(q, q.ominus[x], q.ominus[q.L0[x]])
        yield _cls_det(q, x=x), ok


@claim("T4s", "doubly guarded negation exchange; sharp bounds")
def _t4s(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = True
        if q.IU[q.simneg[x]] and q.IU[x]:
            ok = _leq_p(q, q.simneg[q.ominus[x]], q.ominus[q.simneg[x]])
        ok = ok and _eq_p(q.ominus[q.zero], q.one) and not q.IN[q.one]
        yield _cls_det(q, x=x), ok


@claim("T4t", "guarded sharp-negation laws for the approximation operators")
def _t4t(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = True
        if q.IU[x]:
            ok = ok and _leq_p(q, q.ominus[x], q.ominus[q.L0[x]])
        if q.IN[x]:
            ok = ok and _leq_p(q, q.ominus[q.Ub[x]], q.ominus[x])
            ok = ok and (
                q.U0[x] is not None
                and _eq_p(q.ominus[q.U0[x]], q.ominus[x])
            )
        yield _cls_det(q, x=x), ok


def _s_characterization(q: QuotientAlgebra, x: int) -> bool:
    if not (q.L0[x] == x and q.U0[x] == x):
        return False
    return all(
        q.lneq(q.L0[y], q.L0[x]) for y in range(len(q)) if q.lneq(y, x)
    )


@claim("T4u", "characterization of single-block classes by the selector predicate")
def _t4u(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        char = _s_characterization(q, x)
        ok = (q.s_map[x] == x) == char and (char or q.s_map[x] == q.zero)
        yield _cls_det(q, x=x), ok


@claim("T4v", "total join commutative and idempotent; weak law for the defined join")
def _t4v(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        yield _cls_det(q, x=x), q.sqcup[x][x] == x
    for x in range(len(q)):
        for y in range(len(q)):
            ok = q.sqcup[x][y] == q.sqcup[y][x]
            rhs = (
                None
                if q.U0[x] is None or q.U0[y] is None
                else q.sqcup[q.U0[x]][q.U0[y]]
            )
            ok = ok and weq(q.ovee[x][y], rhs)
            yield _cls_det(q, x=x, y=y), ok


@claim("T4w", "join is an upper bound; lateral upper is superadditive")
def _t4w(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        for y in range(len(q)):
            j = q.sqcup[x][y]
            ok = q.leq[q.sqcup[q.Ub[x]][q.Ub[y]]][q.Ub[j]]
            if q.leq[x][y]:
                ok = ok and q.leq[x][j] and q.leq[y][j]
            yield _cls_det(q, x=x, y=y), ok


# -- Implication-like operations --------------------------------------------


@claim("IMPa", "defined self-implication is the top; 0-upper below top-implication")
def _impa(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        if not q.IU[x]:
            yield _cls_det(q, x=x), None
            continue
        ok = _eq_p(q.rtail[x][x], q.one) and _leq_p(q, q.U0[x], q.rtail[q.one][x])
        yield _cls_det(q, x=x), ok


@claim("IMPb", "defined implication weakening; implication into the bottom")
def _impb(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        for y in range(len(q)):
            det = _cls_det(q, x=x, y=y)
            if not (q.IU[x] and q.IU[y]):
                yield det, None
                continue
            inner = q.rtail[y][x]
            outer = None if inner is None else q.rtail[x][inner]
            ok = _leq_p(q, q.U0[x], outer) and _eq_p(q.rtail[x][q.zero], q.ominus[x])
            yield det, ok


@claim("IMPc", "lateral implication: reflexivity, top weakening, bottom negation")
def _impc(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = (
            q.rsquig[x][x] == q.one
            and q.leq[x][q.rsquig[q.one][x]]
            and q.rsquig[x][q.zero] == q.simneg[x]
        )
        yield _cls_det(q, x=x), ok


@claim("IMPd", "lateral implication distributes over join on the right")
def _impd(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    n = len(q)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = q.sqcup[q.rsquig[x][y]][q.rsquig[x][z]]
                rhs = q.rsquig[x][q.sqcup[y][z]]
                yield {"x": x, "y": y, "z": z}, q.leq[lhs][rhs]


@claim("IMPe", "lateral implication antidistributes over join on the left")
def _impe(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    n = len(q)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = q.sqcap[q.rsquig[x][z]][q.rsquig[y][z]]
                rhs = q.rsquig[q.sqcup[x][y]][z]
                yield {"x": x, "y": y, "z": z}, q.leq[lhs][rhs]


# -- AER axiom groups -------------------------------------------------------


def _register_aer():
    """Register AER01..AER21 over the concrete quotient of a space."""

    def a01(ctx: Ctx) -> Iterator[Instance]:
        yield from _t4a(ctx)

    def a02(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        for x in range(len(q)):
            ok = _leq_chain(q, q.L0[x], q.Lb[x], x) and q.leq[x][q.Ub[x]]
            if q.IU[x]:
                ok = ok and _leq_chain(q, x, q.U0[x], _u0u0(q, x))
            yield _cls_det(q, x=x), ok

    def a03(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        for x in range(len(q)):
            ok = (
                q.L0[q.L0[x]] == q.L0[x]
                and q.Lb[q.L0[x]] == q.L0[x]
                and _leq_p(q, q.L0[q.Lb[x]], q.Lb[x])
            )
            yield _cls_det(q, x=x), ok

    def a04(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        for x in range(len(q)):
            ok = q.Lb[q.Lb[x]] == q.Lb[x] and _leq_p(q, q.L0[x], q.U0[q.L0[x]])
            if q.IU[x]:
                ok = ok and _eq_p(q.L0[q.U0[x]], q.U0[x])
            yield _cls_det(q, x=x), ok

    def a05(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        for x in range(len(q)):
            ok = q.leq[q.Ub[x]][q.Ub[q.Ub[x]]]
            if q.IU[x]:
                u = q.U0[x]
                ok = ok and _leq_chain(q, x, u, q.Ub[x], q.Ub[u], q.Ub[q.Ub[x]])
            yield _cls_det(q, x=x), ok

    def a12(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        for x in range(len(q)):
            ok = (
                q.leq[q.simneg[x]][q.simneg[q.L0[x]]]
                and q.simneg[q.zero] == q.one
                and q.simneg[q.one] == q.zero
            )
            if q.IU[x]:
                ok = ok and _leq_p(q, q.simneg[q.ominus[x]], q.ominus[q.simneg[x]])
            yield _cls_det(q, x=x), ok

    def a13(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        for x in range(len(q)):
            dd = q.simneg[q.simneg[x]]
            ok = True
            if q.IU[dd]:
                ok = q.leq[x][dd]
            if q.IU[x]:
                ok = ok and q.leq[q.simneg[q.U0[x]]][q.simneg[x]]
            yield _cls_det(q, x=x), ok

    def a18(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        n = len(q)
        for x in range(n):
            atom = all(
                y == q.zero or y == x
                for y in range(n)
                if q.leq[q.zero][y] and q.leq[y][x]
            )
            det = _cls_det(q, x=x)
            if not atom:
                yield det, None
                continue
            ok = any(q.s_map[z] == z and z != q.zero and q.leq[x][z] for z in range(n))
            yield det, ok

    def a19(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        n = len(q)
        for x in range(n):
            for y in range(n):
                det = _cls_det(q, x=x, y=y)
                if q.s_map[x] != x or x == q.zero:
                    yield det, None
                    continue
                ok = True
                if q.lneq(x, y):
                    ok = ok and q.s_map[y] == q.zero
                if q.lneq(y, x):
                    ok = ok and q.s_map[y] == q.zero
                yield det, ok

    def a20(ctx: Ctx) -> Iterator[Instance]:
        q = ctx.q
        for x in range(len(q)):
            yield _cls_det(q, x=x), q.leq[q.zero][x] and q.leq[x][q.one] and q.sqcup[x][x] == x
        for x in range(len(q)):
            for y in range(len(q)):
                yield _cls_det(q, x=x, y=y), q.sqcup[x][y] == q.sqcup[y][x]

    table = {
        "AER01": (a01, "weak laws of the curly operations"),
        "AER02": (a02, "order placement of the four approximation operators"),
        "AER03": (a03, "0-lower idempotence and lateral-lower interaction"),
        "AER04": (a04, "lateral-lower idempotence and 0-upper fixed points"),
        "AER05": (a05, "lateral-upper growth and the guarded upper chain"),
        "AER06": (lambda ctx: _t4j(ctx), "collapse on comparable defined pairs"),
        "AER07": (lambda ctx: _t4k(ctx), "guarded meet monotonicity"),
        "AER08": (lambda ctx: _t4l(ctx), "guarded join monotonicity"),
        "AER09": (lambda ctx: _t4h(ctx), "order monotonicity of the total operators"),
        "AER10": (lambda ctx: _t4i(ctx), "guarded 0-upper monotonicity"),
        "AER11": (lambda ctx: _t4m(ctx), "blockless-pair characterization"),
        "AER12": (a12, "negation exchange and bound swaps"),
        "AER13": (a13, "guarded double negation laws"),
        "AER14": (lambda ctx: _t4q(ctx), "lateral negation of the lateral upper"),
        "AER15": (lambda ctx: _t4r(ctx), "negation chains"),
        "AER16": (lambda ctx: _t4s(ctx), "doubly guarded exchange; sharp bounds"),
        "AER17": (lambda ctx: _t4t(ctx), "guarded sharp-negation laws"),
        "AER18": (a18, "atoms sit below some block class"),
        "AER19": (a19, "block classes form an antichain"),
        "AER20": (a20, "bounds and join laws"),
        "AER21": (lambda ctx: _t4w(ctx), "join upper bound and superadditivity"),
    }
    for tag, (fn, desc) in table.items():
        REGISTRY[tag] = Claim(tag=tag, description=desc, check=fn)


_register_aer()


# -- Derived-definition consistency -----------------------------------------


@claim("DRV1", "the defined join matches the join of the 0-uppers, definedness included")
def _drv1(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        for y in range(len(q)):
            rhs_defined = q.U0[x] is not None and q.U0[y] is not None
            lhs = q.ovee[x][y]
            ok = (lhs is not None) == rhs_defined
            if ok and rhs_defined:
                ok = lhs == q.sqcup[q.U0[x]][q.U0[y]]
            yield _cls_det(q, x=x, y=y), ok


@claim("DRV2", "strict order is the order minus equality")
def _drv2(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        for y in range(len(q)):
            ok = q.lneq(x, y) == (q.leq[x][y] and x != y)
            yield _cls_det(q, x=x, y=y), ok


@claim("DRV3", "curly operations and sharp-definedness match their defining equations")
def _drv3(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        ok = q.IN[x] == (q.ominus[x] is not None)
        yield _cls_det(q, x=x), ok
    for x in range(len(q)):
        for y in range(len(q)):
            ov, ow = q.ovee[x][y], q.owedge[x][y]
            ok = weq(q.curlyvee[x][y], None if ov is None else q.U0[ov])
            ok = ok and weq(q.curlywedge[x][y], None if ow is None else q.L0[ow])
            yield _cls_det(q, x=x, y=y), ok


@claim("DRV4", "the block-class selector matches its defining equivalence")
def _drv4(ctx: Ctx) -> Iterator[Instance]:
    yield from _t4u(ctx)


@claim("DRV5", "0-upper definedness matches its predicate")
def _drv5(ctx: Ctx) -> Iterator[Instance]:
    q = ctx.q
    for x in range(len(q)):
        yield _cls_det(q, x=x), q.IU[x] == (q.U0[x] is not None)


# -- Section-5 and artifact-level claims ------------------------------------


@claim("TAR1", "the block-complement carrier is closed under the implication")
def _tar1(ctx: Ctx) -> Iterator[Instance]:
    ts = tarski.build_structure(ctx.space)
    v = tarski.closure_audit(ts)
    yield v.counterexample or {}, v.status == "verified"


@claim("TAR2", "profile classes of the carrier split into the two claimed types")
def _tar2(ctx: Ctx) -> Iterator[Instance]:
    out = tarski.sigma_classify_delta(ctx.space)
    v = out["verdict"]
    yield v.counterexample or {}, v.status == "verified"


@claim("COH", "the selector is lattice-coherent on all cone pairs")
def _coh(ctx: Ctx) -> Iterator[Instance]:
    if len(ctx.family) > 12:
        yield {"skipped": "block family larger than 12"}, None
        return
    v = approx.coherence_audit(ctx.space, ctx.family)
    yield v.counterexample or {}, v.status == "verified"


@claim("REP", "the concrete quotient satisfies the whole abstract axiom suite")
def _rep(ctx: Ctx) -> Iterator[Instance]:
    for tag in AER_TAGS + DRV_TAGS:
        refuted = None
        nonvacuous = False
        for det, ok in REGISTRY[tag].check(ctx):
            if ok is False:
                refuted = det
                break
            if ok is True:
                nonvacuous = True
        if refuted is not None:
            yield {"axiom": tag, **refuted}, False
        elif nonvacuous:
            yield {"axiom": tag}, True
        else:
            yield {"axiom": tag}, None


T1_TAGS = [f"T1{c}" for c in "abcdefghi"]
PR3_TAGS = [f"PR3{c}" for c in "abcdef"]
T3_TAGS = [f"T3{c}" for c in "abcdefg"]
T4_TAGS = [f"T4{c}" for c in "abcdefghijklmnopqrstuvw"]
IMP_TAGS = [f"IMP{c}" for c in "abcde"]
AER_TAGS = [f"AER{i:02d}" for i in range(1, 22)]
DRV_TAGS = [f"DRV{i}" for i in range(1, 6)]
ITEM_TAGS = (
    T1_TAGS + ["T2"] + PR3_TAGS + T3_TAGS + T4_TAGS + IMP_TAGS + AER_TAGS
    + DRV_TAGS + ["TAR1", "TAR2"]
)
ALL_TAGS = ITEM_TAGS + ["COH", "REP"]

#: Claims whose refutation at desk scale is an expected, documented outcome
#: rather than a tool failure.  Frozen from the exhaustive n<=4 audit under
#: the default empty-cover policy; most trace back to the deterministic
#: selector (monotonicity-style claims) or to the induced class order.
KNOWN_DELICATE: frozenset[str] = frozenset(
    {
        "T1c", "T1d", "T1e", "T1h",
        "PR3b", "PR3c", "PR3e", "PR3f",
        "T3a", "T3c", "T3d", "T3e", "T3g",
        "T4a", "T4b", "T4e", "T4f", "T4g", "T4h", "T4i", "T4j", "T4k",
        "T4l", "T4m", "T4n", "T4o", "T4p", "T4r", "T4s", "T4t", "T4u",
        "T4w",
        "IMPa", "IMPb", "IMPc",
        "AER01", "AER02", "AER04", "AER05", "AER06", "AER07", "AER08",
        "AER09", "AER10", "AER11", "AER12", "AER13", "AER15", "AER16",
        "AER17", "AER20", "AER21",
        "DRV4",
        "REP",
    }
)


def registry_selftest() -> dict:
    """Counts per claim group; raises when the registry drifts from the map."""
    missing = [t for t in ALL_TAGS if t not in REGISTRY]
    extra = [t for t in REGISTRY if t not in ALL_TAGS]
    if missing or extra:
        raise AssertionError(f"registry drift: missing={missing} extra={extra}")
    return {
        "T1_items": len(T1_TAGS),
        "T2_items": 1,
        "PR3_items": len(PR3_TAGS),
        "T3_items": len(T3_TAGS),
        "T4_items": len(T4_TAGS),
        "IMP_items": len(IMP_TAGS),
        "AER_groups": len(AER_TAGS),
        "DRV_items": len(DRV_TAGS),
        "TAR_items": 2,
        "item_total": len(ITEM_TAGS),
        "artifact_checks": 2,
        "total": len(ALL_TAGS),
    }


# ---------------------------------------------------------------------------
# Runners

#: Class-level claims need the quotient; skipped for spaces above this size.
QUOTIENT_CLAIMS = frozenset(
    T3_TAGS + T4_TAGS + IMP_TAGS + AER_TAGS + DRV_TAGS + ["REP"]
)


def _ctx_for(space: ToleranceSpace, sweep: SweepSpec) -> Ctx:
    subsets = None
    if sweep.subset_policy == "sampled":
        rng = _random.Random((sweep.seed or 0) ^ hash(tuple(space.pairs())) ^ space.n)
        universe = list(range(space.n))
        seen = {frozenset(), frozenset(universe)}
        for _ in range(sweep.sample_size):
            seen.add(frozenset(v for v in universe if rng.random() < 0.5))
        subsets = sorted(seen, key=subset_rank)
    return Ctx(space, sweep.empty_cover, subsets)


def run_claim(tag: str, sweep: SweepSpec) -> AuditVerdict:
    """Evaluate one claim over a sweep; the first refutation found is minimal
    within exhaustive scope."""
    if tag not in REGISTRY:
        raise KeyError(f"unknown claim {tag!r}")
    c = REGISTRY[tag]
    scope = _scope_string(sweep)
    nonvacuous = False
    for space in sweep_spaces(sweep):
        if tag in QUOTIENT_CLAIMS and space.n > 12:
            continue
        ctx = _ctx_for(space, sweep)
        for det, ok in c.check(ctx):
            if ok is False:
                return AuditVerdict(
                    claim=tag,
                    scope=scope,
                    status="refuted",
                    counterexample={"space": encode_space(space), "instance": det},
                )
            if ok is True:
                nonvacuous = True
    return AuditVerdict(
        claim=tag, scope=scope, status="verified" if nonvacuous else "vacuous"
    )


def _scope_string(sweep: SweepSpec) -> str:
    if sweep.mode == "exhaustive":
        return f"exhaustive, all spaces with n <= {sweep.max_n}"
    return (
        f"random, {sweep.count} spaces at n = {sweep.max_n}, seed {sweep.seed}, "
        f"subsets {sweep.subset_policy}"
    )


def run_audit(tags: Iterable[str], sweep: SweepSpec) -> list[AuditVerdict]:
    return [run_claim(t, sweep) for t in tags]


def run_aer_suite(space: ToleranceSpace, empty_cover: EmptyCoverPolicy = "defined") -> list[AuditVerdict]:
    """Per-axiom verdicts of the abstract suite on the concrete quotient of
    one space, closing with the conjunction verdict."""
    ctx = Ctx(space, empty_cover)
    verdicts = []
    scope = f"quotient of one space, n={space.n}"
    for tag in AER_TAGS + DRV_TAGS:
        nonvacuous = False
        counterexample = None
        for det, ok in REGISTRY[tag].check(ctx):
            if ok is False:
                counterexample = {"space": encode_space(space), "instance": det}
                break
            if ok is True:
                nonvacuous = True
        if counterexample is not None:
            status = "refuted"
        elif nonvacuous:
            status = "verified"
        else:
            status = "vacuous"
        verdicts.append(
            AuditVerdict(claim=tag, scope=scope, status=status, counterexample=counterexample)
        )
    refuted = [v for v in verdicts if v.status == "refuted"]
    verdicts.append(
        AuditVerdict(
            claim="REP",
            scope=scope,
            status="refuted" if refuted else "verified",
            counterexample=refuted[0].counterexample if refuted else None,
            notes="conjunction over the axiom suite and derived definitions",
        )
    )
    return verdicts


def counterexample_search(tags: list[str], sweep: SweepSpec) -> dict:
    """Per-claim minimal counterexamples with self-contained replay payloads."""
    results = {}
    for tag in tags:
        v = run_claim(tag, sweep)
        entry = {"status": v.status, "scope": v.scope}
        if v.status == "refuted":
            entry["replay"] = {"claim": tag, **v.counterexample}
        results[tag] = entry
    return {"claims": results}


def replay(payload: dict, empty_cover: EmptyCoverPolicy = "defined") -> bool:
    """Re-evaluate a stored counterexample through the public operators.

    True iff the recorded instance still refutes the claim on the decoded
    space.
    """
    space = decode_space(payload["space"])
    ctx = Ctx(space, empty_cover)
    target = payload["instance"]
    for det, ok in REGISTRY[payload["claim"]].check(ctx):
        if det == target:
            return ok is False
    return False
