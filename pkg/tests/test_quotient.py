"""Profile quotient: classes, order, tables, predicates, well-definedness."""

import pytest

from roughchoice import build_quotient, well_definedness_audit
from roughchoice.quotient import (
    QuotientAlgebra,
    is_union_of_disjoint_blocks,
    weq,
)
from roughchoice.reports import canonical_json
from roughchoice.spaces import build_space, enumerate_blocks

from conftest import spaces_up_to


P3_PROFILES = {
    (): ((), (), (), ()),
    (0,): ((), (0, 1), (), (0, 1)),
    (1,): ((), (0, 1), (), (0, 1, 2)),
    (2,): ((), (1, 2), (), (1, 2)),
    (0, 1): ((0, 1), (0, 1), (0, 1), (0, 1, 2)),
    (0, 2): ((), None, (), (0, 1, 2)),
    (1, 2): ((1, 2), (1, 2), (1, 2), (0, 1, 2)),
    (0, 1, 2): ((0, 1), None, (0, 1, 2), (0, 1, 2)),
}


def test_p3_has_eight_singleton_classes(p3):
    q = build_quotient(p3)
    assert len(q) == 8
    assert all(len(c.members) == 1 for c in q.classes)
    got = {tuple(sorted(c.members[0])): c.profile.key() for c in q.classes}
    assert got == P3_PROFILES


def test_p3_order_and_tables(p3):
    q = build_quotient(p3)
    c = lambda *xs: q.class_of[frozenset(xs)]
    assert q.zero == c() and q.one == c(0, 1, 2)
    assert q.leq[c(0)][c(0, 1)]
    assert not q.leq[c(0)][c(2)]
    assert q.U0[c(0, 2)] is None
    assert not q.IU[c(0, 2)]
    assert q.IU[c(0)]
    # fixed points and idempotence
    assert all(q.L0[q.L0[x]] == q.L0[x] for x in range(len(q)))
    assert q.simneg[c(0)] == c(2)
    assert q.curlywedge[c(0)][c(0)] == q.U0[c(0)] == c(0, 1)
    assert all(q.rsquig[x][x] == q.one for x in range(len(q)))
    assert q.rtail[c(0)][c(0)] == q.one
    assert q.s_map[c(0, 1)] == c(0, 1)
    assert q.s_map[c(0, 2)] == q.zero
    assert q.t_map[c(0, 2)] == c(0, 2)
    assert q.t_map[c(0, 1)] == q.zero


def test_complete_pair_space_has_three_classes(complete2):
    q = build_quotient(complete2)
    assert len(q) == 3
    merged = next(c for c in q.classes if len(c.members) == 2)
    assert set(merged.members) == {frozenset({0}), frozenset({1})}
    assert merged.profile.key() == ((), (0, 1), (), (0, 1))


def test_singleton_space(singleton):
    q = build_quotient(singleton)
    assert len(q) == 2
    assert q.zero != q.one
    assert q.IU[q.one]  # the universe is its own block


def test_quotient_size_cap():
    with pytest.raises(ValueError):
        QuotientAlgebra(build_space(16, []))


def test_weq():
    assert weq(None, 3) and weq(3, None) and weq(None, None)
    assert weq(2, 2) and not weq(2, 3)


def test_is_union_of_disjoint_blocks(p3):
    family = enumerate_blocks(p3)
    assert is_union_of_disjoint_blocks(family, frozenset())
    assert is_union_of_disjoint_blocks(family, frozenset({0, 1}))
    assert not is_union_of_disjoint_blocks(family, frozenset({0}))
    assert not is_union_of_disjoint_blocks(family, frozenset({0, 1, 2}))


def test_leq_matches_slotwise_oracle():
    """leq is slotwise inclusion, with the u0 slot compared only when
    present on both sides.  (That reading makes it reflexive but not
    transitive in general; transitivity is a claim for the auditor.)"""
    for space in spaces_up_to(3):
        q = build_quotient(space)
        for x in range(len(q)):
            assert q.leq[x][x]
            assert q.leq[q.zero][x]
            assert not q.lneq(x, x)
            px = q.classes[x].profile
            for y in range(len(q)):
                py = q.classes[y].profile
                expect = (
                    px.l0 <= py.l0
                    and px.lateral_l <= py.lateral_l
                    and px.lateral_u <= py.lateral_u
                    and (
                        px.u0 is None or py.u0 is None or px.u0 <= py.u0
                    )
                )
                assert q.leq[x][y] == expect


def test_well_definedness_refuted_on_complete_pair(complete2):
    verdicts = well_definedness_audit(complete2)
    by_op = {v.claim: v for v in verdicts}
    v = by_op["WD-sqcup"]
    assert v.status == "refuted"
    reps = v.counterexample["representatives"]
    assert [[0], [0]] in reps and [[0], [1]] in reps
    # the audited unary operators cannot disagree on a two-member class here
    assert by_op["WD-L0"].status == "verified"


def test_well_definedness_verified_on_p3(p3):
    # sigma is the identity on P3, so every operation is trivially well defined
    assert all(v.status == "verified" for v in well_definedness_audit(p3))


def test_quotient_rebuild_is_byte_identical(p3, complete2):
    for space in (p3, complete2):
        a = canonical_json(build_quotient(space).to_dict())
        b = canonical_json(build_quotient(space).to_dict())
        assert a == b


def test_export_shape(p3):
    d = build_quotient(p3).to_dict()
    n = len(d["classes"])
    assert len(d["leq"]) == n and all(len(r) == n for r in d["leq"])
    for key in ("sqcup", "ovee", "rsquig", "rtail"):
        assert len(d["ops"][key]) == n
    assert d["ops"]["U0"].count(-1) == 2  # the two u0-undefined classes
    assert d["predicates"]["IU"].count(0) == 2
