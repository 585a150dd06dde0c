"""Two-tier chain algebra: closed forms against a lexicographic model.

The oracle represents elements as pairs (tier, offset) in the lexicographic
plane: fin(k) = (0, k) and cofin(k) = (1, -k), with unit (1, 0).  Addition
truncates at the unit in the lexicographic order.  This route shares no code
with the closed forms under test.
"""

from __future__ import annotations

import pytest

from mvspectra.chang import (
    ALLCOFIN,
    COFINITE,
    FULL,
    RADICAL,
    TRUNC,
    UPCOFIN,
    UPFIN,
    ChangAlgebra,
    ChangElement,
    ChangFilter,
    ChangIdeal,
    ChangSpace,
    cofin,
    fin,
    filter_complement,
    filter_ominus_bar,
    ideal_complement,
    ideal_oplus_bar,
)
from mvspectra.errors import AlgebraError


# ---------------------------------------------------------------- lex oracle

UNIT = (1, 0)


def to_pair(u):
    return (0, u.k) if u.kind == "fin" else (1, -u.k)


def from_pair(p):
    tier, off = p
    return fin(off) if tier == 0 else cofin(-off)


def lex_add(p, q):
    s = (p[0] + q[0], p[1] + q[1])
    return UNIT if s >= UNIT else s


def lex_neg(p):
    return (1 - p[0], -p[1])


ALG = ChangAlgebra()
SPACE = ChangSpace()


def window(n):
    return ALG.elements(n)


@pytest.mark.parametrize("n", [6, 11])
def test_ops_match_lex_oracle(n):
    elems = window(n)
    for u in elems:
        assert from_pair(lex_neg(to_pair(u))) == ALG.neg(u)
        for v in elems:
            assert from_pair(lex_add(to_pair(u), to_pair(v))) == ALG.oplus(u, v)
            assert (to_pair(u) <= to_pair(v)) == ALG.leq(u, v)
            assert from_pair(max(to_pair(u), to_pair(v))) == ALG.join(u, v)
            assert from_pair(min(to_pair(u), to_pair(v))) == ALG.meet(u, v)
            # difference from the characteristic-law expansion
            diff = lex_add(lex_neg(lex_add(lex_neg(to_pair(u)), to_pair(v))), (0, 0))
            assert from_pair(diff) == ALG.ominus(u, v)


def test_frozen_arithmetic():
    assert ALG.oplus(fin(2), fin(3)) == fin(5)
    assert ALG.oplus(fin(3), cofin(5)) == cofin(2)
    assert ALG.oplus(fin(7), cofin(5)) == cofin(0)
    assert ALG.oplus(cofin(1), cofin(9)) == cofin(0)
    assert ALG.neg(fin(4)) == cofin(4)
    assert ALG.ominus(cofin(2), fin(3)) == cofin(5)
    assert ALG.ominus(fin(3), fin(1)) == fin(2)
    assert ALG.ominus(fin(1), cofin(2)) == fin(0)
    assert ALG.zero == fin(0)
    assert ALG.one == cofin(0)


def test_nmul():
    assert ALG.nmul(3, fin(2)) == fin(6)
    assert ALG.nmul(0, cofin(1)) == fin(0)
    assert ALG.nmul(2, cofin(5)) == cofin(0)


def test_element_validation():
    with pytest.raises(AlgebraError):
        ChangElement("fin", -1)
    with pytest.raises(AlgebraError):
        ChangElement("middle", 0)
    assert repr(fin(3)) == "fin(3)"
    assert repr(cofin(0)) == "cofin(0)"


def test_encode_decode_roundtrip():
    top = 100
    for u in window(10):
        assert ALG.decode(ALG.encode(u, top), top) == u


def test_bounded_axiom_check_passes():
    assert ALG.check_axioms_bounded(8) is None


def test_direct_triple_scan():
    # belt and braces: associativity and the characteristic law by brute force
    elems = window(4)
    for a in elems:
        for b in elems:
            lhs = ALG.oplus(ALG.ominus(a, b), b)
            assert lhs == ALG.oplus(ALG.ominus(b, a), a) == ALG.join(a, b)
            for c in elems:
                assert ALG.oplus(ALG.oplus(a, b), c) == ALG.oplus(a, ALG.oplus(b, c))


# ---------------------------------------------------------------- ideals

IDEAL_GRID = (
    [ChangIdeal(TRUNC, n) for n in range(5)]
    + [ChangIdeal(RADICAL)]
    + [ChangIdeal(COFINITE, m) for m in range(1, 5)]
    + [ChangIdeal(FULL)]
)
FILTER_GRID = (
    [ChangFilter(UPFIN, n) for n in range(5)]
    + [ChangFilter(ALLCOFIN)]
    + [ChangFilter(UPCOFIN, t) for t in range(5)]
)


def test_ideal_membership_spots():
    i3 = ChangIdeal(TRUNC, 3)
    assert fin(3) in i3 and fin(4) not in i3 and cofin(9) not in i3
    rad = ChangIdeal(RADICAL)
    assert fin(100) in rad and cofin(100) not in rad
    j2 = ChangIdeal(COFINITE, 2)
    assert cofin(2) in j2 and cofin(1) not in j2 and fin(50) in j2
    assert cofin(0) in ChangIdeal(FULL)


def test_ideal_traces_are_downsets():
    elems = window(9)
    for ideal in IDEAL_GRID:
        inside = [u for u in elems if u in ideal]
        for u in inside:
            for v in elems:
                if ALG.leq(v, u):
                    assert v in ideal, (ideal.label(), v)


def test_mv_ideal_flags():
    assert ChangIdeal(TRUNC, 0).is_mv()
    assert ChangIdeal(RADICAL).is_mv()
    assert not ChangIdeal(TRUNC, 1).is_mv()
    assert not ChangIdeal(COFINITE, 1).is_mv()
    # flag matches bounded addition-closure
    elems = window(9)
    for ideal in IDEAL_GRID:
        if not ideal.proper():
            continue
        inside = [u for u in elems if u in ideal]
        closed = all(ALG.oplus(a, b) in ideal for a in inside for b in inside)
        if not ideal.is_mv():
            assert not closed, ideal.label()
        else:
            assert closed, ideal.label()


def test_ideal_families_pairwise_distinct():
    elems = window(12)
    for a in IDEAL_GRID:
        for b in IDEAL_GRID:
            if a == b:
                continue
            assert any((u in a) != (u in b) for u in elems), (a.label(), b.label())


def test_complement_bijection():
    elems = window(9)
    for ideal in IDEAL_GRID:
        if not ideal.proper():
            with pytest.raises(AlgebraError):
                ideal_complement(ideal)
            continue
        filt = ideal_complement(ideal)
        for u in elems:
            assert (u in filt) == (u not in ideal), ideal.label()
        assert filter_complement(filt) == ideal
    for filt in FILTER_GRID:
        if filt.family == UPFIN and filt.param == 0:
            with pytest.raises(AlgebraError):
                filter_complement(filt)
            continue
        assert ideal_complement(filter_complement(filt)) == filt


def oplus_bar_trace_oracle(i, j, outer):
    big = window(3 * outer + 6)
    sums = {ALG.oplus(a, b) for a in big if a in i for b in big if b in j}
    return {c for c in window(outer) if any(ALG.leq(c, s) for s in sums)}


def test_ideal_oplus_bar_matches_trace_oracle():
    outer = 8
    for i in IDEAL_GRID:
        for j in IDEAL_GRID:
            got = ideal_oplus_bar(i, j)
            trace = {c for c in window(outer) if c in got}
            assert trace == oplus_bar_trace_oracle(i, j, outer), (
                i.label(),
                j.label(),
                got.label(),
            )


def ominus_bar_trace_oracle(f, i, outer):
    big = window(3 * outer + 6)
    diffs = {ALG.ominus(a, b) for a in big if a in f for b in big if b in i}
    return {c for c in window(outer) if any(ALG.leq(d, c) for d in diffs)}


def test_filter_ominus_bar_matches_trace_oracle():
    outer = 8
    for f in FILTER_GRID:
        for i in IDEAL_GRID:
            got = filter_ominus_bar(f, i)
            trace = {c for c in window(outer) if c in got}
            assert trace == ominus_bar_trace_oracle(f, i, outer), (f, i.label())


# ---------------------------------------------------------------- the space

def test_point_window_is_a_chain_in_order():
    pts = SPACE.points_bounded(3)
    assert [p.label() for p in pts] == [
        "I0", "I1", "I2", "I3", "I_omega", "J3", "J2", "J1",
    ]
    for a, p in enumerate(pts):
        for b, q in enumerate(pts):
            assert SPACE.point_leq(p, q) == (a <= b)


def test_point_order_is_inclusion():
    pts = SPACE.points_bounded(4)
    elems = window(10)
    for p in pts:
        for q in pts:
            subset = all(u in q for u in elems if u in p)
            assert SPACE.point_leq(p, q) == subset


def test_involution_frozen_and_order_reversing():
    assert SPACE.involution(ChangIdeal(TRUNC, 0)) == ChangIdeal(COFINITE, 1)
    assert SPACE.involution(ChangIdeal(TRUNC, 4)) == ChangIdeal(COFINITE, 5)
    assert SPACE.involution(ChangIdeal(RADICAL)) == ChangIdeal(RADICAL)
    assert SPACE.involution(ChangIdeal(COFINITE, 3)) == ChangIdeal(TRUNC, 2)
    pts = SPACE.points_bounded(4)
    for p in pts:
        assert SPACE.involution(SPACE.involution(p)) == p
        for q in pts:
            assert SPACE.point_leq(p, q) == SPACE.point_leq(
                SPACE.involution(q), SPACE.involution(p)
            )


def test_involution_is_negated_complement_filter():
    # membership route: u lies in i(x) exactly when neg(u) is outside x
    for p in SPACE.points_bounded(4):
        q = SPACE.involution(p)
        for u in window(10):
            assert (u in q) == (ALG.neg(u) not in p), p.label()


def test_plus_defined_iff_sum_ideal_proper():
    pts = SPACE.points_bounded(4)
    for p in pts:
        for q in pts:
            assert SPACE.plus_defined(p, q) == ideal_oplus_bar(p, q).proper()
            assert SPACE.plus_defined(p, q) == SPACE.plus_defined(q, p)


def test_plus_matches_ideal_sum_and_raises_off_domain():
    pts = SPACE.points_bounded(4)
    for p in pts:
        for q in pts:
            if SPACE.plus_defined(p, q):
                assert SPACE.plus(p, q) == ideal_oplus_bar(p, q)
                assert SPACE.plus(p, q) == SPACE.plus(q, p)
            else:
                with pytest.raises(AlgebraError):
                    SPACE.plus(p, q)


def test_plus_associativity_on_domain():
    pts = SPACE.points_bounded(3)
    for p in pts:
        for q in pts:
            if not SPACE.plus_defined(p, q):
                continue
            s = SPACE.plus(p, q)
            for r in pts:
                if not SPACE.plus_defined(s, r):
                    continue
                assert SPACE.plus_defined(q, r)
                assert SPACE.plus_defined(p, SPACE.plus(q, r))
                assert SPACE.plus(SPACE.plus(p, q), r) == SPACE.plus(
                    p, SPACE.plus(q, r)
                )


def test_plus_translation_invariance():
    pts = SPACE.points_bounded(3)
    for p in pts:
        for q1 in pts:
            for q2 in pts:
                if SPACE.point_leq(q1, q2) and SPACE.plus_defined(p, q2):
                    assert SPACE.plus_defined(p, q1)
                    assert SPACE.point_leq(SPACE.plus(p, q1), SPACE.plus(p, q2))


def test_involution_is_largest_addable():
    outer = SPACE.points_bounded(5)
    for p in SPACE.points_bounded(4):
        addable = [q for q in outer if SPACE.plus_defined(p, q)]
        best = max(
            addable,
            key=lambda q: sum(SPACE.point_leq(r, q) for r in outer),
        )
        assert best == SPACE.involution(p), p.label()


def test_self_addable_idempotents_are_the_mv_points():
    for p in SPACE.points_bounded(5):
        selfsum_below = SPACE.plus_defined(p, p) and SPACE.point_leq(
            SPACE.plus(p, p), p
        )
        selfsum_equal = SPACE.plus_defined(p, p) and SPACE.plus(p, p) == p
        assert selfsum_below == selfsum_equal == (p in SPACE.y_points)
        assert (p in SPACE.y_points) == p.is_mv()


def test_k_map_frozen_and_formula_oracle():
    assert SPACE.k_map(ChangIdeal(TRUNC, 3)) == ChangIdeal(TRUNC, 0)
    assert SPACE.k_map(ChangIdeal(RADICAL)) == ChangIdeal(RADICAL)
    assert SPACE.k_map(ChangIdeal(COFINITE, 2)) == ChangIdeal(TRUNC, 0)
    wide = window(20)
    for p in SPACE.points_bounded(4):
        kp = SPACE.k_map(p)
        for a in window(8):
            member = all(c in p for c in wide if ALG.ominus(c, a) in p)
            assert member == (a in kp), (p.label(), a)


def test_k_is_a_retraction_fixing_only_mv_points():
    for p in SPACE.points_bounded(5):
        kp = SPACE.k_map(p)
        assert kp in SPACE.y_points
        assert SPACE.k_map(kp) == kp
        assert (kp == p) == (p in SPACE.y_points)


def test_fibers():
    n = 3
    assert SPACE.fiber(ChangIdeal(RADICAL), n) == [ChangIdeal(RADICAL)]
    assert SPACE.fiber(ChangIdeal(TRUNC, 0), n) == SPACE.points_bounded(n)
    with pytest.raises(AlgebraError):
        SPACE.fiber(ChangIdeal(TRUNC, 1), n)
    # fiber membership agrees with k pointwise
    for y in SPACE.y_points:
        fib = SPACE.fiber(y, n)
        for p in SPACE.points_bounded(n):
            assert (p in fib) == SPACE.point_leq(y, SPACE.k_map(p))


def test_m_map_and_germinal_ideal():
    for y in SPACE.y_points:
        assert SPACE.m_map(y) == ChangIdeal(RADICAL)
    with pytest.raises(AlgebraError):
        SPACE.m_map(ChangIdeal(TRUNC, 2))
    germ = SPACE.germinal_ideal(ChangIdeal(RADICAL))
    assert germ == ChangIdeal(TRUNC, 0)
    # germ is the meet of the ideals below the maximal point
    below = [y for y in SPACE.y_points if SPACE.point_leq(y, ChangIdeal(RADICAL))]
    for u in window(9):
        assert (u in germ) == all(u in y for y in below)
    with pytest.raises(AlgebraError):
        SPACE.germinal_ideal(ChangIdeal(TRUNC, 0))
