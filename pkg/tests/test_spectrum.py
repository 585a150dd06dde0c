"""Dual-space tests.

Small spaces are pinned value by value (points located by their ideals, so
the tests do not depend on enumeration order); the structural laws run over
the shared family through the named check suites; the comparison verdicts
and error paths are exercised directly.
"""

import json

import numpy as np
import pytest

from mvspectra import spectrum as sp
from mvspectra.chang import RADICAL, TRUNC, ChangAlgebra, ChangIdeal, ChangSpace
from mvspectra.errors import Error
from mvspectra.idealarith import oplus_bar_oracle
from mvspectra.mv import MvAlgebra, lukasiewicz_chain, product
from mvspectra.verify import run_suite


def point_of(space, ideal):
    hits = [i for i, p in enumerate(space.points) if p.ideal == frozenset(ideal)]
    assert len(hits) == 1
    return hits[0]


def all_pass(alg, suite, **kw):
    rows = run_suite(alg, suite, **kw)
    bad = [r.line() for r in rows if r.status == "fail"]
    assert not bad, "\n".join(bad)
    return rows


# -- pinned small spaces -------------------------------------------------------


def test_three_chain_space_pinned():
    space = sp.build_dual_space(lukasiewicz_chain(2))
    assert len(space.points) == 2
    x1 = point_of(space, {0})
    x2 = point_of(space, {0, 1})
    leq = space.order.leq
    assert leq[x1, x2] and not leq[x2, x1]
    assert space.y_points == (x1,) and space.z_points == (x1,)
    assert sp.involution(space, x1) == x2 and sp.involution(space, x2) == x1
    assert sp.partial_plus(space, x1, x1) == x1
    assert sp.partial_plus(space, x1, x2) == x2
    assert sp.partial_plus(space, x2, x1) == x2
    assert sp.partial_plus(space, x2, x2) is None
    assert space.plus_domain == frozenset({(x1, x1), (x1, x2), (x2, x1)})
    assert sp.k_map(space, x1) == x1 and sp.k_map(space, x2) == x1
    assert set(sp.fiber(space, x1)) == {x1, x2}
    assert sp.interpolate(space, x1, x2) == x1
    assert sp.m_map(space, x1) == x1
    quot = sp.w_quotient(space)
    assert quot.classes == (frozenset({x1, x2}),)
    assert quot.z_of_class == (x1,)


def test_boolean_spaces_are_discrete():
    for alg in (lukasiewicz_chain(1), product(lukasiewicz_chain(1), lukasiewicz_chain(1))):
        space = sp.build_dual_space(alg)
        n = len(space.points)
        assert (space.involution == np.arange(n)).all()
        assert (sp.w_relation(space) == np.eye(n, dtype=bool)).all()
        quot = sp.w_quotient(space)
        assert len(quot.classes) == n
        assert set(space.z_points) == set(range(n))
        assert all(sp.m_map(space, y) == y for y in space.y_points)


def test_product_space_two_components():
    a, b = lukasiewicz_chain(2), lukasiewicz_chain(3)
    space = sp.build_dual_space(product(a, b))
    assert len(space.points) == 5
    kern_first = frozenset(range(b.n))          # {0} x second factor
    kern_second = frozenset(range(0, a.n * b.n, b.n))  # first factor x {0}
    y_ideals = {space.points[y].ideal for y in space.y_points}
    assert y_ideals == {kern_first, kern_second}
    assert set(space.y_points) == set(space.z_points)
    assert all(sp.m_map(space, y) == y for y in space.y_points)
    quot = sp.w_quotient(space)
    assert sorted(len(c) for c in quot.classes) == [2, 3]
    assert sp.lattice_only_component_count(space.lattice) == 2


def test_chang_dispatch_and_maximal_retraction():
    space = sp.build_dual_space(ChangAlgebra())
    assert isinstance(space, ChangSpace)
    bottom, radical = ChangIdeal(TRUNC, 0), ChangIdeal(RADICAL)
    assert sp.m_map(space, bottom) == radical
    assert sp.m_map(space, radical) == radical
    # adding any tail of the radical to a cofinite point reaches the top,
    # so the retraction sends cofinite points all the way down
    assert sp.k_map(space, ChangIdeal("cofinite", 2)) == bottom
    assert sp.k_map(space, radical) == radical
    assert radical in sp.fiber(space, radical, chang_bound=6)
    assert bottom not in sp.fiber(space, radical, chang_bound=6)


# -- structural law batteries on the family ------------------------------------


def test_addition_laws_across_family(family):
    for label, alg in family.items():
        all_pass(alg, "plus")


def test_retraction_laws_across_family(family):
    for label, alg in family.items():
        all_pass(alg, "k")


def test_quotient_laws_across_family(family):
    for label, alg in family.items():
        all_pass(alg, "kaplansky")


def test_plus_table_matches_fixpoint_sums(small_family):
    for label, alg in small_family.items():
        space = sp.build_dual_space(alg)
        for x, px in enumerate(space.points):
            for y, py in enumerate(space.points):
                direct = oplus_bar_oracle(alg, px.ideal, py.ideal)
                got = sp.partial_plus(space, x, y)
                if got is None:
                    assert alg.one in direct
                else:
                    assert space.points[got].ideal == direct


def test_k_routes_and_fixed_points(small_family):
    for label, alg in small_family.items():
        space = sp.build_dual_space(alg)
        for x in range(len(space.points)):
            kx = sp.k_map(space, x)
            assert kx == sp.k_via_ideal_scan(space, x)
            assert kx == sp.k_via_filter_difference(space, x)
            assert (kx == x) == (x in space.y_set)


def test_interpolation_bounds(small_family):
    for label, alg in small_family.items():
        space = sp.build_dual_space(alg)
        leq = space.order.leq
        for x, xp in np.argwhere(leq).tolist():
            w = sp.interpolate(space, x, xp)
            assert leq[x, w] and leq[w, xp]
            assert leq[sp.k_map(space, x), sp.k_map(space, w)]
            assert leq[sp.k_map(space, xp), sp.k_map(space, w)]


def test_hat_map_is_a_downset_bijection(small_family):
    for label, alg in small_family.items():
        space = sp.build_dual_space(alg)
        leq = space.order.leq
        seen = {}
        for a in range(alg.n):
            h = space.hat(a)
            assert space.hat_to_element[h] == a
            seen[h] = a
            for x in h:
                below = np.flatnonzero(leq[:, x]).tolist()
                assert set(below) <= h
        assert len(seen) == alg.n
        assert space.hat(alg.zero) == frozenset()
        assert space.hat(alg.one) == frozenset(range(len(space.points)))


# -- comparison verdicts ---------------------------------------------------------


def test_kaplansky_verdicts():
    l2, l3 = lukasiewicz_chain(2), lukasiewicz_chain(3)
    p = product(l2, l3)
    assert sp.kaplansky_check(p, p) == sp.VERDICT_HOMEOMORPHIC
    assert sp.kaplansky_check(p, product(l3, l2)) == sp.VERDICT_HOMEOMORPHIC
    assert sp.kaplansky_check(l2, l3) == sp.VERDICT_NOT_ISOMORPHIC
    assert sp.kaplansky_check(ChangAlgebra(), lukasiewicz_chain(5)) == sp.VERDICT_INCOMPARABLE
    assert sp.kaplansky_check(lukasiewicz_chain(5), ChangAlgebra()) == sp.VERDICT_INCOMPARABLE
    assert sp.kaplansky_check(ChangAlgebra(), ChangAlgebra()) == sp.VERDICT_HOMEOMORPHIC


def test_kaplansky_budget_verdict():
    big = product(lukasiewicz_chain(5), lukasiewicz_chain(5))
    other = product(lukasiewicz_chain(5), lukasiewicz_chain(5))
    verdict = sp.kaplansky_check(big, other, node_budget=1)
    assert verdict == sp.VERDICT_BUDGET


# -- error paths and serialization ------------------------------------------------


def test_error_paths():
    space = sp.build_dual_space(lukasiewicz_chain(2))
    x2 = point_of(space, {0, 1})
    with pytest.raises(Error):
        sp.fiber(space, x2)
    with pytest.raises(Error):
        sp.m_map(space, x2)
    with pytest.raises(Error):
        sp.interpolate(space, x2, point_of(space, {0}))
    with pytest.raises(Error):
        sp.MvDualSpace(ChangAlgebra())


def test_space_rejects_broken_tables():
    good = lukasiewicz_chain(2)
    oplus = good.oplus.copy()
    oplus[1, 1] = 1  # 1 (+) 1 should reach the top of the chain
    broken = MvAlgebra(good.neg.copy(), oplus, validate=False)
    with pytest.raises(Error):
        sp.build_dual_space(broken)


def test_json_deterministic_and_complete():
    alg = product(lukasiewicz_chain(2), lukasiewicz_chain(3))
    one = json.dumps(sp.space_to_json(sp.build_dual_space(alg)), sort_keys=True)
    two = json.dumps(sp.space_to_json(sp.build_dual_space(alg)), sort_keys=True)
    assert one == two
    data = json.loads(one)
    assert data["schema"] == "mv-spectra/1"
    for key in ("points", "order", "involution", "plus", "Y", "Z", "k", "m"):
        assert key in data
    chang = sp.space_to_json(sp.build_dual_space(ChangAlgebra()), chang_bound=5)
    assert chang["schema"] == "mv-spectra/1"
    assert "I_omega" in json.dumps(chang)


def test_dot_output_marks_point_classes():
    space = sp.build_dual_space(product(lukasiewicz_chain(2), lukasiewicz_chain(3)))
    dot = sp.space_to_dot(space)
    assert dot.startswith("digraph")
    assert "peripheries=2" in dot and "style=filled" in dot
    withplus = sp.space_to_dot(space, plus_edges=True)
    assert len(withplus) > len(dot)
    chang_dot = sp.space_to_dot(sp.build_dual_space(ChangAlgebra()), chang_bound=4)
    assert "I_omega" in chang_dot
