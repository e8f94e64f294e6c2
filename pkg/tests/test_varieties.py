from __future__ import annotations

import pytest

from quivercells import catalog
from quivercells.activity import extact_table
from quivercells.errors import DichotomyError, GenericityError, VerificationError
from quivercells.exactmath import IntPolynomial
from quivercells.graphs import Quiver, SpanningTree, betti, contract_params, delete, spanning_trees
from quivercells.varieties import (
    DoublePoint,
    HKParams,
    _point_from_mask,
    _stable_raw,
    assign_tree,
    auto_theta,
    canonical_gauge,
    canonical_point,
    cell_decompose,
    cell_points,
    contract_point,
    delete_point,
    destabilizers,
    enumerate_Zlambda,
    gauge_point,
    is_generic,
    is_generic_pair,
    is_in_Zlambda,
    is_stable,
    lift_point,
    min_destabilizer,
    moment_residual,
    orient_tree,
    oriented_incidence_sum,
    oriented_inversion_graph,
    poincare,
    restrict_point,
    split_point,
    stability_via_trees,
)

import oracles


def _pt(quiver, p, x, xstar):
    return DoublePoint(quiver, p, x, xstar)


def _a2_point(a2_quiver, p, xm, xsm, xl, xsl, xs, xss):
    return _pt(
        a2_quiver,
        p,
        {"m": xm, "l": xl, "s": xs},
        {"m": xsm, "l": xsl, "s": xss},
    )


def _tree(*names):
    return SpanningTree(frozenset(names))


# -- moment map ----------------------------------------------------------------


def test_moment_residual_zero_on_worked_cycle_point(a2):
    # x = (m, l, s) = (1, 1, 1); xstar = (4, 4, 1) over F_5, lambda = 0:
    # edge products 4, 4, 1 cancel around the cycle at every vertex
    q, _, _ = a2
    pt = _a2_point(q, 5, 1, 4, 1, 4, 1, 1)
    assert all(int(r) == 0 for r in moment_residual(pt, (0, 0, 0)))
    assert is_in_Zlambda(pt, (0, 0, 0))


def test_moment_residual_frozen_kronecker():
    q = catalog.kronecker()
    pt = _pt(q, 3, {"e1": 1, "e2": 0}, {"e1": 1, "e2": 0})
    assert is_in_Zlambda(pt, (-1, 1))
    assert not is_in_Zlambda(pt, (0, 0))
    res = moment_residual(pt, (0, 0))
    assert [int(r) for r in res] == [2, 1]  # -1 and +1 mod 3


def test_moment_residual_ignores_loops():
    q = catalog.jordan(2)
    pt = _pt(q, 5, {"g0": 2, "g1": 3}, {"g0": 4, "g1": 1})
    assert is_in_Zlambda(pt, (0,))


def test_moment_residual_length_check(a2):
    q, _, _ = a2
    pt = _a2_point(q, 3, 0, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        moment_residual(pt, (0, 0))


@pytest.mark.parametrize(
    "factory,lam,p",
    [
        (catalog.kronecker, (0, 0), 2),
        (catalog.kronecker, (0, 0), 3),
        (catalog.kronecker, (-1, 1), 3),
        (catalog.theta_graph, (0, 0), 2),
        (lambda: catalog.a2tilde()[0], (0, 0, 0), 2),
        (catalog.two_cycle_pendant, (1, 0, -1), 2),
    ],
)
def test_enumerate_zlambda_matches_brute_force(factory, lam, p):
    q = factory()
    got = sorted(pt.key() for pt in enumerate_Zlambda(q, lam, p))
    want = sorted(
        tuple(v for pair in zip(xs, ys) for v in pair)
        for xs, ys in oracles.brute_zlambda(q, lam, p)
    )
    assert got == want
    assert len(got) == len(set(got))


def test_enumerate_zlambda_rejects_bad_input(a2):
    q, _, _ = a2
    with pytest.raises(ValueError):
        next(enumerate_Zlambda(q, (0, 0, 0), 4))
    with pytest.raises(ValueError):
        next(enumerate_Zlambda(q, (0, 0), 3))


# -- genericity ----------------------------------------------------------------


def test_is_generic():
    assert is_generic((-2, 1, 1))
    assert is_generic((-1, 1))
    assert is_generic((-1, -1, 2))  # equal entries are fine, only sums matter
    assert not is_generic((0, 0))
    assert not is_generic((-1, 0, 1))  # a zero entry is a vanishing singleton
    assert not is_generic((1, -1, 1, -1))  # {0, 1} vanishes
    assert not is_generic((1, 1))  # total not zero
    assert is_generic((0,))  # single vertex: no proper nonempty subsets


def test_auto_theta_frozen():
    assert auto_theta(1) == (0,)
    assert auto_theta(2) == (-1, 1)
    assert auto_theta(3) == (-2, 1, 1)
    assert auto_theta(4) == (-3, -1, 2, 2)
    for n in range(1, 6):
        assert is_generic(auto_theta(n))


def test_is_generic_pair():
    # generic theta makes any lambda fine
    assert is_generic_pair((0, 0, 0), (-2, 1, 1), 3)
    # non-generic theta needs lambda to cover the vanishing subsets
    assert not is_generic_pair((0, 0), (0, 0), 3)
    assert is_generic_pair((1, -1), (0, 0), 3)
    assert not is_generic_pair((3, -3), (0, 0), 3)  # lambda vanishes mod 3


def test_hkparams_validation():
    with pytest.raises(ValueError):
        HKParams((0, 0), (1, -1, 0))
    params = HKParams((0, 0, 0), (-2, 1, 1))
    assert params.lam == (0, 0, 0)


# -- stability -----------------------------------------------------------------


def _all_points_f2(quiver):
    m = len(quiver.edges)
    for mask in range(1 << (2 * m)):
        yield _point_from_mask(quiver, mask)


@pytest.mark.parametrize("name,quiver", catalog.suite())
def test_stability_matches_closure_oracle(name, quiver):
    theta = auto_theta(quiver.n_vertices)
    for pt in _all_points_f2(quiver):
        graph = oriented_inversion_graph(pt)
        assert _stable_raw(pt, theta) == oracles.closure_stable(
            quiver, theta, graph.forward, graph.backward
        )


@pytest.mark.parametrize("name,quiver", catalog.suite())
def test_stability_equals_tree_criterion(name, quiver):
    theta = auto_theta(quiver.n_vertices)
    for pt in _all_points_f2(quiver):
        assert _stable_raw(pt, theta) == stability_via_trees(pt, theta)


def test_is_stable_rejects_non_generic_theta(a2):
    q, _, _ = a2
    pt = _a2_point(q, 3, 1, 0, 1, 0, 1, 0)
    with pytest.raises(GenericityError):
        is_stable(pt, (-1, 0, 1))
    with pytest.raises(ValueError):
        is_stable(pt, (-1, 1))


def test_stable_support_is_connected(suite_quiver):
    from quivercells.graphs import connected_spanning

    theta = auto_theta(suite_quiver.n_vertices)
    for pt in _all_points_f2(suite_quiver):
        if _stable_raw(pt, theta):
            support = {
                e.name
                for e in suite_quiver.edges
                if pt.x[e.name] or pt.xstar[e.name]
            }
            assert connected_spanning(suite_quiver, support)


def test_zero_point_unstable(a2):
    q, theta, _ = a2
    assert not is_stable(_a2_point(q, 3, 0, 0, 0, 0, 0, 0), theta)


# -- oriented trees --------------------------------------------------------------


def test_orient_tree_frozen(a2):
    q, theta, _ = a2
    ot = orient_tree(q, _tree("m", "l"), theta)
    assert ot.arrows == (("l", True, 1), ("m", True, 2))
    ot = orient_tree(q, _tree("l", "s"), theta)
    assert ot.arrows == (("l", False, 1), ("s", True, 2))
    ot = orient_tree(q, _tree("m", "s"), theta)
    assert ot.arrows == (("m", True, 1), ("s", True, 1))
    assert ot.direction("m") is True
    assert ot.weight("s") == 1
    with pytest.raises(KeyError):
        ot.weight("l")


def test_orient_tree_weight_identity(suite_quiver):
    theta = auto_theta(suite_quiver.n_vertices)
    for tree in spanning_trees(suite_quiver):
        ot = orient_tree(suite_quiver, tree, theta)
        assert oriented_incidence_sum(suite_quiver, ot) == theta
        assert all(w > 0 for _, _, w in ot.arrows)


def test_orient_tree_rejects_vanishing_side(a2):
    q, _, _ = a2
    # cutting m from the path tree {m, l} isolates vertex 0, where this
    # theta vanishes
    with pytest.raises(GenericityError):
        orient_tree(q, _tree("m", "l"), (0, -1, 1))
    with pytest.raises(GenericityError):
        orient_tree(q, _tree("m", "l"), (1, 1, 1))


# -- destabilizers and splitting -------------------------------------------------


def test_destabilizers_of_cut_cycle(a2):
    # m forward, l reverse, s removed: {0, 1} is the only obstruction
    q, theta, _ = a2
    pt = _a2_point(q, 3, 1, 0, 0, 1, 0, 0)
    rest = restrict_point(pt, delete(q, "s"))
    assert destabilizers(rest, theta) == [frozenset({0, 1})]
    assert min_destabilizer(rest, theta) == frozenset({0, 1})


def test_destabilizers_empty_for_stable(a2):
    q, theta, _ = a2
    pt = _a2_point(q, 3, 1, 0, 1, 0, 1, 0)
    assert destabilizers(pt, theta) == []
    with pytest.raises(ValueError):
        min_destabilizer(pt, theta)


def test_min_destabilizer_tie_is_genericity_error():
    # generic theta never ties (destabilizers form a lattice and a tied
    # minimum forces a vanishing subset), so feed a degenerate theta the
    # way the split recursion does: {0} and {0, 1} both sum to -1
    q, _, _ = catalog.a2tilde()
    theta = (-1, 0, 1)
    pt = _a2_point(q, 3, 0, 0, 0, 0, 0, 0)
    assert frozenset({0}) in destabilizers(pt, theta)
    assert frozenset({0, 1}) in destabilizers(pt, theta)
    with pytest.raises(GenericityError):
        min_destabilizer(pt, theta)


def test_split_point_frozen_shift(a2):
    # removing s from the m-forward l-reverse point destabilizes {0, 1};
    # the shift moves beta = -1 across the endpoints of s
    q, theta, _ = a2
    pt = _a2_point(q, 3, 1, 0, 0, 1, 1, 0)
    p1, p2, shifted = split_point(pt, theta, "s")
    assert shifted == (-1, 1, 0)
    assert p1.quiver.n_vertices == 2 and sorted(p1.quiver.vertex_map) == [0, 1]
    assert p2.quiver.n_vertices == 1 and sorted(p2.quiver.vertex_map) == [2]
    assert [e.name for e in p1.quiver.edges] == ["m"]
    assert p2.quiver.edges == ()


def test_split_point_needs_instability(a2):
    q, theta, _ = a2
    pt = _a2_point(q, 3, 1, 0, 1, 0, 1, 0)
    with pytest.raises(ValueError):
        split_point(pt, theta, "s")


# -- tree assignment --------------------------------------------------------------


def test_assign_tree_frozen_cycle_cells(a2):
    # worked cell representatives over F_5 with parameters (2, 3)
    q, theta, _ = a2
    lam = (0, 0, 0)
    cases = [
        # full-support point: every edge contracts
        (_a2_point(q, 5, 1, 4, 1, 4, 2, 3), _tree("m", "l")),
        # m, l off; reverse scalars carry the cycle
        (_a2_point(q, 5, 0, 2, 0, 1, 1, 0), _tree("l", "s")),
        # l off, reverse l on
        (_a2_point(q, 5, 1, 0, 0, 2, 1, 0), _tree("m", "s")),
    ]
    for pt, tree in cases:
        assert is_in_Zlambda(pt, lam)
        assert is_stable(pt, theta)
        assert assign_tree(pt, theta) == tree


def test_assign_tree_second_ordering(a2_alt):
    q, theta, _ = a2_alt
    cases = [
        (_a2_point(q, 5, 1, 0, 1, 0, 0, 2), _tree("m", "l")),
        (_a2_point(q, 5, 1, 0, 2, 0, 1, 0), _tree("m", "s")),
    ]
    for pt, tree in cases:
        assert is_in_Zlambda(pt, (0, 0, 0))
        assert is_stable(pt, theta)
        assert assign_tree(pt, theta) == tree


def test_assign_tree_is_gauge_invariant(a2):
    from itertools import product

    q, theta, _ = a2
    p = 3
    pt = _a2_point(q, p, 1, 0, 0, 1, 1, 0)
    want = assign_tree(pt, theta)
    for t in product(range(1, p), repeat=3):
        assert assign_tree(gauge_point(pt, t), theta) == want


def test_assign_tree_rejects_unstable(a2):
    q, theta, _ = a2
    with pytest.raises(ValueError):
        assign_tree(_a2_point(q, 3, 0, 0, 0, 0, 0, 0), theta)


def test_assign_tree_depends_only_on_support(a2):
    q, theta, _ = a2
    pt1 = _a2_point(q, 5, 1, 4, 1, 4, 2, 3)
    pt2 = _a2_point(q, 5, 3, 1, 2, 4, 1, 2)  # same support, other values
    assert pt1.support_mask() == pt2.support_mask()
    assert assign_tree(pt1, theta) == assign_tree(pt2, theta)


# -- canonical forms ---------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5])
def test_canonical_point_identifies_orbits_exactly(p):
    q = catalog.kronecker()
    theta = auto_theta(2)
    stable = [
        pt for pt in enumerate_Zlambda(q, (0, 0), p) if _stable_raw(pt, theta)
    ]
    by_canon: dict[tuple, set] = {}
    for pt in stable:
        by_canon.setdefault(canonical_point(pt).key(), set()).add(pt.key())
    brute = oracles.gauge_orbits_double(q, p, [pt.key() for pt in stable])
    assert {frozenset(v) for v in by_canon.values()} == brute
    for members in by_canon.values():
        assert len(members) == (p - 1) ** (q.n_vertices - 1)


def test_canonical_point_fixes_tree_scalars(a2):
    q, _, _ = a2
    pt = _a2_point(q, 5, 2, 4, 3, 1, 2, 3)
    rep = canonical_point(pt)
    # greedy tree over supported edges in sequence order picks m then l
    assert rep.x["m"] == 1 and rep.x["l"] == 1
    t = canonical_gauge(pt)
    assert t[0] == 1
    assert gauge_point(pt, t).key() == rep.key()


# -- point surgery -----------------------------------------------------------------


def test_contract_point_prefers_forward_scalar():
    q = catalog.kronecker()
    pt = _pt(q, 3, {"e1": 2, "e2": 1}, {"e1": 2, "e2": 2})
    c = contract_point(pt, "e1")
    assert c.quiver.n_vertices == 1
    # x_e1 = 2 nonzero wins: gauge t = (1, inv(2)) = (1, 2), so e2 becomes
    # x = 2*1*1 = 2, xstar = 1*2*inv(2) = 1; e1 is dropped
    assert c.x == {"e2": 2} and c.xstar == {"e2": 1}


def test_contract_point_mirrored_branch():
    q = catalog.kronecker()
    pt = _pt(q, 3, {"e1": 0, "e2": 1}, {"e1": 2, "e2": 2})
    c = contract_point(pt, "e1")
    # only xstar_e1 is nonzero: gauge t = (inv(2), 1) = (2, 1) on the tail
    assert c.x == {"e2": 2} and c.xstar == {"e2": 1}


def test_contract_point_requires_support():
    q = catalog.kronecker()
    with pytest.raises(ValueError):
        contract_point(_pt(q, 3, {"e1": 0, "e2": 1}, {"e1": 0, "e2": 1}), "e1")
    with pytest.raises(ValueError):
        contract_point(_pt(catalog.jordan(1), 3, {"g0": 1}, {"g0": 1}), "g0")


def test_contract_point_preserves_moment_and_stability(a2):
    q, theta, _ = a2
    lam = (0, 0, 0)
    for pt in enumerate_Zlambda(q, lam, 3):
        if not _stable_raw(pt, theta):
            continue
        tree = assign_tree(pt, theta)
        name = q.biggest_non_loop()
        if name not in tree:
            continue
        c = contract_point(pt, name)
        lam_c, theta_c = contract_params(lam, theta, q, name)
        assert is_in_Zlambda(c, lam_c)
        assert _stable_raw(c, theta_c)


def test_lift_point_round_trips(a2):
    q, theta, _ = a2
    lam = (0, 0, 0)
    name = q.biggest_non_loop()
    lam_c, theta_c = contract_params(lam, theta, q, name)
    from quivercells.graphs import contract

    qc = contract(q, name)
    for pt_c in enumerate_Zlambda(qc, lam_c, 3):
        lifted = lift_point(q, lam, name, pt_c)
        assert lifted.x[name] == 1
        assert is_in_Zlambda(lifted, lam)
        back = contract_point(lifted, name)
        assert back.key() == pt_c.key()


def test_lift_then_contract_is_identity_on_gauged_points(a2):
    # points with x on the contracted edge already 1 reproduce themselves
    q, theta, _ = a2
    lam = (0, 0, 0)
    name = q.biggest_non_loop()
    for pt in enumerate_Zlambda(q, lam, 3):
        if pt.x[name] != 1:
            continue
        again = lift_point(q, lam, name, contract_point(pt, name))
        assert again.key() == pt.key()


def test_delete_point_frozen_dichotomy(a2):
    # the cycle closed by l in tree {m, s} is walked the way the oriented tree
    # points s; l is crossed against its arrow, so x_l must vanish and xstar_l
    # is the free leftover
    q, theta, _ = a2
    pt = _a2_point(q, 3, 1, 0, 0, 1, 1, 0)
    rest, which, val = delete_point(pt, _tree("m", "s"), "l", theta)
    assert which == "xstar" and val == 1
    assert [e.name for e in rest.quiver.edges] == ["m", "s"]
    bad = _a2_point(q, 3, 1, 0, 1, 0, 1, 0)
    with pytest.raises(DichotomyError):
        delete_point(bad, _tree("m", "s"), "l", theta)


def test_delete_point_other_direction():
    # four-cycle, tree f1 f2 f3, f4 removed: the oriented tree points f1 along
    # its own arrow, the walk runs 0 -> 1 -> 2 -> 3 and closes with f4's arrow
    # 3 -> 0, so this time the reverse scalar must vanish and x_f4 is free
    q = catalog.four_cycle()
    theta = auto_theta(4)
    x = {"f1": 1, "f2": 1, "f3": 1, "f4": 2}
    xs = {"f1": 0, "f2": 0, "f3": 0, "f4": 0}
    rest, which, val = delete_point(_pt(q, 3, x, xs), _tree("f1", "f2", "f3"), "f4", theta)
    assert which == "x" and val == 2
    bad = _pt(q, 3, x, {"f1": 0, "f2": 0, "f3": 0, "f4": 1})
    with pytest.raises(DichotomyError):
        delete_point(bad, _tree("f1", "f2", "f3"), "f4", theta)


def test_delete_point_forced_side_follows_theta():
    # two parallel edges drawn 1 -> 0: the oriented tree points e1 against its
    # arrow, flipping the walk, so the reverse scalar of e2 is the forced zero
    q = Quiver(2, [("e1", 1, 0), ("e2", 1, 0)])
    theta = (-1, 1)
    pt = _pt(q, 3, {"e1": 0, "e2": 2}, {"e1": 1, "e2": 0})
    rest, which, val = delete_point(pt, _tree("e1"), "e2", theta)
    assert which == "x" and val == 2
    bad = _pt(q, 3, {"e1": 0, "e2": 0}, {"e1": 1, "e2": 1})
    with pytest.raises(DichotomyError):
        delete_point(bad, _tree("e1"), "e2", theta)


def test_delete_point_argument_checks(a2):
    q, theta, _ = a2
    pt = _a2_point(q, 3, 1, 0, 0, 1, 1, 0)
    with pytest.raises(ValueError):
        delete_point(pt, _tree("m", "s"), "m", theta)  # tree edge
    with pytest.raises(ValueError):
        delete_point(
            _pt(catalog.triangle_with_loop(), 3,
                {"e1": 1, "e2": 1, "e3": 0, "g": 0},
                {"e1": 0, "e2": 0, "e3": 0, "g": 0}),
            _tree("e1", "e2"),
            "g",
            auto_theta(3),
        )


# -- cells --------------------------------------------------------------------------


FROZEN_A2_CELLS = {
    3: {_tree("m", "l"): 9, _tree("l", "s"): 3, _tree("m", "s"): 3},
    5: {_tree("m", "l"): 25, _tree("l", "s"): 5, _tree("m", "s"): 5},
}


@pytest.mark.parametrize("p", [3, 5])
def test_cell_decompose_frozen(a2, p):
    q, theta, lam = a2
    table = cell_decompose(q, lam, theta, p)
    assert dict(table.counts) == FROZEN_A2_CELLS[p]
    assert table.total == p * p + 2 * p
    assert table.all_match
    assert table.expected(_tree("m", "l")) == p * p


def test_cell_decompose_second_ordering(a2_alt):
    q, theta, lam = a2_alt
    table = cell_decompose(q, lam, theta, 3)
    assert dict(table.counts) == {
        _tree("l", "s"): 9,
        _tree("m", "l"): 3,
        _tree("m", "s"): 3,
    }


def test_cell_records_are_deterministic(a2):
    q, theta, lam = a2
    r1 = cell_decompose(q, lam, theta, 3).records()
    r2 = cell_decompose(q, lam, theta, 3).records()
    assert r1 == r2
    assert r1 == [
        "tree=l,m count=9 expected=9 verdict=OK",
        "tree=l,s count=3 expected=3 verdict=OK",
        "tree=m,s count=3 expected=3 verdict=OK",
    ]


def test_cell_decompose_single_vertex():
    q = catalog.jordan(2)
    table = cell_decompose(q, (0,), (0,), 5)
    assert dict(table.counts) == {SpanningTree(frozenset()): 625}
    assert table.all_match  # betti 2, extact 2, dim 4


def test_cell_decompose_validates(a2):
    q, theta, lam = a2
    with pytest.raises(ValueError):
        cell_decompose(q, lam, theta, 6)
    with pytest.raises(GenericityError):
        cell_decompose(q, lam, (-1, 0, 1), 3)
    with pytest.raises(GenericityError):
        cell_decompose(q, lam, (1, 1, 1), 3)
    with pytest.raises(ValueError):
        cell_decompose(q, (1, 0, 0), theta, 3)
    with pytest.raises(ValueError):
        cell_decompose(q, (0, 0), theta, 3)


def test_cell_decompose_nongeneric_pair():
    q = catalog.kronecker()
    with pytest.raises(GenericityError):
        cell_decompose(q, (0, 0), (0, 0), 3)


def test_cell_points_agrees_with_cell_decompose(suite_quiver):
    theta = auto_theta(suite_quiver.n_vertices)
    lam = (0,) * suite_quiver.n_vertices
    for p in (2, 3):
        table = cell_decompose(suite_quiver, lam, theta, p)
        pts = cell_points(suite_quiver, lam, theta, p)
        assert {t: len(reps) for t, reps in pts.items()} == dict(table.counts)


def test_cell_dims_are_betti_plus_extact(suite_quiver):
    theta = auto_theta(suite_quiver.n_vertices)
    lam = (0,) * suite_quiver.n_vertices
    table = cell_decompose(suite_quiver, lam, theta, 2)
    b1 = betti(suite_quiver)
    assert dict(table.dims) == {
        t: b1 + e for t, e in extact_table(suite_quiver).items()
    }


# -- headline polynomial -------------------------------------------------------------


FROZEN_POINCARE = {
    "triangle": IntPolynomial([0, 2, 1]),
    "kronecker": IntPolynomial([0, 1, 1]),
    "two_cycle_pendant": IntPolynomial([0, 1, 1]),
    "theta_graph": IntPolynomial([0, 0, 1, 1, 1]),
    "four_cycle": IntPolynomial([0, 3, 1]),
    "triangle_with_loop": IntPolynomial([0, 0, 0, 2, 1]),
}


@pytest.mark.parametrize("name,quiver", catalog.suite())
def test_poincare_frozen(name, quiver):
    assert poincare(quiver) == FROZEN_POINCARE[name]


def test_poincare_headline(a2):
    q, theta, lam = a2
    assert poincare(q, lam, theta) == IntPolynomial([0, 2, 1])


def test_poincare_rejects_unbalanced_lambda(a2):
    q, theta, _ = a2
    with pytest.raises(ValueError):
        poincare(q, (1, 0, 0), theta)
