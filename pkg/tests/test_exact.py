"""Reference oracles: exhaustive covers, hitting sets, empty-rect
enumeration, and the net verifiers they certify."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from coverkit import generators, greedy
from coverkit.epsnet import PointSet
from coverkit.errors import BudgetExceededError, InfeasibleError, MalformedInputError
from coverkit.exact import (
    OracleBudget,
    count_all_maximal_empty_rects,
    enum_maximal_empty_rects,
    max_assignment_value,
    max_assignment_value_bruteforce,
    opt_capacitated_cover,
    opt_hitting_set,
    verify_epsnet,
    verify_epsnet_slow,
    verify_weighted_epsnet,
)
from coverkit.hitting import RectSet
from coverkit.setsystem import cover_cost, is_complete, make_instance, validate_cover


def test_assignment_value_dp_matches_bruteforce():
    for t in range(60):
        inst = generators.random_cover_instance(n=1 + t % 6, m=1 + t % 4, seed=t)
        fam = list(inst.set_ids)
        assert max_assignment_value(inst, fam) == max_assignment_value_bruteforce(
            inst, fam
        )


def test_opt_cover_on_worked_example():
    inst = generators.example_cover_instance()
    opt = opt_capacitated_cover(inst)
    assert opt.cost == 6
    assert opt.chosen == frozenset({0, 1, 3})
    assert is_complete(inst, opt.cover)


def test_opt_cover_is_valid_minimal_and_below_greedy():
    for t in range(60):
        inst = generators.feasible_cover_instance(n=3 + t % 7, m=2 + t % 5, seed=40 + t)
        opt = opt_capacitated_cover(inst)
        assert validate_cover(inst, opt.cover).valid
        assert is_complete(inst, opt.cover)
        assert opt.cost == cover_cost(inst, opt.cover)
        assert opt.chosen == opt.cover.chosen
        assert opt.cost <= greedy.solve_capacitated(inst).cost


def test_opt_cover_infeasible_and_budget():
    gap = make_instance(3, [(0, [0], 1, 1)])
    with pytest.raises(InfeasibleError) as err:
        opt_capacitated_cover(gap)
    assert err.value.achieved == 1
    inst = generators.feasible_cover_instance(n=4, m=4, seed=0)
    with pytest.raises(BudgetExceededError):
        opt_capacitated_cover(inst, budget=OracleBudget(max_subsets=8))


def _hits_all(contain, subset):
    return all(any(contain[i][j] for i in subset) for j in range(len(contain[0])))


def test_opt_hitting_set_is_minimal():
    for t in range(25):
        pts, rs = generators.hitting_instance(n_points=10, n_rects=6, seed=t)
        hitters = opt_hitting_set(pts, rs)
        xs, ys = np.asarray(pts.xs), np.asarray(pts.ys)
        q = rs.as_query_array()
        contain = [
            [
                bool(q[j, 0] <= xs[i] <= q[j, 1] and q[j, 2] <= ys[i] <= q[j, 3])
                for j in range(rs.m)
            ]
            for i in range(10)
        ]
        assert _hits_all(contain, hitters)
        for size in range(len(hitters)):
            assert not any(
                _hits_all(contain, sub) for sub in combinations(range(10), size)
            )


def test_opt_hitting_set_edge_cases():
    pts = generators.uniform_points(n=5, seed=3)
    assert opt_hitting_set(pts, RectSet.from_rows(np.empty((0, 4)))) == ()
    # a rectangle containing no point cannot be hit
    far = RectSet.from_rows([[100.0, 101.0, 100.0, 101.0]])
    with pytest.raises(InfeasibleError):
        opt_hitting_set(pts, far)
    big = generators.hitting_instance(n_points=18, n_rects=14, seed=1)
    with pytest.raises(BudgetExceededError):
        opt_hitting_set(big[0], big[1], budget=OracleBudget(max_subsets=2))


def test_enum_single_point_has_four_halfplane_rects():
    pts = PointSet(np.array([0.3]), np.array([0.7]))
    rects = enum_maximal_empty_rects(pts)
    assert rects.shape == (4, 4)
    inf = float("inf")
    expected = {
        (-inf, 0.3, -inf, inf),
        (0.3, inf, -inf, inf),
        (-inf, inf, -inf, 0.7),
        (-inf, inf, 0.7, inf),
    }
    assert {tuple(r) for r in rects} == expected


def test_enum_anchored_count_and_validation():
    for t in range(12):
        k = t % 7
        rng = np.random.default_rng(t)
        pts = PointSet(
            0.05 + 0.9 * rng.random(k), 0.05 + 0.9 * rng.random(k)
        )
        left = enum_maximal_empty_rects(pts, x_lo=0.0, x_hi=1.0, anchor="L")
        right = enum_maximal_empty_rects(pts, x_lo=0.0, x_hi=1.0, anchor="R")
        assert len(left) == 2 * k + 1
        assert len(right) == 2 * k + 1
        assert np.all(left[:, 0] == 0.0)
        assert np.all(right[:, 1] == 1.0)
    with pytest.raises(MalformedInputError):
        enum_maximal_empty_rects(pts, anchor="X")
    outside = PointSet(np.array([2.0]), np.array([0.5]))
    with pytest.raises(MalformedInputError):
        enum_maximal_empty_rects(outside, x_lo=0.0, x_hi=1.0)


def test_enum_budget_guard():
    pts = generators.uniform_points(n=40, seed=0)
    with pytest.raises(BudgetExceededError):
        enum_maximal_empty_rects(pts, budget=OracleBudget(max_rect_candidates=1000))


@pytest.mark.parametrize("s,count", [(4, 44), (6, 73), (8, 106), (10, 143)])
def test_staircase_maximal_empty_rect_counts(s, count):
    pts = generators.staircase_points(s)
    assert count_all_maximal_empty_rects(pts) == count


def test_fast_and_slow_verifiers_agree():
    outcomes = {True: 0, False: 0}
    for t in range(150):
        rng = np.random.default_rng([17, t])
        n = int(rng.integers(2, 40))
        pts = generators.uniform_points(n=n, seed=1000 + t)
        net_size = int(rng.integers(0, n + 1))
        net = sorted(int(i) for i in rng.choice(n, size=net_size, replace=False))
        eps = Fraction(1, int(rng.integers(2, 9)))
        fast = verify_epsnet(pts, eps, net)
        slow = verify_epsnet_slow(pts, eps, net)
        assert fast.ok == slow.ok
        outcomes[fast.ok] += 1
        if not fast.ok:
            assert fast.witness is not None
            assert fast.witness_count * eps.denominator >= eps.numerator * n
    assert outcomes[True] > 10 and outcomes[False] > 10


def test_verifier_witness_rect_is_truly_violating():
    pts = generators.uniform_points(n=30, seed=5)
    check = verify_epsnet(pts, Fraction(1, 4), [0, 1])
    assert not check.ok
    x0, x1, y0, y1 = check.witness
    xs, ys = np.asarray(pts.xs), np.asarray(pts.ys)
    inside = (xs > x0) & (xs < x1) & (ys > y0) & (ys < y1)
    assert int(inside.sum()) == check.witness_count
    assert not inside[[0, 1]].any()  # net points are excluded


def test_empty_net_fails_unless_pointset_empty():
    pts = generators.uniform_points(n=12, seed=2)
    check = verify_epsnet(pts, Fraction(1, 3), [])
    assert not check.ok
    assert check.witness_count == 12  # the whole plane is net-empty
    empty = PointSet(np.empty(0), np.empty(0))
    assert verify_epsnet(empty, Fraction(1, 3), []).ok


def test_verify_accepts_float_eps_exactly():
    pts = generators.uniform_points(n=20, seed=9)
    net = list(range(0, 20, 3))
    a = verify_epsnet(pts, 0.05, net)
    b = verify_epsnet(pts, Fraction(1, 20), net)
    assert a == b


def test_verify_threshold_is_exact_at_the_boundary():
    # 8 points; net = everything except point 0, which is interior.
    xs = np.array([0.41, 0.1, 0.2, 0.3, 0.5, 0.6, 0.7, 0.8])
    ys = np.array([0.44, 0.1, 0.2, 0.3, 0.5, 0.6, 0.7, 0.8])
    pts = PointSet(xs, ys)
    net = list(range(1, 8))
    # one interior point reaches an eps = 1/8 threshold exactly ...
    assert not verify_epsnet(pts, Fraction(1, 8), net).ok
    # ... but stays below 8/7 of a point
    assert verify_epsnet(pts, Fraction(1, 7), net).ok


def test_verify_rejects_bad_net_ids():
    pts = generators.uniform_points(n=5, seed=0)
    with pytest.raises(MalformedInputError):
        verify_epsnet(pts, Fraction(1, 2), [5])
    with pytest.raises(MalformedInputError):
        verify_epsnet(pts, Fraction(1, 2), [-1])
    with pytest.raises(MalformedInputError):
        verify_epsnet(pts, 0, [0])


def test_slow_verifier_point_cap():
    pts = generators.uniform_points(n=80, seed=0)
    with pytest.raises(BudgetExceededError):
        verify_epsnet_slow(pts, Fraction(1, 2), [0])


def test_weighted_verifier_with_unit_weights_matches_unweighted():
    for t in range(40):
        rng = np.random.default_rng([23, t])
        n = int(rng.integers(2, 25))
        pts = generators.uniform_points(n=n, seed=2000 + t)
        net = sorted(int(i) for i in rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False))
        eps = Fraction(1, int(rng.integers(2, 7)))
        w = [1] * n
        assert verify_weighted_epsnet(pts, w, eps, net).ok == verify_epsnet(pts, eps, net).ok


def test_weighted_verifier_respects_heavy_points():
    pts = generators.uniform_points(n=10, seed=4)
    weights = [10**6] + [1] * 9
    # any net missing the heavy point fails at eps = 1/2
    assert not verify_weighted_epsnet(pts, weights, Fraction(1, 2), list(range(1, 10))).ok
    # the heavy point alone is enough at eps = 1/2 iff no half-plane
    # avoiding it still holds half the weight; it does hold (weights are
    # concentrated), so the singleton net passes
    assert verify_weighted_epsnet(pts, weights, Fraction(1, 2), [0]).ok
    with pytest.raises(BudgetExceededError):
        verify_weighted_epsnet(pts, weights, Fraction(1, 2), [0], max_points=5)
