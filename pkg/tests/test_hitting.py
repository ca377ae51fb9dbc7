"""Hitting sets for rectangles: weighted nets, weight doubling, formats."""

from fractions import Fraction

import numpy as np
import pytest

from coverkit import exact, generators
from coverkit.epsnet import PointSet
from coverkit.errors import DegenerateInputError, InfeasibleError, MalformedInputError
from coverkit.hitting import (
    RectSet,
    hitting_to_obj,
    load_rects,
    save_rects,
    solve_hitting,
    verify_hitting,
    weighted_net,
)


def test_rectset_validation_and_layout():
    rs = RectSet.from_rows([(0.0, 1.0, 2.0, 3.0), (5.0, 5.0, 5.0, 5.0)])
    assert rs.m == len(rs) == 2
    np.testing.assert_array_equal(
        rs.as_query_array(), [[0.0, 2.0, 1.0, 3.0], [5.0, 5.0, 5.0, 5.0]]
    )
    with pytest.raises(MalformedInputError):
        RectSet.from_rows([(2.0, 0.0, 1.0, 1.0)])  # x_lo > x_hi
    with pytest.raises(MalformedInputError):
        RectSet.from_rows([(0.0, 2.0, 1.0, 1.0)])  # y_lo > y_hi
    with pytest.raises(MalformedInputError):
        RectSet.from_rows([(0.0, 0.0, np.inf, 1.0)])
    with pytest.raises(MalformedInputError):
        RectSet(np.array([0.0]), np.array([0.0]), np.array([1.0]), np.array([1.0, 2.0]))


def test_rects_csv_round_trip(tmp_path):
    _, rs = generators.hitting_instance(n_points=40, n_rects=15, seed=4)
    path = tmp_path / "rects.csv"
    save_rects(path, rs)
    back = load_rects(path)
    np.testing.assert_array_equal(back.as_query_array(), rs.as_query_array())
    save_rects(tmp_path / "again.csv", back)
    assert (tmp_path / "again.csv").read_bytes() == path.read_bytes()
    bad = tmp_path / "bad.csv"
    bad.write_text("x0,x1,y0,y1\n0,1,0,1\n", encoding="utf-8")
    with pytest.raises(MalformedInputError):
        load_rects(bad)


def test_verify_hitting_reports_missed_rect_ids():
    pts = PointSet(np.array([0.0, 10.0]), np.array([0.0, 10.0]))
    rs = RectSet.from_rows(
        [(-1.0, -1.0, 1.0, 1.0), (9.0, 9.0, 11.0, 11.0), (4.0, 4.0, 6.0, 6.0)]
    )
    full = verify_hitting(pts, rs, (0, 1))
    assert not full.ok and full.missed == (2,)
    partial = verify_hitting(pts, rs, (0,))
    assert partial.missed == (1, 2)
    ok = verify_hitting(pts, rs, (0, 1, 0))
    assert ok.missed == (2,)


def test_weighted_net_is_sound_and_deterministic():
    for t in range(40):
        rng = np.random.default_rng([41, t])
        n = int(rng.integers(2, 60))
        pts = generators.uniform_points(n=n, seed=6000 + t)
        weights = [int(w) for w in rng.integers(1, 50, size=n)]
        eps = Fraction(1, int(rng.integers(2, 8)))
        net = weighted_net(pts, weights, eps, seed=t)
        again = weighted_net(pts, weights, eps, seed=t)
        np.testing.assert_array_equal(net, again)
        assert np.all(np.diff(net) > 0)
        check = exact.verify_weighted_epsnet(pts, weights, eps, net)
        assert check.ok, (t, check.witness)


def test_weighted_net_handles_huge_weights_exactly():
    pts = generators.uniform_points(n=12, seed=1)
    weights = [1] * 12
    weights[5] = 2**80  # far beyond float precision
    net = weighted_net(pts, weights, Fraction(1, 2), seed=0)
    assert 5 in set(int(i) for i in net)
    assert exact.verify_weighted_epsnet(pts, weights, Fraction(1, 2), net).ok


def test_weighted_net_input_checks():
    pts = generators.uniform_points(n=6, seed=0)
    with pytest.raises(MalformedInputError):
        weighted_net(pts, [1] * 5, Fraction(1, 2), seed=0)  # length mismatch
    with pytest.raises(MalformedInputError):
        weighted_net(pts, [1, 1, 1, 1, 1, 0], Fraction(1, 2), seed=0)  # zero weight
    with pytest.raises(MalformedInputError):
        weighted_net(PointSet(np.empty(0), np.empty(0)), [], Fraction(1, 2), seed=0)
    single = weighted_net(PointSet(np.array([1.0]), np.array([2.0])), [7], Fraction(1, 3), seed=0)
    np.testing.assert_array_equal(single, [0])


def test_solve_hitting_on_forced_singleton_rects():
    # tiny rectangles around a scattered subset force exactly those points
    rng = np.random.default_rng(77)
    pts = generators.uniform_points(n=30, seed=7)
    chosen = sorted(int(i) for i in rng.choice(30, size=5, replace=False))
    rows = [
        (pts.xs[i] - 1e-6, pts.ys[i] - 1e-6, pts.xs[i] + 1e-6, pts.ys[i] + 1e-6)
        for i in chosen
    ]
    rs = RectSet.from_rows(rows)
    res = solve_hitting(pts, rs, seed=0)
    assert res.verified
    # each singleton rectangle admits exactly one hitter, so all five
    # chosen points must appear (the net may carry extra points)
    assert set(chosen) <= set(res.hitters)
    assert verify_hitting(pts, rs, res.hitters).ok
    assert len(exact.opt_hitting_set(pts, rs)) == 5


def test_solve_hitting_validity_over_seeds():
    for t in range(40):
        pts, rs = generators.hitting_instance(
            n_points=12 + t % 20, n_rects=4 + t % 10, seed=t
        )
        res = solve_hitting(pts, rs, seed=t)
        assert res.verified
        assert verify_hitting(pts, rs, res.hitters).ok
        assert len(res.hitters) == len(set(res.hitters)) <= pts.n
        assert res.k_final >= 1
        assert res.rounds_total == len(res.iterations)
        # iteration log: every round but the last of its k-block doubled a rect
        assert res.iterations[-1].doubled_rect == -1
        for it in res.iterations[:-1]:
            assert it.doubled_rect == -1 or 0 <= it.doubled_rect < rs.m
        # a solved guess never exceeds n
        assert res.k_final <= pts.n


def test_solve_hitting_is_deterministic():
    pts, rs = generators.hitting_instance(n_points=25, n_rects=12, seed=3)
    a = solve_hitting(pts, rs, seed=5)
    b = solve_hitting(pts, rs, seed=5)
    assert a == b
    obj = hitting_to_obj(a)
    assert obj["hitters"] == sorted(obj["hitters"])
    assert obj["size"] == len(a.hitters)
    assert obj["rounds_total"] == a.rounds_total
    assert obj["verified"] is True


def test_solve_hitting_edge_cases():
    pts = generators.uniform_points(n=8, seed=2)
    empty = solve_hitting(pts, RectSet.from_rows(np.empty((0, 4))), seed=0)
    assert empty.hitters == () and empty.verified
    with pytest.raises(InfeasibleError):
        solve_hitting(
            pts, RectSet.from_rows([(50.0, 50.0, 51.0, 51.0)]), seed=0
        )
    with pytest.raises(InfeasibleError):
        solve_hitting(
            PointSet(np.empty(0), np.empty(0)),
            RectSet.from_rows([(0.0, 0.0, 1.0, 1.0)]),
            seed=0,
        )
    tied = PointSet(np.array([0.5, 0.5]), np.array([0.1, 0.9]))
    with pytest.raises(DegenerateInputError):
        solve_hitting(tied, RectSet.from_rows([(0.0, 0.0, 1.0, 1.0)]), seed=0)


def test_solve_hitting_close_to_optimal_on_small_instances():
    # not a guarantee of the method, but the ratio bound the package
    # advertises must hold on the standard random family
    import math

    from coverkit import calibration

    for t in range(30):
        pts, rs = generators.hitting_instance(n_points=14, n_rects=8, seed=100 + t)
        res = solve_hitting(pts, rs, seed=t)
        opt = len(exact.opt_hitting_set(pts, rs))
        assert opt <= len(res.hitters)
        bound = calibration.C_BG * math.log2(math.log2(max(4.0, opt))) * opt
        assert len(res.hitters) <= max(bound, calibration.C_BG)
