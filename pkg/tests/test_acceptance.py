"""Acceptance gate: one test per shipped guarantee, each printing a
single pass/fail line with its wall-clock time.

Every test pins the tolerance it checks (exact equality, a frozen
constant, or a stated trend) and asserts the stated time budget.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import record_acceptance
from coverkit import bench, calibration, cli, exact, generators, greedy
from coverkit.epsnet import (
    NetConfig,
    PointSet,
    StripNode,
    build_epsnet,
    loglog2,
    maximal_anchored_empty,
)
from coverkit.hitting import solve_hitting, verify_hitting


class _Budget:
    """Context manager asserting a wall-clock budget and recording the
    acceptance line on success."""

    def __init__(self, number: int, label: str, seconds: float):
        self.number = number
        self.label = label
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"criterion {self.number} exceeded its {self.seconds:.0f} s budget "
                f"({elapsed:.1f} s)"
            )
            record_acceptance(
                f"[acceptance] criterion {self.number} ({self.label}): "
                f"PASS ({elapsed:.2f} s, budget {self.seconds:.0f} s)"
            )
        else:
            record_acceptance(
                f"[acceptance] criterion {self.number} ({self.label}): FAIL"
            )
        return False


def test_criterion_1_worked_example_cost():
    with _Budget(1, "worked example: greedy and optimum both cost 6", 1.0):
        inst = generators.example_cover_instance()
        opt = exact.opt_capacitated_cover(inst)
        assert opt.cost == Fraction(6)
        assert opt.chosen == frozenset({0, 1, 3})
        trace = greedy.solve_capacitated(inst)
        assert trace.cost == Fraction(6)


def test_criterion_2_flow_equals_assignment_oracle():
    with _Budget(2, "flow value vs exhaustive assignment, 1000 instances", 30.0):
        from coverkit.flowcheck import max_cover_value

        mismatches = 0
        for t in range(1000):
            inst = generators.random_cover_instance(
                n=1 + t % 8, m=1 + t % 6, seed=t, k_max=3
            )
            fam = list(inst.set_ids)
            if max_cover_value(inst, fam).value != exact.max_assignment_value(inst, fam):
                mismatches += 1
        assert mismatches == 0


def test_criterion_3_greedy_within_harmonic_of_optimum():
    with _Budget(3, "greedy <= H_n * OPT, 500 feasible instances", 300.0):
        header, rows = bench.ratio_suite(count=500, base_seed=0)
        ok_col = header.index("ok")
        violations = [row for row in rows if row[ok_col] != 1]
        assert violations == []


def test_criterion_4_anchored_rectangle_count_law():
    with _Budget(4, "anchored enumeration: 2k+1 rects, set-equal to oracle", 60.0):
        mismatches = 0
        for r_v in range(13):
            for trial in range(100):
                rng = np.random.default_rng([101, r_v, trial])
                pts = PointSet(
                    0.05 + 0.9 * rng.random(r_v), 0.05 + 0.9 * rng.random(r_v)
                )
                entry_left = bool(trial % 2)
                node = StripNode(
                    node_id=1, level=1, parent=0, lo=0, hi=r_v,
                    x_left=0.0, x_right=1.0, split_x=None, children=None,
                    entry_left=entry_left,
                )
                rects = maximal_anchored_empty(pts, node, np.arange(r_v))
                got = {(rc.x0, rc.x1, rc.y0, rc.y1) for rc in rects}
                want = exact.enum_maximal_empty_rects(
                    pts, x_lo=0.0, x_hi=1.0, anchor="L" if entry_left else "R"
                )
                if len(rects) != 2 * r_v + 1 or got != {tuple(r) for r in want}:
                    mismatches += 1
        assert mismatches == 0


def _matrix_cases():
    for eps in (Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)):
        for seed in range(10):
            yield "uniform", generators.uniform_points(n=2000, seed=seed), eps, seed
            yield "clustered", generators.clustered_points(n=2000, seed=seed), eps, seed
            yield "staircase", generators.staircase_points(1000), eps, seed


def test_criterion_5_net_verification_matrix():
    with _Budget(5, "net verification over generator x eps x seed matrix", 600.0):
        failures = []
        for name, pts, eps, seed in _matrix_cases():
            res = build_epsnet(pts, NetConfig(eps=eps, seed=seed))
            check = exact.verify_epsnet(pts, eps, res.net)
            if not check.ok:
                failures.append((name, str(eps), seed, check.witness))
        assert failures == []


def test_criterion_6_net_size_trend_with_frozen_constant():
    with _Budget(6, "net size trend and frozen size constant", 900.0):
        header, rows = bench.net_size_suite()  # frozen calibration sweep
        ok_col = header.index("ok")
        norm_col = header.index("normalized")
        bound_col = header.index("bound")
        loglog_col = header.index("loglog")
        # bound column is the frozen constant times log2 log2 (2/eps)
        assert all(
            row[bound_col] == calibration.C_SIZE * row[loglog_col] for row in rows
        )
        assert all(row[ok_col] == 1 for row in rows), rows
        # flat within 15%: no later ratio exceeds any earlier one by >15%
        ratios = [row[norm_col] for row in rows]
        for i in range(len(ratios)):
            for j in range(i + 1, len(ratios)):
                assert ratios[j] <= 1.15 * ratios[i], (ratios, i, j)


def test_criterion_7_per_level_rectangle_bound():
    with _Budget(7, "per-level anchored-rectangle count bound", 120.0):
        # every build_epsnet call asserts the bound internally; recheck it
        # here from the recorded tables over a spread of builds
        cases = [
            (generators.uniform_points(n=2000, seed=s), eps)
            for s in range(4)
            for eps in (Fraction(1, 8), Fraction(1, 32))
        ]
        cases += [
            (generators.clustered_points(n=2000, seed=7), Fraction(1, 16)),
            (generators.staircase_points(1000), Fraction(1, 16)),
        ]
        violations = []
        for i, (pts, eps) in enumerate(cases):
            res = build_epsnet(pts, NetConfig(eps=eps, seed=i))
            bound = 2 * res.first_level.size + 2 * float(2 / eps)
            for lev in range(res.levels):
                if res.decay[lev, 0] > bound:
                    violations.append((i, lev, int(res.decay[lev, 0]), bound))
        assert violations == []


def test_criterion_8_weight_decay_trend():
    with _Budget(8, "rectangle-weight decay trend over 50 seeds", 600.0):
        header, rows = bench.decay_suite(
            n=5000, eps=Fraction(1, 20), seeds=range(50)
        )
        totals = {
            row[2]: row[3]
            for row in rows
            if row[0] == "total"
        }
        means = [totals[j] for j in range(2, 7)]
        for a, b in zip(means, means[1:]):
            assert b <= a, means
        assert totals[2] > 0
        assert totals[6] / totals[2] <= 0.25, totals


def test_criterion_9_staircase_empty_rect_lower_bound():
    with _Budget(9, "double-staircase maximal empty rectangles", 10.0):
        count = exact.count_all_maximal_empty_rects(generators.staircase_points(10))
        assert count == 143  # frozen exact fixture
        assert count >= 25  # the advertised s^2/4 lower bound


def test_criterion_10_hitting_validity_and_size_bound():
    with _Budget(10, "hitting sets valid and within frozen size bound", 600.0):
        invalid = 0
        oversize = []
        for t in range(200):
            pts, rs = generators.hitting_instance(
                n_points=3 + t % 18, n_rects=2 + t % 9, seed=t
            )
            res = solve_hitting(pts, rs, seed=t)
            if not (res.verified and verify_hitting(pts, rs, res.hitters).ok):
                invalid += 1
                continue
            opt = len(exact.opt_hitting_set(pts, rs))
            bound = calibration.C_BG * loglog2(max(4.0, float(opt))) * opt
            if len(res.hitters) > bound:
                oversize.append((t, len(res.hitters), opt, bound))
        assert invalid == 0
        assert oversize == []


def _run_cli_battery(workdir):
    """One full pass of every file-writing command into ``workdir``."""
    d = str(workdir)
    calls = [
        ["gen", "uniform-points", "--n", "400", "--seed", "2", "--out", f"{d}/pts.csv"],
        ["gen", "staircase", "--s", "12", "--out", f"{d}/stair.csv", "--seed", "0"],
        ["gen", "random-cover", "--feasible", "--n", "9", "--m", "5", "--seed", "4",
         "--out", f"{d}/inst.json"],
        ["cover", f"{d}/inst.json", "--out", f"{d}/cover.json", "--trace", f"{d}/trace.json"],
        ["epsnet", f"{d}/pts.csv", "--eps", "1/8", "--seed", "1",
         "--out", f"{d}/net.json", "--verify", "--profile", f"{d}/decay_profile.csv"],
        ["bench", "ratio", "--count", "40", "--out", f"{d}/bench_ratio.csv"],
        ["bench", "net-size", "--n", "20000", "--eps", "1/8", "--seeds", "0..2",
         "--out", f"{d}/bench_netsize.csv"],
        ["bench", "decay", "--n", "1500", "--seeds", "0..5", "--out", f"{d}/bench_decay.csv"],
        ["bench", "kernels", "--scale", "1", "--out", f"{d}/bench_kernels.csv"],
    ]
    from coverkit.generators import hitting_instance
    from coverkit.epsnet import save_points
    from coverkit.hitting import save_rects

    hp, hr = hitting_instance(n_points=30, n_rects=10, seed=6)
    save_points(f"{d}/hpts.csv", hp)
    save_rects(f"{d}/hrects.csv", hr)
    calls.append(
        ["hitset", f"{d}/hpts.csv", f"{d}/hrects.csv", "--seed", "3", "--out", f"{d}/hit.json"]
    )
    for argv in calls:
        code = cli.main(argv)
        assert code == 0, (argv, code)


def test_criterion_11_byte_identical_reruns(tmp_path, capsys):
    with _Budget(11, "byte-identical outputs across re-runs", 600.0):
        run_a = tmp_path / "a"
        run_b = tmp_path / "b"
        run_a.mkdir()
        run_b.mkdir()
        _run_cli_battery(run_a)
        _run_cli_battery(run_b)
        capsys.readouterr()
        names = sorted(p.name for p in run_a.iterdir())
        assert names == sorted(p.name for p in run_b.iterdir())
        for name in names:
            a = (run_a / name).read_bytes()
            b = (run_b / name).read_bytes()
            if name == "bench_kernels.csv":
                # timings legitimately vary; all other fields must agree
                strip = lambda raw: [
                    ln.split(",")[:3] + ln.split(",")[4:]
                    for ln in raw.decode().splitlines()
                ]
                assert strip(a) == strip(b), name
            else:
                assert a == b, f"{name} differs between identical runs"
