"""Command line interface.

Subcommands: gen (seeded generators), feas (feasibility via max flow),
cover (greedy cover with optional trace / exact comparison), epsnet
(two-level net construction), hitset (iterative-reweighting hitting
set), bench (deterministic sweeps + kernel timing).

Exit codes: 0 success; 2 infeasible instance / failed check; 3 malformed
input; 4 exhausted budget or diverging iteration.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import bench as bench_mod
from . import calibration, exact, generators, greedy
from .epsnet import (
    NetConfig,
    build_epsnet,
    decay_profile,
    load_points,
    net_to_obj,
    save_points,
)
from .errors import (
    BgDivergenceError,
    BudgetExceededError,
    DegenerateInputError,
    InfeasibleError,
    MalformedInputError,
    NetSampleFailureError,
)
from .flowcheck import max_cover_value
from .hitting import hitting_to_obj, load_rects, save_rects, solve_hitting
from .setsystem import (
    canonical_json,
    cover_to_obj,
    load_instance,
    save_instance,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_MALFORMED = 3
EXIT_BUDGET = 4


def _warn(msg: str) -> None:
    print(f"coverkit: warning: {msg}", file=sys.stderr)


def _fail(msg: str) -> None:
    print(f"coverkit: error: {msg}", file=sys.stderr)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"bad eps {text!r}: {exc}") from exc
    if not 0 < eps <= 1:
        raise MalformedInputError(f"eps must be in (0, 1], got {eps}")
    return eps


def _parse_seeds(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(t) for t in text.split(",") if t)


def _points_in_position(points, seed: int):
    """Repair tied coordinates with seeded jitter, warning on stderr."""
    if points.in_general_position():
        return points
    repaired = generators.repair_general_position(points, seed)
    n_tied = points.n - min(
        len(set(points.xs.tolist())), len(set(points.ys.tolist()))
    )
    _warn(
        f"input has tied coordinates; applied seeded rank-preserving jitter "
        f"(seed={seed}, ~{max(1, n_tied)} tied values)"
    )
    return repaired


def _cmd_gen(args) -> int:
    kind = args.kind
    out = args.out
    if kind == "random-cover":
        if args.feasible:
            inst = generators.feasible_cover_instance(
                args.n, args.m, args.seed, k_max=args.k_max,
                cost_max=args.cost_max, density=args.density,
            )
        else:
            inst = generators.random_cover_instance(
                args.n, args.m, args.seed, k_max=args.k_max,
                cost_max=args.cost_max, density=args.density,
            )
        save_instance(out, inst)
    elif kind == "antenna":
        scene = generators.antenna_scene(args.users, args.stations, args.seed)
        inst = generators.antenna_instance(scene)
        save_instance(out, inst)
        scene_path = (
            str(Path(out).with_suffix("")) + ".scene.json"
            if out != "-"
            else "-"
        )
        _write_text(scene_path, canonical_json(generators.scene_to_obj(scene)))
    elif kind == "uniform-points":
        save_points(out, generators.uniform_points(args.n, args.seed))
    elif kind == "clustered-points":
        save_points(
            out,
            generators.clustered_points(
                args.n, args.seed, clusters=args.clusters, spread=args.spread
            ),
        )
    elif kind == "staircase":
        save_points(out, generators.staircase_points(args.s))
    elif kind == "grid":
        save_points(out, generators.grid_points(args.side))
    else:  # pragma: no cover - argparse restricts choices
        raise MalformedInputError(f"unknown generator kind {kind}")
    return EXIT_OK


def _cmd_feas(args) -> int:
    inst = load_instance(args.instance)
    value = max_cover_value(inst, inst.set_ids).value
    feasible = value == inst.n_elements
    print(f"f={value} n={inst.n_elements} {'FEASIBLE' if feasible else 'INFEASIBLE'}")
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def _cmd_cover(args) -> int:
    inst = load_instance(args.instance)
    value = max_cover_value(inst, inst.set_ids).value
    if value < inst.n_elements:
        _fail(
            f"infeasible: only {value} of {inst.n_elements} elements coverable"
        )
        return EXIT_INFEASIBLE
    trace = greedy.solve_capacitated(inst)
    _write_text(args.out, canonical_json(cover_to_obj(inst, trace.cover)))
    if args.trace:
        _write_text(args.trace, canonical_json(greedy.trace_to_obj(trace)))
    if args.exact:
        opt = exact.opt_capacitated_cover(inst)
        hn = greedy.harmonic(inst.n_elements)
        certified = trace.cost <= hn * opt.cost
        print(
            f"greedy={float(trace.cost)} opt={float(opt.cost)} "
            f"H_n={float(hn):.6f} certified={certified}",
            file=sys.stderr,
        )
        if not certified:
            return EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_epsnet(args) -> int:
    points = _points_in_position(load_points(args.points), args.seed)
    cfg = NetConfig(
        eps=_parse_eps(args.eps), c=args.c, k_hw=args.k_hw, seed=args.seed
    )
    result = build_epsnet(points, cfg)
    obj = net_to_obj(points, result)
    if args.verify:
        check = exact.verify_epsnet(points, cfg.eps, result.net)
        obj["verified"] = bool(check.ok)
        if not check.ok:
            _fail(
                f"net check failed: rectangle {check.witness} holds "
                f"{check.witness_count} points and no net point"
            )
            _write_text(args.out, canonical_json(obj))
            return EXIT_INFEASIBLE
    _write_text(args.out, canonical_json(obj))
    if args.profile:
        lines = ["# coverkit decay-profile format_version=1", "level,j,count"]
        lines += [f"{lev},{j},{c}" for lev, j, c in decay_profile(result)]
        _write_text(args.profile, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_hitset(args) -> int:
    points = _points_in_position(load_points(args.points), args.seed)
    rects = load_rects(args.rects)
    result = solve_hitting(points, rects, seed=args.seed)
    obj = hitting_to_obj(result)
    if args.exact:
        opt = exact.opt_hitting_set(points, rects.as_query_array())
        obj["opt_size"] = len(opt)
        print(
            f"hitters={len(result.hitters)} opt={len(opt)}",
            file=sys.stderr,
        )
    _write_text(args.out, canonical_json(obj))
    return EXIT_OK


def _cmd_bench(args) -> int:
    suite = args.suite
    if suite == "net-size":
        eps_list = (
            tuple(_parse_eps(t) for t in args.eps.split(","))
            if args.eps
            else bench_mod.DEFAULT_EPS_SWEEP
        )
        header, rows = bench_mod.net_size_suite(
            eps_list=eps_list, n=args.n or 100_000, seeds=_parse_seeds(args.seeds)
        )
    elif suite == "decay":
        header, rows = bench_mod.decay_suite(
            n=args.n or 5000,
            eps=_parse_eps(args.eps) if args.eps else Fraction(1, 20),
            seeds=_parse_seeds(args.seeds),
        )
    elif suite == "ratio":
        header, rows = bench_mod.ratio_suite(count=args.count, base_seed=args.base_seed)
    elif suite == "kernels":
        header, rows = bench_mod.kernels_suite(scale=args.scale, seed=args.base_seed)
    else:  # pragma: no cover
        raise MalformedInputError(f"unknown suite {suite}")
    _write_text(args.out, bench_mod.rows_to_csv(suite, header, rows))
    if "ok" in header and any(row[header.index("ok")] == 0 for row in rows):
        _fail("one or more bench rows failed their bound")
        return EXIT_INFEASIBLE
    if "matches_pure" in header and any(
        row[header.index("matches_pure")] == 0 for row in rows
    ):
        _fail("backend outputs diverged")
        return EXIT_INFEASIBLE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coverkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="seeded instance / point generators")
    g.add_argument(
        "kind",
        choices=[
            "random-cover",
            "antenna",
            "uniform-points",
            "clustered-points",
            "staircase",
            "grid",
        ],
    )
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--n", type=int, default=20)
    g.add_argument("--m", type=int, default=6)
    g.add_argument("--k-max", type=int, default=3)
    g.add_argument("--cost-max", type=int, default=10)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--feasible", action="store_true")
    g.add_argument("--users", type=int, default=30)
    g.add_argument("--stations", type=int, default=8)
    g.add_argument("--s", type=int, default=10)
    g.add_argument("--side", type=int, default=10)
    g.add_argument("--clusters", type=int, default=8)
    g.add_argument("--spread", type=float, default=0.02)
    g.set_defaults(func=_cmd_gen)

    f = sub.add_parser("feas", help="check instance feasibility via max flow")
    f.add_argument("instance")
    f.set_defaults(func=_cmd_feas)

    c = sub.add_parser("cover", help="greedy capacitated cover")
    c.add_argument("instance")
    c.add_argument("--out", default="-")
    c.add_argument("--trace", default=None)
    c.add_argument("--exact", action="store_true", help="compare against the exact optimum")
    c.set_defaults(func=_cmd_cover)

    e = sub.add_parser("epsnet", help="build a small epsilon-net over points")
    e.add_argument("points")
    e.add_argument("--eps", required=True)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--c", type=float, default=calibration.C_FIRST_LEVEL)
    e.add_argument("--k-hw", type=float, default=calibration.K_HW)
    e.add_argument("--out", default="-")
    e.add_argument("--verify", action="store_true")
    e.add_argument("--profile", default=None, help="write the decay CSV here")
    e.set_defaults(func=_cmd_epsnet)

    h = sub.add_parser("hitset", help="hitting set for rectangles")
    h.add_argument("points")
    h.add_argument("rects")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--out", default="-")
    h.add_argument("--exact", action="store_true")
    h.set_defaults(func=_cmd_hitset)

    b = sub.add_parser("bench", help="deterministic sweeps and kernel timings")
    b.add_argument("suite", choices=sorted(bench_mod.SUITES))
    b.add_argument("--out", default="-")
    b.add_argument("--n", type=int, default=None)
    b.add_argument("--eps", default=None)
    b.add_argument("--seeds", default="0..19")
    b.add_argument("--count", type=int, default=500)
    b.add_argument("--base-seed", type=int, default=0)
    b.add_argument("--scale", type=int, default=1)
    b.set_defaults(func=_cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInputError as exc:
        _fail(str(exc))
        return EXIT_MALFORMED
    except DegenerateInputError as exc:
        _fail(f"degenerate input: {exc}")
        return EXIT_MALFORMED
    except InfeasibleError as exc:
        _fail(str(exc))
        return EXIT_INFEASIBLE
    except (BudgetExceededError, NetSampleFailureError) as exc:
        _fail(str(exc))
        return EXIT_BUDGET
    except BgDivergenceError as exc:
        _fail(str(exc))
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
