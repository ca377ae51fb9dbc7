"""Benchmark / sweep suites behind the `coverkit bench` command.

Three science suites (net-size, decay, ratio) are fully deterministic —
their CSV output is part of the byte-identical reproducibility contract.
The kernels suite times compiled vs pure backends and is the one suite
whose rows contain wall-clock values.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, calibration, exact, generators, greedy
from .epsnet import NetConfig, build_epsnet, loglog2

DEFAULT_EPS_SWEEP = (
    Fraction(1, 8),
    Fraction(1, 16),
    Fraction(1, 32),
    Fraction(1, 64),
    Fraction(1, 128),
)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(float(v))  # plain float repr, even for numpy scalars
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def rows_to_csv(suite: str, header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [f"# coverkit bench {suite} format_version=1", ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def net_size_suite(
    eps_list: Sequence[Fraction] = DEFAULT_EPS_SWEEP,
    n: int = 100_000,
    seeds: Sequence[int] = tuple(range(20)),
    c: float = calibration.C_FIRST_LEVEL,
    k_hw: float = calibration.K_HW,
):
    """Mean net size against the 1/eps * loglog(1/eps) target.

    ok per row: mean(|N|) * eps <= C_SIZE * loglog2(2/eps).
    """
    header = (
        "eps",
        "n",
        "seeds",
        "mean_first_level",
        "mean_net",
        "mean_net_times_eps",
        "loglog",
        "normalized",
        "bound",
        "ok",
    )
    rows = []
    for eps in eps_list:
        eps = Fraction(eps)
        sizes = []
        firsts = []
        for seed in seeds:
            pts = generators.uniform_points(n, seed)
            res = build_epsnet(pts, NetConfig(eps=eps, c=c, k_hw=k_hw, seed=seed))
            sizes.append(res.net.size)
            firsts.append(res.first_level.size)
        mean_net = float(np.mean(sizes))
        scaled = mean_net * float(eps)
        ll = loglog2(float(2 / eps))
        bound = calibration.C_SIZE * ll
        rows.append(
            (
                eps,
                n,
                len(seeds),
                float(np.mean(firsts)),
                mean_net,
                scaled,
                ll,
                scaled / ll,
                bound,
                int(scaled <= bound),
            )
        )
    return header, rows


def decay_suite(
    n: int = 5000,
    eps: Fraction = Fraction(1, 20),
    seeds: Sequence[int] = tuple(range(50)),
    c: float = calibration.C_FIRST_LEVEL,
    k_hw: float = calibration.K_HW,
    j_max: int = 8,
):
    """Mean count of rectangles with weight >= j, per j (and per level).

    Rows: (scope, level, j, mean_count); scope 'total' sums all levels.
    """
    eps = Fraction(eps)
    header = ("scope", "level", "j", "mean_count")
    totals = np.zeros(j_max + 1, dtype=np.float64)
    per_level: dict[int, np.ndarray] = {}
    for seed in seeds:
        pts = generators.uniform_points(n, seed)
        res = build_epsnet(pts, NetConfig(eps=eps, c=c, k_hw=k_hw, seed=seed))
        width = res.decay.shape[1]
        for lev in range(res.levels):
            acc = per_level.setdefault(lev, np.zeros(j_max + 1, dtype=np.float64))
            for j in range(j_max + 1):
                acc[j] += res.decay[lev, j] if j < width else 0
        for j in range(j_max + 1):
            totals[j] += res.decay[:, j].sum() if j < width else 0
    k = len(seeds)
    rows = []
    for j in range(j_max + 1):
        rows.append(("total", -1, j, float(totals[j] / k)))
    for lev in sorted(per_level):
        for j in range(j_max + 1):
            rows.append(("level", lev, j, float(per_level[lev][j] / k)))
    return header, rows


def ratio_suite(count: int = 500, base_seed: int = 0):
    """Greedy cost vs exact optimum on seeded feasible instances.

    ok per row: greedy <= H_n * OPT (checked in exact rational
    arithmetic; the CSV carries floats for readability).
    """
    header = (
        "seed",
        "n",
        "m",
        "greedy_cost",
        "opt_cost",
        "harmonic",
        "ratio",
        "ok",
    )
    rows = []
    for t in range(count):
        n = 4 + t % 7  # 4..10
        m = 3 + t % 4  # 3..6
        inst = generators.feasible_cover_instance(n, m, seed=base_seed + t)
        trace = greedy.solve_capacitated(inst)
        opt = exact.opt_capacitated_cover(inst)
        hn = greedy.harmonic(n)
        ok = trace.cost <= hn * opt.cost
        ratio = (
            float(trace.cost / opt.cost) if opt.cost != 0 else float(trace.cost == 0)
        )
        rows.append(
            (
                base_seed + t,
                n,
                m,
                float(trace.cost),
                float(opt.cost),
                float(hn),
                ratio,
                int(ok),
            )
        )
    return header, rows


def _bench_flow_input(seed: int, n_nodes: int, n_arcs: int):
    rng = np.random.default_rng([seed, 20])
    tails = rng.integers(0, n_nodes - 1, size=n_arcs)
    heads = rng.integers(1, n_nodes, size=n_arcs)
    fix = tails == heads
    heads[fix] = (heads[fix] + 1) % n_nodes
    caps = rng.integers(1, 64, size=n_arcs)
    return n_nodes, tails, heads, caps, 0, n_nodes - 1


def kernels_suite(scale: int = 1, seed: int = 0):
    """Compiled vs pure timing comparison (wall clock; rows are NOT part
    of the determinism contract). Outputs are cross-checked per row."""
    header = ("kernel", "size", "backend", "seconds", "matches_pure")
    backends = _kernels.available_backends()
    rng = np.random.default_rng([seed, 21])
    rows = []

    def run(kernel_name, size_label, call):
        t0 = time.perf_counter()
        ref = call(backends["pure"])
        dt = time.perf_counter() - t0
        rows.append((kernel_name, size_label, "pure", dt, 1))
        for name in sorted(backends):
            if name == "pure":
                continue
            impl = backends[name]
            t0 = time.perf_counter()
            out = call(impl)
            dt = time.perf_counter() - t0
            rows.append((kernel_name, size_label, name, dt, int(_same(out, ref))))

    flow_args = _bench_flow_input(seed, 300 * scale, 3000 * scale)
    run("max_flow", flow_args[0], lambda impl: _kernels.max_flow(*flow_args, impl=impl))

    npts = 20000 * scale
    px, py = rng.random(npts), rng.random(npts)
    centers = rng.random((4000 * scale, 2))
    rects = np.stack(
        [
            centers[:, 0] - 0.05,
            centers[:, 0] + 0.05,
            centers[:, 1] - 0.05,
            centers[:, 1] + 0.05,
        ],
        axis=1,
    )
    run(
        "count_in_rects",
        npts,
        lambda impl: _kernels.count_in_rects(px, py, rects, closed=True, impl=impl),
    )

    ka = 2000 * scale
    ax, ay = rng.random(ka), rng.random(ka)
    run(
        "anchored_empty_rects",
        ka,
        lambda impl: _kernels.anchored_empty_rects(ax, ay, -0.5, 1.5, True, impl=impl),
    )

    ke = 400 * scale
    ex, ey = rng.random(ke), rng.random(ke)
    run("all_empty_rects", ke, lambda impl: _kernels.all_empty_rects(ex, ey, impl=impl))
    return header, rows


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return bool(np.array_equal(a, b))
    return a == b


SUITES = {
    "net-size": net_size_suite,
    "decay": decay_suite,
    "ratio": ratio_suite,
    "kernels": kernels_suite,
}
