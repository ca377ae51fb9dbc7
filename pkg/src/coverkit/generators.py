"""Seeded instance and point-set generators.

Every generator is a pure function of its parameters (seed included);
there is no ambient randomness anywhere. RNG substreams use
numpy's default_rng over [seed, salt] sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .epsnet import PointSet
from .errors import MalformedInputError
from .hitting import RectSet
from .setsystem import SetCoverInstance, make_instance


def random_cover_instance(
    n: int,
    m: int,
    seed: int,
    k_max: int = 3,
    cost_max: int = 10,
    density: float = 0.5,
) -> SetCoverInstance:
    """Random capacitated instance: each of the m sets takes each element
    with probability ``density``; capacities uniform in 1..k_max, integer
    costs uniform in 1..cost_max."""
    if n < 0 or m < 0 or k_max < 1 or cost_max < 1 or not 0 < density <= 1:
        raise MalformedInputError("bad generator parameters")
    rng = np.random.default_rng([int(seed), 10])
    raw = []
    for sid in range(m):
        members = np.flatnonzero(rng.random(n) < density)
        capacity = int(rng.integers(1, k_max + 1))
        cost = int(rng.integers(1, cost_max + 1))
        raw.append((sid, [int(e) for e in members], Fraction(cost), capacity))
    return make_instance(n, raw)


def feasible_cover_instance(
    n: int,
    m: int,
    seed: int,
    k_max: int = 3,
    cost_max: int = 10,
    density: float = 0.5,
    max_tries: int = 64,
) -> SetCoverInstance:
    """A feasible seeded instance: first feasible draw from
    random_cover_instance over derived sub-seeds, or — when every draw is
    infeasible (e.g. m * k_max < n makes feasibility impossible) — the
    first draw repaired deterministically.

    The repair loop grows the max coverable value by one per step: it
    takes the lowest unassigned element e in a maximum assignment, puts e
    into set (e mod m), and raises that set's capacity if the assignment
    already saturates it. Either change opens an augmenting path through
    that set, so the loop ends after at most n steps.
    """
    if m < 1:
        raise MalformedInputError("feasible instance needs at least one set")
    from .flowcheck import is_feasible, max_cover_value

    first = None
    for t in range(max_tries):
        inst = random_cover_instance(
            n, m, seed=_mix(seed, 11, t), k_max=k_max, cost_max=cost_max, density=density
        )
        if t == 0:
            first = inst
        if is_feasible(inst):
            return inst

    inst = first
    family = list(inst.set_ids)
    while True:
        cv = max_cover_value(inst, family)
        if cv.value >= n:
            return inst
        assigned = cv.witness.assigned_elements
        elem = min(e for e in range(n) if e not in assigned)
        sid = elem % m
        entry = inst.sets[sid]
        members = list(entry.members)
        capacity = entry.capacity
        if elem not in members:
            members = sorted(members + [elem])
        used = sum(1 for s, _ in cv.witness.pairs if s == sid)
        if used >= capacity:
            capacity += 1
        raw = [
            (
                s.id,
                list(s.members) if s.id != sid else members,
                s.cost,
                s.capacity if s.id != sid else capacity,
            )
            for s in inst.sets
        ]
        inst = make_instance(n, raw)


def _mix(*parts: int) -> int:
    """Stable scalar sub-seed from a tuple of ints."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


@dataclass(frozen=True)
class AntennaScene:
    """Users and base stations on the plane; a station covers the users
    inside its radius, serving at most ``capacity`` of them."""

    user_x: np.ndarray
    user_y: np.ndarray
    station_x: np.ndarray
    station_y: np.ndarray
    radius: np.ndarray
    capacity: np.ndarray
    cost: np.ndarray


def antenna_scene(users: int, stations: int, seed: int) -> AntennaScene:
    rng = np.random.default_rng([int(seed), 12])
    return AntennaScene(
        user_x=rng.random(users),
        user_y=rng.random(users),
        station_x=rng.random(stations),
        station_y=rng.random(stations),
        radius=0.15 + 0.25 * rng.random(stations),
        capacity=rng.integers(1, 6, size=stations),
        cost=rng.integers(1, 11, size=stations),
    )


def antenna_instance(scene: AntennaScene) -> SetCoverInstance:
    """Reduce a scene to a capacitated cover instance (membership =
    squared distance within squared radius, exact float comparison)."""
    raw = []
    for sid in range(scene.station_x.size):
        d2 = (scene.user_x - scene.station_x[sid]) ** 2 + (
            scene.user_y - scene.station_y[sid]
        ) ** 2
        members = [int(e) for e in np.flatnonzero(d2 <= scene.radius[sid] ** 2)]
        raw.append(
            (sid, members, Fraction(int(scene.cost[sid])), int(scene.capacity[sid]))
        )
    return make_instance(int(scene.user_x.size), raw)


def scene_to_obj(scene: AntennaScene) -> dict:
    return {
        "format_version": 1,
        "users": [[float(x), float(y)] for x, y in zip(scene.user_x, scene.user_y)],
        "stations": [
            {
                "x": float(scene.station_x[i]),
                "y": float(scene.station_y[i]),
                "radius": float(scene.radius[i]),
                "capacity": int(scene.capacity[i]),
                "cost": int(scene.cost[i]),
            }
            for i in range(scene.station_x.size)
        ],
    }


# ---------------------------------------------------------------------------
# Point sets


def uniform_points(n: int, seed: int) -> PointSet:
    """n points uniform in the unit square, general position enforced
    (coordinate collisions are astronomically unlikely; retry on one)."""
    for attempt in range(16):
        rng = np.random.default_rng([int(seed), 13, attempt])
        pts = PointSet(rng.random(n), rng.random(n))
        if n == 0 or pts.in_general_position():
            return pts
    raise MalformedInputError("could not draw points in general position")


def clustered_points(n: int, seed: int, clusters: int = 8, spread: float = 0.02) -> PointSet:
    """Gaussian clusters around uniform centres; heavier local densities
    than the uniform generator."""
    for attempt in range(16):
        rng = np.random.default_rng([int(seed), 14, attempt])
        centres = rng.random((clusters, 2))
        which = rng.integers(0, clusters, size=n)
        xy = centres[which] + rng.normal(scale=spread, size=(n, 2))
        pts = PointSet(xy[:, 0], xy[:, 1])
        if n == 0 or pts.in_general_position():
            return pts
    raise MalformedInputError("could not draw points in general position")


def staircase_points(s: int) -> PointSet:
    """Matched double staircase with 2s points and Theta(s^2) maximal
    empty rectangles: lower run (i, -i), upper run (i + 0.5, s - i + 0.5)
    for i = 1..s. For every 1 <= i <= j <= s-1 the rectangle
    [i, j+1.5] x [-i-1, s-j+0.5] is maximal and empty, giving at least
    s(s-1)/2 of them."""
    if s < 1:
        raise MalformedInputError("s must be >= 1")
    i = np.arange(1, s + 1, dtype=np.float64)
    xs = np.concatenate([i, i + 0.5])
    ys = np.concatenate([-i, s - i + 0.5])
    return PointSet(xs, ys)


def grid_points(side: int) -> PointSet:
    """side x side integer grid — deliberately degenerate (massive
    coordinate ties) to exercise repair paths."""
    if side < 1:
        raise MalformedInputError("side must be >= 1")
    g = np.arange(side, dtype=np.float64)
    gx, gy = np.meshgrid(g, g, indexing="ij")
    return PointSet(gx.ravel(), gy.ravel())


def repair_general_position(points: PointSet, seed: int) -> PointSet:
    """Deterministic seeded jitter that breaks coordinate ties while
    preserving the order of distinct values (ties get a seeded order).

    Each run of tied values is spread across a fraction of the gap to
    the next distinct value (or of the median gap at the top end).
    """
    rng = np.random.default_rng([int(seed), 15])
    out = []
    for arr in (points.xs, points.ys):
        vals = arr.copy()
        order = np.argsort(vals, kind="stable")
        sorted_vals = vals[order]
        uniq = np.unique(sorted_vals)
        if uniq.size == vals.size:
            out.append(vals)
            continue
        if uniq.size > 1:
            gaps = np.diff(uniq)
            fallback_gap = float(np.median(gaps))
        else:
            fallback_gap = 1.0
        pos = 0
        nvals = vals.size
        while pos < nvals:
            end = pos
            while end + 1 < nvals and sorted_vals[end + 1] == sorted_vals[pos]:
                end += 1
            run = end - pos + 1
            if run > 1:
                base = sorted_vals[pos]
                nxt = np.searchsorted(uniq, base) + 1
                gap = (uniq[nxt] - base) if nxt < uniq.size else fallback_gap
                span = 0.25 * gap
                perm = rng.permutation(run)
                for t in range(run):
                    vals[order[pos + t]] = base + span * (perm[t] + 1) / (run + 1)
            pos = end + 1
        out.append(vals)
    repaired = PointSet(out[0], out[1])
    if not repaired.in_general_position():
        raise MalformedInputError("jitter failed to reach general position")
    return repaired


# ---------------------------------------------------------------------------
# Hitting-set instances


def hitting_instance(
    n_points: int, n_rects: int, seed: int
) -> tuple[PointSet, RectSet]:
    """Random points plus rectangles spanned by point pairs (so every
    rectangle contains at least one point); a third are singleton boxes."""
    if n_points < 1 or n_rects < 0:
        raise MalformedInputError("need n_points >= 1 and n_rects >= 0")
    pts = uniform_points(n_points, _mix(seed, 16))
    rng = np.random.default_rng([int(seed), 17])
    rows = []
    for j in range(n_rects):
        if j % 3 == 2:
            i = int(rng.integers(0, n_points))
            pad = 1e-4 * (1.0 + rng.random())
            rows.append(
                (pts.xs[i] - pad, pts.ys[i] - pad, pts.xs[i] + pad, pts.ys[i] + pad)
            )
        else:
            a, b = rng.integers(0, n_points, size=2)
            x0, x1 = sorted((float(pts.xs[a]), float(pts.xs[b])))
            y0, y1 = sorted((float(pts.ys[a]), float(pts.ys[b])))
            rows.append((x0, y0, x1, y1))
    return pts, RectSet.from_rows(rows)


def example_cover_instance() -> SetCoverInstance:
    """Six elements, four sets; the classic example where greedy by
    cost-per-new-element matches the optimum cost of 6."""
    return make_instance(
        6,
        [
            (0, [0, 1], Fraction(1), 2),
            (1, [1, 2, 3], Fraction(2), 3),
            (2, [3, 4, 5], Fraction(5), 3),
            (3, [4, 5], Fraction(3), 2),
        ],
    )


def validity_example_instance() -> SetCoverInstance:
    """Nine elements, three sets; companion fixture for cover-validity
    tests (set 0 = {0,2,3}, set 1 = {1,4,5}, set 2 = {2,4,7,8})."""
    return make_instance(
        9,
        [
            (0, [0, 2, 3], Fraction(1), 3),
            (1, [1, 4, 5], Fraction(1), 3),
            (2, [2, 4, 7, 8], Fraction(1), 4),
        ],
    )
