"""Exact brute-force oracles and verifiers.

Everything in this module is deliberately independent of the production
algorithms it is used to check:

* ``max_assignment_value`` — capacity-lattice DP over element->set
  assignment maps (no flow), with a literal product-enumeration twin for
  tiny instances.
* ``opt_capacitated_cover`` — exhaustive subset enumeration with cost
  pruning; witnesses come from a plain augmenting-path matcher.
* ``opt_hitting_set`` — branch and bound over candidate points.
* ``enum_maximal_empty_rects`` — candidate-filter enumeration of maximal
  empty rectangles (optionally anchored to a strip side).
* ``verify_epsnet`` / ``verify_epsnet_slow`` — net checkers; the fast one
  walks maximal net-empty rectangles, the slow one scans all O(n^4)
  tight rectangles on a prefix grid.
* ``verify_weighted_epsnet`` — the weighted variant with exact integer
  weight sums.

All enumeration respects an OracleBudget; exceeding it raises
BudgetExceededError rather than silently truncating.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import BudgetExceededError, InfeasibleError, MalformedInputError
from .setsystem import AssignmentCover, SetCoverInstance

_INF = float("inf")


@dataclass(frozen=True)
class OracleBudget:
    max_subsets: int = 1 << 20
    max_rect_candidates: int = 10**7
    timeout_s: float | None = None


_DEFAULT_BUDGET = OracleBudget()


class _Deadline:
    def __init__(self, budget: OracleBudget):
        self.limit = budget.timeout_s
        self.start = time.perf_counter()

    def check(self):
        if self.limit is not None and time.perf_counter() - self.start > self.limit:
            raise BudgetExceededError(f"oracle timeout after {self.limit} s")


def _to_fraction(eps) -> Fraction:
    """Coerce a threshold to an exact Fraction; floats go through their
    shortest decimal repr so 0.05 means 1/20, not the binary neighbour."""
    if isinstance(eps, Fraction):
        f = eps
    elif isinstance(eps, float):
        f = Fraction(repr(eps))
    else:
        f = Fraction(eps)
    if not (0 < f <= 1):
        raise MalformedInputError(f"eps must lie in (0, 1], got {f}")
    return f


def _coords(points):
    """Accept a PointSet-like object or a (xs, ys) pair of arrays."""
    if hasattr(points, "xs") and hasattr(points, "ys"):
        return np.asarray(points.xs, dtype=np.float64), np.asarray(
            points.ys, dtype=np.float64
        )
    xs, ys = points
    return np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64)


# ---------------------------------------------------------------------------
# Assignment maximum (capacitated), no flow involved


def max_assignment_value(inst: SetCoverInstance, family: Iterable[int]) -> int:
    """Maximum number of elements assignable to the family under
    membership and capacity constraints.

    DP over the lattice of remaining-capacity vectors, processing one
    element at a time; equivalent to maximizing over every
    element -> (set | unassigned) map, in O(n * m * prod(cap_i + 1)).
    """
    fam = sorted(set(int(s) for s in family))
    for s in fam:
        if not (0 <= s < len(inst.sets)):
            raise MalformedInputError(f"family references unknown set {s}")
    if not fam:
        return 0
    caps = [min(inst.sets[s].capacity, len(inst.sets[s].members)) for s in fam]
    dims = tuple(c + 1 for c in caps)
    pos = {s: i for i, s in enumerate(fam)}
    dp = np.zeros(dims, dtype=np.int64)
    for e in range(inst.n_elements):
        owners = [pos[s] for s in fam if e in inst.sets[s].members]
        if not owners:
            continue
        new = dp.copy()
        for axis in owners:
            take = [slice(None)] * len(dims)
            give = [slice(None)] * len(dims)
            take[axis] = slice(1, None)  # remaining capacity >= 1
            give[axis] = slice(0, -1)  # one unit spent
            np.maximum(new[tuple(give)], dp[tuple(take)] + 1, out=new[tuple(give)])
        dp = new
    return int(dp.max())


def max_assignment_value_bruteforce(inst: SetCoverInstance, family: Iterable[int]) -> int:
    """Literal enumeration of every element -> (set | unassigned) map.

    Exponential; guarded to tiny instances. Exists to validate the DP.
    """
    fam = sorted(set(int(s) for s in family))
    n = inst.n_elements
    if (len(fam) + 1) ** n > 10**7:
        raise BudgetExceededError("bruteforce assignment enumeration too large")
    best = 0
    choices = [
        [-1] + [s for s in fam if e in inst.sets[s].members] for e in range(n)
    ]
    for assign in itertools.product(*choices):
        load: dict[int, int] = {}
        ok = True
        value = 0
        for s in assign:
            if s < 0:
                continue
            load[s] = load.get(s, 0) + 1
            if load[s] > inst.sets[s].capacity:
                ok = False
                break
            value += 1
        if ok and value > best:
            best = value
    return best


def _match_assignment(inst: SetCoverInstance, family: Sequence[int]) -> list[tuple[int, int]]:
    """Maximum assignment via augmenting paths on capacity slots
    (independent of the flow kernel). Returns (set_id, element) pairs."""
    fam = sorted(set(family))
    slots: list[int] = []  # slot index -> set id
    slot_of_set: dict[int, list[int]] = {}
    for s in fam:
        cap = min(inst.sets[s].capacity, len(inst.sets[s].members))
        slot_of_set[s] = list(range(len(slots), len(slots) + cap))
        slots.extend([s] * cap)
    owner = [-1] * len(slots)  # slot -> element
    adj: list[list[int]] = []
    for e in range(inst.n_elements):
        opts: list[int] = []
        for s in fam:
            if e in inst.sets[s].members:
                opts.extend(slot_of_set[s])
        adj.append(opts)

    def try_elem(e: int, seen: set[int]) -> bool:
        for slot in adj[e]:
            if slot in seen:
                continue
            seen.add(slot)
            if owner[slot] < 0 or try_elem(owner[slot], seen):
                owner[slot] = e
                return True
        return False

    for e in range(inst.n_elements):
        try_elem(e, set())
    return sorted((slots[i], e) for i, e in enumerate(owner) if e >= 0)


@dataclass(frozen=True)
class ExactCover:
    cost: Fraction
    chosen: frozenset[int]
    cover: AssignmentCover


def opt_capacitated_cover(
    inst: SetCoverInstance, budget: OracleBudget | None = None
) -> ExactCover:
    """Minimum-cost complete cover by exhaustive family enumeration.

    Deterministic: among minimum-cost families the one with the smallest
    subset bitmask wins. Raises InfeasibleError (carrying the best
    achievable covered count) when no family covers everything.
    """
    budget = budget or _DEFAULT_BUDGET
    deadline = _Deadline(budget)
    m = len(inst.sets)
    if 1 << m > budget.max_subsets:
        raise BudgetExceededError(f"2^{m} families exceeds max_subsets={budget.max_subsets}")
    n = inst.n_elements
    costs = [s.cost for s in inst.sets]
    best_cost: Fraction | None = None
    best_mask = -1
    for mask in range(1 << m):
        if mask % 1024 == 0:
            deadline.check()
        fam = [i for i in range(m) if mask >> i & 1]
        cost = sum((costs[i] for i in fam), Fraction(0))
        if best_cost is not None and cost >= best_cost:
            continue
        if inst.total_capacity(fam) < n:
            continue
        if max_assignment_value(inst, fam) == n:
            best_cost = cost
            best_mask = mask
    if best_cost is None:
        raise InfeasibleError(
            "no complete cover exists",
            achieved=max_assignment_value(inst, range(m)),
        )
    fam = [i for i in range(m) if best_mask >> i & 1]
    pairs = _match_assignment(inst, fam)
    assert len(pairs) == n
    return ExactCover(
        cost=best_cost,
        chosen=frozenset(fam),
        cover=AssignmentCover.from_pairs(fam, pairs),
    )


# ---------------------------------------------------------------------------
# Minimum hitting set for rectangles (branch and bound)


def _containment_matrix(xs, ys, rects) -> np.ndarray:
    """bool[point, rect] closed containment. ``rects`` is either an array
    of (x0, x1, y0, y1) rows or any object with ``as_query_array()``."""
    if hasattr(rects, "as_query_array"):
        rects = rects.as_query_array()
    rects = np.asarray(rects, dtype=np.float64).reshape(-1, 4)
    px = xs[:, None]
    py = ys[:, None]
    return (
        (px >= rects[None, :, 0])
        & (px <= rects[None, :, 1])
        & (py >= rects[None, :, 2])
        & (py <= rects[None, :, 3])
    )


def opt_hitting_set(
    points, rects, budget: OracleBudget | None = None
) -> tuple[int, ...]:
    """A minimum-size set of point ids meeting every rectangle (closed
    containment). Deterministic branch and bound: always branches on the
    unhit rectangle with fewest candidate points, candidates in id order.
    """
    budget = budget or _DEFAULT_BUDGET
    deadline = _Deadline(budget)
    xs, ys = _coords(points)
    inside = _containment_matrix(xs, ys, rects)
    n_pts, n_rects = inside.shape
    for j in range(n_rects):
        if not inside[:, j].any():
            raise InfeasibleError(f"rectangle {j} contains no point", achieved=0)

    members = [tuple(np.flatnonzero(inside[:, j])) for j in range(n_rects)]
    rects_of_point = [tuple(np.flatnonzero(inside[i, :])) for i in range(n_pts)]

    # Greedy upper bound for pruning.
    unhit = set(range(n_rects))
    greedy: list[int] = []
    while unhit:
        gains = [sum(1 for j in rects_of_point[i] if j in unhit) for i in range(n_pts)]
        pick = max(range(n_pts), key=lambda i: (gains[i], -i))
        greedy.append(pick)
        unhit.difference_update(rects_of_point[pick])
    best: list[int] = sorted(greedy)
    nodes = 0

    def recurse(chosen: list[int], unhit: set[int]):
        nonlocal best, nodes
        nodes += 1
        if nodes % 4096 == 0:
            deadline.check()
        if nodes > budget.max_subsets:
            raise BudgetExceededError("hitting-set search exceeded max_subsets nodes")
        if not unhit:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        if len(chosen) + 1 >= len(best):
            return
        target = min(unhit, key=lambda j: (len(members[j]), j))
        for i in members[target]:
            newly = [j for j in rects_of_point[i] if j in unhit]
            chosen.append(i)
            unhit.difference_update(newly)
            recurse(chosen, unhit)
            chosen.pop()
            unhit.update(newly)

    recurse([], set(range(n_rects)))
    return tuple(best)


# ---------------------------------------------------------------------------
# Maximal empty rectangles, by brute-force candidate filtering


def enum_maximal_empty_rects(
    points,
    x_lo: float = -_INF,
    x_hi: float = _INF,
    anchor: str | None = None,
    budget: OracleBudget | None = None,
) -> np.ndarray:
    """All maximal point-empty rectangles inside the strip
    [x_lo, x_hi] x (-inf, inf), one row (x0, x1, y0, y1) each, in
    lexicographic order.

    A rectangle is maximal iff its interior is point-free and every side
    either lies on a strip boundary / at infinity or passes through a
    point whose other coordinate is strictly interior. ``anchor`` keeps
    only rectangles whose left ('L') or right ('R') side sits exactly on
    the corresponding strip boundary.

    Pure candidate-filter construction (every side combination is tried),
    kept simple on purpose: this is the oracle the production staircase
    enumeration is checked against.
    """
    budget = budget or _DEFAULT_BUDGET
    xs, ys = _coords(points)
    k = xs.size
    if k and not (np.all(xs > x_lo) and np.all(xs < x_hi)):
        raise MalformedInputError("points must lie strictly inside the strip")
    if anchor not in (None, "L", "R"):
        raise MalformedInputError("anchor must be None, 'L' or 'R'")

    x_left = np.concatenate(([x_lo], xs))
    x_right = np.concatenate(([x_hi], xs))
    y_bot = np.concatenate(([-_INF], ys))
    y_top = np.concatenate(([_INF], ys))
    if anchor == "L":
        x_left = np.array([x_lo])
    elif anchor == "R":
        x_right = np.array([x_hi])

    n_cand = x_left.size * x_right.size * y_bot.size * y_top.size
    if n_cand > budget.max_rect_candidates:
        raise BudgetExceededError(
            f"{n_cand} rectangle candidates exceed max_rect_candidates"
        )

    gx0, gx1, gy0, gy1 = np.meshgrid(x_left, x_right, y_bot, y_top, indexing="ij")
    cand = np.stack(
        [gx0.ravel(), gx1.ravel(), gy0.ravel(), gy1.ravel()], axis=1
    )
    cand = cand[(cand[:, 0] < cand[:, 1]) & (cand[:, 2] < cand[:, 3])]

    keep = np.zeros(len(cand), dtype=bool)
    chunk = 1 << 14
    for lo in range(0, len(cand), chunk):
        c = cand[lo : lo + chunk]
        x0 = c[:, 0:1]
        x1 = c[:, 1:2]
        y0 = c[:, 2:3]
        y1 = c[:, 3:4]
        in_x = (xs[None, :] > x0) & (xs[None, :] < x1)
        in_y = (ys[None, :] > y0) & (ys[None, :] < y1)
        empty = ~(in_x & in_y).any(axis=1)
        left_ok = (x0[:, 0] == x_lo) | ((xs[None, :] == x0) & in_y).any(axis=1)
        right_ok = (x1[:, 0] == x_hi) | ((xs[None, :] == x1) & in_y).any(axis=1)
        bot_ok = np.isneginf(y0[:, 0]) | ((ys[None, :] == y0) & in_x).any(axis=1)
        top_ok = np.isposinf(y1[:, 0]) | ((ys[None, :] == y1) & in_x).any(axis=1)
        keep[lo : lo + chunk] = empty & left_ok & right_ok & bot_ok & top_ok

    out = cand[keep]
    order = np.lexsort((out[:, 3], out[:, 2], out[:, 1], out[:, 0]))
    return out[order]


def count_all_maximal_empty_rects(points, budget: OracleBudget | None = None) -> int:
    """Oracle count of maximal empty rectangles in the whole plane."""
    return len(enum_maximal_empty_rects(points, budget=budget))


# ---------------------------------------------------------------------------
# Epsilon-net verification


@dataclass(frozen=True)
class NetCheck:
    ok: bool
    witness: tuple[float, float, float, float] | None
    witness_count: int | None
    rects_checked: int


def _canonical_rect_order(rects: np.ndarray) -> np.ndarray:
    return rects[np.lexsort((rects[:, 3], rects[:, 2], rects[:, 1], rects[:, 0]))]


def verify_epsnet(points, eps, net_ids) -> NetCheck:
    """Does every axis-parallel rectangle holding >= eps * n points meet
    the net?

    Equivalent finite check: enumerate the maximal net-empty open
    rectangles and count strict-interior points in each (a violating
    closed rectangle with net points only on its boundary shrinks to an
    open one, so open interiors are exact here). Threshold comparison is
    exact rational.
    """
    eps = _to_fraction(eps)
    xs, ys = _coords(points)
    n = xs.size
    net = np.asarray(sorted(set(int(i) for i in net_ids)), dtype=np.int64)
    if net.size and (net[0] < 0 or net[-1] >= n):
        raise MalformedInputError("net ids outside the point set")
    if n == 0:
        return NetCheck(True, None, None, 0)
    rects = _kernels.all_empty_rects(xs[net], ys[net])
    rects = _canonical_rect_order(rects)
    counts = _kernels.count_in_rects(xs, ys, rects, closed=False)
    # count >= eps * n  <=>  count * den >= num * n
    heavy = counts * eps.denominator >= eps.numerator * n
    if heavy.any():
        j = int(np.flatnonzero(heavy)[0])
        return NetCheck(False, tuple(float(v) for v in rects[j]), int(counts[j]), len(rects))
    return NetCheck(True, None, None, len(rects))


def verify_epsnet_slow(points, eps, net_ids, max_points: int = 60) -> NetCheck:
    """Independent O(n^4) checker over all rank-tight closed rectangles.

    Any violating rectangle shrinks to the bounding box of its interior
    points, which is tight on point coordinates in both axes; scanning
    those on prefix-count grids is therefore exhaustive.
    """
    eps = _to_fraction(eps)
    xs, ys = _coords(points)
    n = xs.size
    if n > max_points:
        raise BudgetExceededError(f"slow verifier capped at {max_points} points")
    net = sorted(set(int(i) for i in net_ids))
    if net and not (0 <= net[0] and net[-1] < n):
        raise MalformedInputError("net ids outside the point set")
    if n == 0:
        return NetCheck(True, None, None, 0)

    xs_sorted = np.sort(xs)
    ys_sorted = np.sort(ys)
    xr = np.searchsorted(xs_sorted, xs)
    yr = np.searchsorted(ys_sorted, ys)
    grid = np.zeros((n + 1, n + 1), dtype=np.int64)
    grid[xr + 1, yr + 1] = 1
    grid = grid.cumsum(axis=0).cumsum(axis=1)
    net_grid = np.zeros((n + 1, n + 1), dtype=np.int64)
    net_mask = np.zeros(n, dtype=bool)
    net_mask[net] = True
    net_grid[xr[net_mask] + 1, yr[net_mask] + 1] = 1
    net_grid = net_grid.cumsum(axis=0).cumsum(axis=1)

    checked = 0
    for a in range(n):
        for b in range(a, n):
            # closed x-window = ranks [a..b]; vectorize over y-windows
            pts = grid[b + 1, 1:] - grid[a, 1:]  # prefix in y, shape (n,)
            netc = net_grid[b + 1, 1:] - net_grid[a, 1:]
            # counts for y-window [c..d]: pts[d] - pts[c-1]
            for c in range(n):
                below_p = pts[c - 1] if c > 0 else 0
                below_n = netc[c - 1] if c > 0 else 0
                wc = pts[c:] - below_p
                wn = netc[c:] - below_n
                checked += n - c
                bad = (wc * eps.denominator >= eps.numerator * n) & (wn == 0)
                if bad.any():
                    d = c + int(np.flatnonzero(bad)[0])
                    witness = (
                        float(xs_sorted[a]),
                        float(xs_sorted[b]),
                        float(ys_sorted[c]),
                        float(ys_sorted[d]),
                    )
                    return NetCheck(False, witness, int(wc[d - c]), checked)
    return NetCheck(True, None, None, checked)


def verify_weighted_epsnet(points, weights, eps, net_ids, max_points: int = 400) -> NetCheck:
    """Weighted variant: rectangles of weight >= eps * total must meet
    the net. Exact integer weight arithmetic, tight-rectangle scan."""
    eps = _to_fraction(eps)
    xs, ys = _coords(points)
    n = xs.size
    if n > max_points:
        raise BudgetExceededError(f"weighted verifier capped at {max_points} points")
    w = [int(v) for v in weights]
    if len(w) != n or any(v < 0 for v in w):
        raise MalformedInputError("weights must be non-negative ints, one per point")
    total = sum(w)
    if n == 0 or total == 0:
        return NetCheck(True, None, None, 0)
    net_mask = [False] * n
    for i in net_ids:
        net_mask[int(i)] = True

    xs_sorted = np.sort(xs)
    ys_sorted = np.sort(ys)
    xr = np.searchsorted(xs_sorted, xs)
    yr = np.searchsorted(ys_sorted, ys)
    by_cell = {}
    for i in range(n):
        by_cell[(int(xr[i]), int(yr[i]))] = i
    checked = 0
    for a in range(n):
        for b in range(a, n):
            cols = [i for i in range(n) if a <= xr[i] <= b]
            cols.sort(key=lambda i: yr[i])
            for ci in range(len(cols)):
                wsum = 0
                has_net = False
                for di in range(ci, len(cols)):
                    wsum += w[cols[di]]
                    has_net = has_net or net_mask[cols[di]]
                    checked += 1
                    if not has_net and wsum * eps.denominator >= eps.numerator * total:
                        witness = (
                            float(xs_sorted[a]),
                            float(xs_sorted[b]),
                            float(ys[cols[ci]]),
                            float(ys[cols[di]]),
                        )
                        return NetCheck(False, witness, wsum, checked)
    return NetCheck(True, None, None, checked)
