"""Small epsilon-nets for axis-parallel rectangles.

Construction: split the plane into a balanced binary tree of vertical
strips over the x-order (leaves hold ~n/r points for r = 2/eps); draw a
first-level sample R with per-point probability s/n for
s = c * r * loglog(r); in every non-root strip enumerate the maximal
R-empty rectangles anchored at the strip's entry side (the split line
that created it) — exactly 2*r_v + 1 of them for r_v sample points in
the strip; rectangles whose weight factor s * |M cap P| / n clears
c * loglog(r) receive a secondary net sampled from their own points and
verified; the net is R plus all secondary nets. Expected size
O(1/eps * loglog(1/eps)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels, calibration
from .errors import (
    DegenerateInputError,
    MalformedInputError,
    NetSampleFailureError,
)
from .exact import _to_fraction, verify_epsnet

_INF = float("inf")


def loglog2(x: float) -> float:
    """log2(log2(x)) clamped to >= 1 (and x clamped to >= 4), so sample
    sizes and weight thresholds stay positive for small r."""
    return max(1.0, math.log2(math.log2(max(float(x), 4.0))))


@dataclass(frozen=True)
class PointSet:
    """Planar points; ids are positions 0..n-1."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.ascontiguousarray(self.xs, dtype=np.float64)
        ys = np.ascontiguousarray(self.ys, dtype=np.float64)
        if xs.ndim != 1 or ys.ndim != 1 or xs.size != ys.size:
            raise MalformedInputError("xs and ys must be 1-d arrays of equal length")
        if xs.size and not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise MalformedInputError("point coordinates must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def n(self) -> int:
        return int(self.xs.size)

    def __len__(self) -> int:
        return self.n

    @staticmethod
    def from_pairs(pairs) -> "PointSet":
        arr = np.asarray(list(pairs), dtype=np.float64).reshape(-1, 2)
        return PointSet(arr[:, 0].copy(), arr[:, 1].copy())

    def in_general_position(self) -> bool:
        """Distinct x and distinct y coordinates."""
        return (
            np.unique(self.xs).size == self.n and np.unique(self.ys).size == self.n
        )


@dataclass(frozen=True)
class NetConfig:
    """Parameters of the net construction.

    eps is held exactly (floats are read via their decimal repr, so
    eps=0.05 means 1/20). c scales the first-level sample and the weight
    threshold; k_hw scales secondary net sizes. Defaults are the frozen
    calibrated values.
    """

    eps: Fraction
    c: float = calibration.C_FIRST_LEVEL
    k_hw: float = calibration.K_HW
    seed: int = 0
    max_retries: int = 20

    def __post_init__(self):
        object.__setattr__(self, "eps", _to_fraction(self.eps))
        if self.c <= 0 or self.k_hw <= 0:
            raise MalformedInputError("c and k_hw must be positive")
        if self.max_retries < 1:
            raise MalformedInputError("max_retries must be >= 1")

    @property
    def r(self) -> Fraction:
        return 2 / self.eps


def _ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class StripNode:
    node_id: int
    level: int
    parent: int  # -1 for root
    lo: int  # x-order index range [lo, hi)
    hi: int
    x_left: float  # strip bounds, +-inf at the outermost
    x_right: float
    split_x: float | None  # None for leaves
    children: tuple[int, int] | None
    entry_left: bool | None  # anchor side: True = left boundary; None for root

    @property
    def size(self) -> int:
        return self.hi - self.lo


@dataclass(frozen=True)
class StripTree:
    nodes: tuple[StripNode, ...]
    order: np.ndarray  # point ids sorted by x
    xs_sorted: np.ndarray
    leaf_cap: int
    levels: int

    def level_nodes(self, level: int) -> list[StripNode]:
        return [v for v in self.nodes if v.level == level]


def build_strip_tree(points: PointSet, r) -> StripTree:
    """Balanced halving over the x-order; a node becomes a leaf once it
    holds at most ceil(n / r) points (left child takes the ceil half).

    Consequences relied on elsewhere: depth-d node sizes are within
    {floor(n/2^d), ceil(n/2^d)}, so there are at most 1 + ceil(log2 r)
    levels, fewer than 2r nodes per level, and every non-root leaf holds
    at least ceil(n / (2r)) points.
    """
    r = Fraction(r) if not isinstance(r, Fraction) else r
    if r <= 0:
        raise MalformedInputError("r must be positive")
    n = points.n
    if n == 0:
        raise MalformedInputError("cannot build a strip tree over zero points")
    if not points.in_general_position():
        raise DegenerateInputError("tied coordinates: points must be in general position")
    order = np.argsort(points.xs, kind="stable").astype(np.int64)
    xs_sorted = points.xs[order]
    leaf_cap = max(1, _ceil_frac(Fraction(n) / r))

    nodes: list[StripNode] = []
    # BFS order: node ids increase level by level, children consecutive.
    queue = [(-1, 0, 0, n, -_INF, _INF, None)]
    head = 0
    while head < len(queue):
        parent, level, lo, hi, xl, xr, entry = queue[head]
        head += 1
        node_id = len(nodes)
        size = hi - lo
        if size <= leaf_cap:
            nodes.append(
                StripNode(node_id, level, parent, lo, hi, xl, xr, None, None, entry)
            )
            continue
        left_size = (size + 1) // 2
        mid = lo + left_size
        split = (float(xs_sorted[mid - 1]) + float(xs_sorted[mid])) / 2.0
        if not (xs_sorted[mid - 1] < split < xs_sorted[mid]):
            raise DegenerateInputError(
                "adjacent x coordinates too close to place a split line between them"
            )
        nodes.append(
            StripNode(node_id, level, parent, lo, hi, xl, xr, split, (-1, -1), entry)
        )
        # left child's entry side is its right boundary, right child's its left
        queue.append((node_id, level + 1, lo, mid, xl, split, False))
        queue.append((node_id, level + 1, mid, hi, split, xr, True))

    kids: dict[int, list[int]] = {}
    for v in nodes:
        if v.parent >= 0:
            kids.setdefault(v.parent, []).append(v.node_id)
    fixed: list[StripNode] = []
    for v in nodes:
        if v.children is not None:
            a, b = kids[v.node_id]
            v = StripNode(
                v.node_id, v.level, v.parent, v.lo, v.hi, v.x_left, v.x_right,
                v.split_x, (a, b), v.entry_left,
            )
        fixed.append(v)
    levels = max(v.level for v in fixed) + 1
    return StripTree(tuple(fixed), order, xs_sorted, leaf_cap, levels)


def sample_first_level(points: PointSet, s: float, seed: int) -> np.ndarray:
    """Keep each point independently with probability min(1, s/n);
    returns sorted point ids. Substream: default_rng([seed, 0])."""
    n = points.n
    if not 0 < s:
        raise MalformedInputError("sample size target must be positive")
    p = min(1.0, float(s) / n)
    rng = np.random.default_rng([int(seed), 0])
    draws = rng.random(n)
    return np.flatnonzero(draws < p).astype(np.int64)


@dataclass(frozen=True)
class AnchoredRect:
    """One maximal sample-empty rectangle anchored at a strip's entry side."""

    node_id: int
    level: int
    x0: float
    x1: float
    y0: float
    y1: float
    supports: tuple[int, ...]  # defining sample point ids (<= 3)
    n_inside: int  # |M cap P|, closed containment
    weight: float  # s * n_inside / n

    @property
    def coords(self) -> tuple[float, float, float, float]:
        return (self.x0, self.x1, self.y0, self.y1)


def maximal_anchored_empty(
    points: PointSet, node: StripNode, rv_ids: np.ndarray
) -> list[AnchoredRect]:
    """The 2*r_v + 1 maximal rectangles in the node's strip that are
    empty of the strip's first-level sample points and anchored at the
    node's entry side. Counts/weights are filled in later."""
    if node.entry_left is None:
        raise MalformedInputError("root strip has no entry side to anchor on")
    anchor_x = node.x_left if node.entry_left else node.x_right
    far_x = node.x_right if node.entry_left else node.x_left
    rv_ids = np.asarray(rv_ids, dtype=np.int64)
    rects, sups = _kernels.anchored_empty_rects(
        points.xs[rv_ids], points.ys[rv_ids], anchor_x, far_x, bool(node.entry_left)
    )
    out = []
    for row in range(rects.shape[0]):
        sup = tuple(
            sorted(int(rv_ids[j]) for j in sups[row] if j >= 0)
        )
        out.append(
            AnchoredRect(
                node_id=node.node_id,
                level=node.level,
                x0=float(rects[row, 0]),
                x1=float(rects[row, 1]),
                y0=float(rects[row, 2]),
                y1=float(rects[row, 3]),
                supports=sup,
                n_inside=-1,
                weight=-1.0,
            )
        )
    return out


def secondary_sample_size(k_hw: float, weight: float) -> int:
    """ceil(k_hw * t * log2(t)), at least 1."""
    return max(1, math.ceil(k_hw * weight * math.log2(max(weight, 2.0))))


def secondary_net(
    points: PointSet,
    local_ids: np.ndarray,
    weight: float,
    config: NetConfig,
    rect_ordinal: int,
    node_id: int,
) -> tuple[np.ndarray, int]:
    """A (1/weight)-net for the points inside one heavy rectangle.

    Draws ceil(k_hw * t * log2 t) of the local points (all of them if
    fewer), verifies the net property against the local point set, and
    resamples up to max_retries times. Returns (ids, retries_used).
    """
    local_ids = np.asarray(local_ids, dtype=np.int64)
    target = secondary_sample_size(config.k_hw, weight)
    if local_ids.size <= target:
        return local_ids.copy(), 0
    local = PointSet(points.xs[local_ids], points.ys[local_ids])
    # 1/weight as the exact rational of the float: deterministic, and
    # weight >= threshold >= 2 keeps it inside (0, 1].
    eps_local = Fraction(1.0 / weight) if weight > 1.0 else Fraction(1, 2)
    for attempt in range(config.max_retries):
        rng = np.random.default_rng(
            [int(config.seed), 1, int(node_id), int(rect_ordinal), attempt]
        )
        pick = np.sort(rng.choice(local_ids.size, size=target, replace=False))
        check = verify_epsnet(local, eps_local, pick)
        if check.ok:
            return local_ids[pick], attempt
    raise NetSampleFailureError(
        f"secondary net for rectangle {rect_ordinal} (node {node_id}) failed "
        f"{config.max_retries} resampling attempts"
    )


@dataclass(frozen=True)
class EpsNetResult:
    net: np.ndarray  # sorted point ids
    first_level: np.ndarray
    rects: tuple[AnchoredRect, ...]
    secondary: dict[int, np.ndarray] = field(repr=False)  # rect index -> ids
    decay: np.ndarray = field(repr=False)  # [level, j] -> #rects with weight >= j
    levels: int = 0
    leaf_cap: int = 0
    n: int = 0
    s: float = 0.0
    threshold: float = 0.0
    retries: int = 0
    config: NetConfig | None = None

    def level_rect_count(self, level: int) -> int:
        return int(self.decay[level, 0])


def build_epsnet(points: PointSet, config: NetConfig) -> EpsNetResult:
    """Build the two-level net. Deterministic for a fixed (points, config)."""
    n = points.n
    eps = config.eps
    r = config.r
    if n == 0:
        raise MalformedInputError("cannot build a net over zero points")
    if Fraction(n) < 2 * r:
        raise MalformedInputError(
            f"need n >= 2r = {float(2 * r):g} points for eps={eps} (got {n})"
        )
    if not points.in_general_position():
        raise DegenerateInputError("tied coordinates: points must be in general position")

    r_f = float(r)
    s = config.c * r_f * loglog2(r_f)
    s_eff = min(float(s), float(n))
    threshold = config.c * loglog2(r_f)

    first = sample_first_level(points, s_eff, config.seed)
    tree = build_strip_tree(points, r)

    # first-level sample positions in x-order, for fast per-strip slicing
    pos_of_id = np.empty(n, dtype=np.int64)
    pos_of_id[tree.order] = np.arange(n)
    first_pos = np.sort(pos_of_id[first])

    rects: list[AnchoredRect] = []
    for node in tree.nodes:
        if node.entry_left is None:
            continue
        a = np.searchsorted(first_pos, node.lo, side="left")
        b = np.searchsorted(first_pos, node.hi, side="left")
        rv_ids = tree.order[first_pos[a:b]]
        rects.extend(maximal_anchored_empty(points, node, rv_ids))

    if rects:
        rect_arr = np.array([rc.coords for rc in rects], dtype=np.float64)
        counts = _kernels.count_in_rects(points.xs, points.ys, rect_arr, closed=True)
    else:
        counts = np.zeros(0, dtype=np.int64)
    rects = [
        AnchoredRect(
            rc.node_id, rc.level, rc.x0, rc.x1, rc.y0, rc.y1, rc.supports,
            int(counts[i]), s_eff * int(counts[i]) / n,
        )
        for i, rc in enumerate(rects)
    ]

    # per-level `#rects with weight >= j` table (j = 0 is the full count)
    max_w = max((rc.weight for rc in rects), default=0.0)
    j_max = max(8, int(max_w) + 1)
    decay = np.zeros((tree.levels, j_max + 1), dtype=np.int64)
    for rc in rects:
        decay[rc.level, 0 : int(min(rc.weight, j_max)) + 1] += 1

    # Hard invariant: each level carries at most 2|R| + 2r rectangles.
    bound = 2 * first.size + 2 * r_f
    for lev in range(tree.levels):
        if decay[lev, 0] > bound:
            raise AssertionError(
                f"level {lev} emitted {decay[lev, 0]} rectangles, above 2|R|+2r={bound}"
            )

    xs_sorted = tree.xs_sorted
    secondary: dict[int, np.ndarray] = {}
    retries = 0
    for idx, rc in enumerate(rects):
        if rc.weight < threshold:
            continue
        a = np.searchsorted(xs_sorted, rc.x0, side="left")
        b = np.searchsorted(xs_sorted, rc.x1, side="right")
        cand = tree.order[a:b]
        inside = (points.ys[cand] >= rc.y0) & (points.ys[cand] <= rc.y1)
        local_ids = np.sort(cand[inside])
        ids, used = secondary_net(
            points, local_ids, rc.weight, config, idx, rc.node_id
        )
        secondary[idx] = ids
        retries += used

    net: set[int] = set(int(i) for i in first)
    for ids in secondary.values():
        net.update(int(i) for i in ids)
    net_arr = np.asarray(sorted(net), dtype=np.int64)

    return EpsNetResult(
        net=net_arr,
        first_level=first,
        rects=tuple(rects),
        secondary=secondary,
        decay=decay,
        levels=tree.levels,
        leaf_cap=tree.leaf_cap,
        n=n,
        s=s_eff,
        threshold=threshold,
        retries=retries,
        config=config,
    )


def decay_profile(result: EpsNetResult) -> list[tuple[int, int, int]]:
    """(level, j, count of rectangles with weight >= j) rows."""
    rows = []
    levels, width = result.decay.shape
    for lev in range(levels):
        for j in range(width):
            rows.append((lev, j, int(result.decay[lev, j])))
    return rows


# ---------------------------------------------------------------------------
# Points CSV format: header x,y; '#' lines are comments.


def load_points(path) -> PointSet:
    import csv

    xs: list[float] = []
    ys: list[float] = []
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(line for line in fh if not line.startswith("#"))
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["x", "y"]:
                raise MalformedInputError(f"{path}: expected header x,y")
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 2:
                    raise MalformedInputError(f"{path}:{lineno}: need 2 fields")
                try:
                    xs.append(float(row[0]))
                    ys.append(float(row[1]))
                except ValueError as exc:
                    raise MalformedInputError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc}") from exc
    return PointSet(np.asarray(xs), np.asarray(ys))


def save_points(path, points: PointSet) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# coverkit points format_version=1\n")
        fh.write("x,y\n")
        for i in range(points.n):
            fh.write(f"{float(points.xs[i])!r},{float(points.ys[i])!r}\n")


def net_to_obj(points: PointSet, result: EpsNetResult) -> dict:
    """JSON-able summary: parameters, net ids, per-level stats, decay."""
    cfg = result.config
    per_level = [
        {
            "level": lev,
            "rects": int(result.decay[lev, 0]),
            "heavy": int(
                sum(
                    1
                    for rc in result.rects
                    if rc.level == lev and rc.weight >= result.threshold
                )
            ),
        }
        for lev in range(result.levels)
    ]
    return {
        "format_version": 1,
        "n": result.n,
        "eps": f"{cfg.eps.numerator}/{cfg.eps.denominator}",
        "seed": cfg.seed,
        "c": cfg.c,
        "k_hw": cfg.k_hw,
        "s": result.s,
        "threshold": result.threshold,
        "levels": result.levels,
        "first_level_size": int(result.first_level.size),
        "net_size": int(result.net.size),
        "net": [int(i) for i in result.net],
        "per_level": per_level,
        "decay": [[lev, j, c] for lev, j, c in decay_profile(result)],
        "retries": result.retries,
    }
