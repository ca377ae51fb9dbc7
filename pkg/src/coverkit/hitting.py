"""Small hitting sets for axis-parallel rectangles.

Guess the optimum size k (doubling); repeatedly build a weighted
(1/2k)-net over the points and look for an input rectangle the net
misses. A missed rectangle is light, so doubling the weights of its
points makes progress; if every rectangle is hit the net itself is the
answer, of size O(k * loglog k). Round counts beyond 4k*log2(n/k) mean
the guess was too small.

Weighted nets reduce to the unweighted construction by replication in
rank space: each point moves to (x-rank, y-rank) and is cloned
ceil(w_i * D / W) times with diagonal offsets inside (0, 0.5). Rectangle
containment is invariant under the rank map (with rectangle edges mapped
to half-integers), and offsets below one half can never cross such an
edge, so a heavy rectangle's replica mass is exactly its rounded weight
mass and every net replica maps back to an original point inside the
same rectangles.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, calibration
from .epsnet import NetConfig, PointSet, build_epsnet, _ceil_frac
from .errors import (
    BgDivergenceError,
    DegenerateInputError,
    InfeasibleError,
    MalformedInputError,
)
from .exact import _to_fraction

_INF = float("inf")


@dataclass(frozen=True)
class RectSet:
    """Axis-parallel query rectangles [x_lo, x_hi] x [y_lo, y_hi]."""

    x_lo: np.ndarray
    y_lo: np.ndarray
    x_hi: np.ndarray
    y_hi: np.ndarray

    def __post_init__(self):
        arrs = []
        for name in ("x_lo", "y_lo", "x_hi", "y_hi"):
            a = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            if a.ndim != 1:
                raise MalformedInputError(f"{name} must be 1-d")
            arrs.append(a)
            object.__setattr__(self, name, a)
        if len({a.size for a in arrs}) != 1:
            raise MalformedInputError("rectangle coordinate arrays must align")
        if np.any(self.x_lo > self.x_hi) or np.any(self.y_lo > self.y_hi):
            raise MalformedInputError("need x_lo <= x_hi and y_lo <= y_hi per rectangle")
        if arrs and not all(np.isfinite(a).all() for a in arrs):
            raise MalformedInputError("rectangle bounds must be finite")

    @property
    def m(self) -> int:
        return int(self.x_lo.size)

    def __len__(self) -> int:
        return self.m

    def as_query_array(self) -> np.ndarray:
        """(m, 4) rows (x0, x1, y0, y1) — the kernel rectangle layout."""
        return np.stack([self.x_lo, self.x_hi, self.y_lo, self.y_hi], axis=1)

    @staticmethod
    def from_rows(rows: Iterable[Sequence[float]]) -> "RectSet":
        arr = np.asarray(list(rows), dtype=np.float64).reshape(-1, 4)
        return RectSet(arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), arr[:, 3].copy())


@dataclass(frozen=True)
class MissReport:
    ok: bool
    missed: tuple[int, ...]  # rectangle ids containing no hitter


def verify_hitting(points: PointSet, rects: RectSet, hitters: Iterable[int]) -> MissReport:
    """Check that every rectangle contains at least one hitter (closed)."""
    ids = sorted(set(int(i) for i in hitters))
    if ids and not (0 <= ids[0] and ids[-1] < points.n):
        raise MalformedInputError("hitter ids outside the point set")
    if rects.m == 0:
        return MissReport(True, ())
    if not ids:
        return MissReport(False, tuple(range(rects.m)))
    counts = _kernels.count_in_rects(
        points.xs[ids], points.ys[ids], rects.as_query_array(), closed=True
    )
    missed = tuple(int(j) for j in np.flatnonzero(counts == 0))
    return MissReport(not missed, missed)


def weighted_net(
    points: PointSet,
    weights: Sequence[int],
    eps,
    seed: int,
    c: float = calibration.C_FIRST_LEVEL,
    k_hw: float = calibration.K_HW,
    max_retries: int = 20,
) -> np.ndarray:
    """Point ids forming a weighted eps-net: every axis-parallel
    rectangle of weight >= eps * total gets hit.

    Exact-arithmetic replication in rank space (see module docstring);
    the replica net is built with eps scaled down to eps * D / M so the
    rounding slack never weakens the guarantee.
    """
    eps = _to_fraction(eps)
    n = points.n
    if n == 0:
        raise MalformedInputError("no points to build a net over")
    w = [int(v) for v in weights]
    if len(w) != n or any(v <= 0 for v in w):
        raise MalformedInputError("weights must be positive ints, one per point")
    if n == 1:
        return np.array([0], dtype=np.int64)

    total = sum(w)
    d_target = _ceil_frac(2 * n / eps)
    mult = [(wi * d_target + total - 1) // total for wi in w]
    m_total = sum(mult)

    xr = np.searchsorted(np.sort(points.xs), points.xs).astype(np.float64)
    yr = np.searchsorted(np.sort(points.ys), points.ys).astype(np.float64)
    rep_x = np.empty(m_total, dtype=np.float64)
    rep_y = np.empty(m_total, dtype=np.float64)
    rep_owner = np.empty(m_total, dtype=np.int64)
    pos = 0
    for i in range(n):
        mi = mult[i]
        offs = 0.5 * (np.arange(1, mi + 1, dtype=np.float64) / (mi + 1))
        rep_x[pos : pos + mi] = xr[i] + offs
        rep_y[pos : pos + mi] = yr[i] + offs
        rep_owner[pos : pos + mi] = i
        pos += mi

    eps_rep = eps * Fraction(d_target, m_total)
    cfg = NetConfig(eps=eps_rep, c=c, k_hw=k_hw, seed=int(seed), max_retries=max_retries)
    result = build_epsnet(PointSet(rep_x, rep_y), cfg)
    original = sorted(set(int(rep_owner[i]) for i in result.net))
    return np.asarray(original, dtype=np.int64)


@dataclass(frozen=True)
class HitIteration:
    k: int  # current size guess
    round: int  # doubling round within the guess
    net_size: int
    doubled_rect: int  # -1 when the round's net hit everything


@dataclass(frozen=True)
class HittingResult:
    hitters: tuple[int, ...]
    k_final: int
    rounds_total: int
    iterations: tuple[HitIteration, ...]
    verified: bool


def solve_hitting(
    points: PointSet,
    rects: RectSet,
    seed: int = 0,
    c: float = calibration.C_FIRST_LEVEL,
    k_hw: float = calibration.K_HW,
    max_retries: int = 20,
) -> HittingResult:
    """Hitting set by size-guessing and iterative weight doubling.

    Deterministic for fixed inputs and seed. Raises InfeasibleError if a
    rectangle contains no point at all, BgDivergenceError if every guess
    up to n exhausts its round budget (cannot happen when the weighted
    nets are sound; kept as an honest guard).
    """
    n = points.n
    m = rects.m
    if m == 0:
        return HittingResult((), 0, 0, (), True)
    if n == 0:
        raise InfeasibleError("rectangles present but no points", achieved=0)
    if not points.in_general_position():
        raise DegenerateInputError(
            "tied coordinates: repair the point set before solving"
        )

    inside = _containment(points, rects)  # bool [n, m]
    empty = np.flatnonzero(~inside.any(axis=0))
    if empty.size:
        raise InfeasibleError(
            f"rectangle {int(empty[0])} contains no point", achieved=0
        )

    log: list[HitIteration] = []
    rounds_total = 0
    k = 1
    while True:
        round_limit = max(1, math.ceil(4 * k * math.log2(max(2.0, n / k))))
        eps_k = Fraction(1, 2 * k)
        weights = [1] * n
        for rnd in range(round_limit):
            net_seed = int(
                np.random.SeedSequence([int(seed), 7, int(k), int(rnd)]).generate_state(1)[0]
            )
            net = weighted_net(
                points, weights, eps_k, net_seed, c=c, k_hw=k_hw, max_retries=max_retries
            )
            rounds_total += 1
            hit = inside[net, :].any(axis=0)
            if hit.all():
                log.append(HitIteration(k, rnd, int(net.size), -1))
                hitters = tuple(int(i) for i in net)
                check = verify_hitting(points, rects, hitters)
                assert check.ok, "terminating net must hit every rectangle"
                return HittingResult(
                    hitters=hitters,
                    k_final=k,
                    rounds_total=rounds_total,
                    iterations=tuple(log),
                    verified=True,
                )
            j = int(np.flatnonzero(~hit)[0])
            log.append(HitIteration(k, rnd, int(net.size), j))
            for i in np.flatnonzero(inside[:, j]):
                weights[int(i)] *= 2
        if k >= n:
            raise BgDivergenceError(
                f"no size guess up to {n} converged within its round budget",
                log=list(log),
            )
        k = min(2 * k, n)


def _containment(points: PointSet, rects: RectSet) -> np.ndarray:
    px = points.xs[:, None]
    py = points.ys[:, None]
    return (
        (px >= rects.x_lo[None, :])
        & (px <= rects.x_hi[None, :])
        & (py >= rects.y_lo[None, :])
        & (py <= rects.y_hi[None, :])
    )


def hitting_to_obj(result: HittingResult) -> dict:
    return {
        "format_version": 1,
        "hitters": [int(i) for i in result.hitters],
        "size": len(result.hitters),
        "k_final": result.k_final,
        "rounds_total": result.rounds_total,
        "iterations": [
            {
                "k": it.k,
                "round": it.round,
                "net_size": it.net_size,
                "doubled_rect": it.doubled_rect,
            }
            for it in result.iterations
        ],
        "verified": result.verified,
    }


# ---------------------------------------------------------------------------
# Rectangle CSV format: header x_lo,y_lo,x_hi,y_hi; '#' lines are comments.


def load_rects(path) -> RectSet:
    rows = []
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(line for line in fh if not line.startswith("#"))
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["x_lo", "y_lo", "x_hi", "y_hi"]:
                raise MalformedInputError(
                    f"{path}: expected header x_lo,y_lo,x_hi,y_hi"
                )
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 4:
                    raise MalformedInputError(f"{path}:{lineno}: need 4 fields")
                try:
                    x0, y0, x1, y1 = (float(v) for v in row)
                except ValueError as exc:
                    raise MalformedInputError(f"{path}:{lineno}: {exc}") from exc
                rows.append((x0, y0, x1, y1))
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc}") from exc
    return RectSet.from_rows(rows)


def save_rects(path, rects: RectSet) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# coverkit rectangles format_version=1\n")
        fh.write("x_lo,y_lo,x_hi,y_hi\n")
        for j in range(rects.m):
            fh.write(
                f"{float(rects.x_lo[j])!r},{float(rects.y_lo[j])!r},"
                f"{float(rects.x_hi[j])!r},{float(rects.y_hi[j])!r}\n"
            )
