"""Pure-Python kernel implementations.

These are the reference twins of the compiled kernels in _core.pyx: same
algorithms, same iteration order, bit-identical outputs. Keep the two files
in sync — tests compare them directly.

Conventions shared by both backends:

* flow networks: parallel int64 arrays (tails, heads, caps); arc ids are
  input positions; per-node adjacency is scanned in ascending arc-id order,
  which makes augmenting paths (and therefore per-arc flows) deterministic.
* geometry: float64 coordinates, +-inf for unbounded sides; rectangles are
  rows (x0, x1, y0, y1) with x0 <= x1, y0 <= y1.
* point sets are assumed in general position (distinct x, distinct y)
  wherever rectangle enumeration is involved; callers enforce this.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from collections import deque

import numpy as np

BACKEND_NAME = "pure"

_INF = float("inf")


def max_flow(n_nodes, tails, heads, caps, source, sink):
    """Maximum flow (Dinic) with per-arc flow extraction.

    Returns ``(value, flows)`` where ``flows[i]`` is the flow pushed on
    input arc ``i``.
    """
    m = len(tails)
    to = [0] * (2 * m)
    cap = [0] * (2 * m)
    adj = [[] for _ in range(n_nodes)]
    for i in range(m):
        u = int(tails[i])
        v = int(heads[i])
        to[2 * i] = v
        cap[2 * i] = int(caps[i])
        to[2 * i + 1] = u
        adj[u].append(2 * i)
        adj[v].append(2 * i + 1)

    src = int(source)
    snk = int(sink)
    total = 0
    while True:
        # BFS phase: level graph on residual arcs.
        level = [-1] * n_nodes
        level[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for a in adj[u]:
                v = to[a]
                if cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[snk] < 0:
            break

        # Blocking flow: iterative DFS with current-arc pointers.
        ptr = [0] * n_nodes
        path = []  # arc ids from src to current node
        u = src
        while True:
            if u == snk:
                pushed = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= pushed
                    cap[a ^ 1] += pushed
                total += pushed
                cut = 0
                while cap[path[cut]] > 0:
                    cut += 1
                del path[cut:]
                u = to[path[-1]] if path else src
                continue
            advanced = False
            arcs = adj[u]
            while ptr[u] < len(arcs):
                a = arcs[ptr[u]]
                v = to[a]
                if cap[a] > 0 and level[v] == level[u] + 1:
                    path.append(a)
                    u = v
                    advanced = True
                    break
                ptr[u] += 1
            if advanced:
                continue
            level[u] = -1  # dead end, prune from this phase
            if not path:
                break
            path.pop()
            u = to[path[-1]] if path else src
            ptr[u] += 1

    flows = np.fromiter(
        (int(caps[i]) - cap[2 * i] for i in range(m)), dtype=np.int64, count=m
    )
    return total, flows


def _dominance(px, py, xs, ys, qa, qb):
    """For each query j: #{points with x-rank < qa[j] and y-rank < qb[j]}.

    Offline sweep in x order with a Fenwick tree over y ranks.
    """
    n = px.size
    res = np.zeros(qa.size, dtype=np.int64)
    if n == 0:
        return res
    xorder = np.argsort(px, kind="stable")
    yrank_by_x = np.searchsorted(ys, py)[xorder]
    qorder = np.argsort(qa, kind="stable")
    fen = [0] * (n + 1)
    inserted = 0
    for qj in qorder:
        bound = int(qa[qj])
        while inserted < bound:
            p = int(yrank_by_x[inserted]) + 1
            while p <= n:
                fen[p] += 1
                p += p & (-p)
            inserted += 1
        acc = 0
        p = int(qb[qj])
        while p > 0:
            acc += fen[p]
            p -= p & (-p)
        res[qj] = acc
    return res


def count_in_rects(px, py, x0, x1, y0, y1, closed):
    """Count points inside each query rectangle.

    ``closed=True`` counts boundary points; ``closed=False`` counts the
    open interior only. Bounds may be +-inf.
    """
    nq = x0.size
    out = np.zeros(nq, dtype=np.int64)
    if nq == 0 or px.size == 0:
        return out
    xs = np.sort(px)
    ys = np.sort(py)
    if closed:
        ax_hi = np.searchsorted(xs, x1, side="right")
        ax_lo = np.searchsorted(xs, x0, side="left")
        ay_hi = np.searchsorted(ys, y1, side="right")
        ay_lo = np.searchsorted(ys, y0, side="left")
    else:
        ax_hi = np.searchsorted(xs, x1, side="left")
        ax_lo = np.searchsorted(xs, x0, side="right")
        ay_hi = np.searchsorted(ys, y1, side="left")
        ay_lo = np.searchsorted(ys, y0, side="right")
    # A degenerate query (zero-measure interior) can invert the rank
    # interval; clamp so the inclusion-exclusion cancels to zero.
    ax_hi = np.maximum(ax_hi, ax_lo)
    ay_hi = np.maximum(ay_hi, ay_lo)
    qa = np.concatenate([ax_hi, ax_lo, ax_hi, ax_lo])
    qb = np.concatenate([ay_hi, ay_hi, ay_lo, ay_lo])
    dom = _dominance(px, py, xs, ys, qa, qb)
    out[:] = dom[:nq] - dom[nq : 2 * nq] - dom[2 * nq : 3 * nq] + dom[3 * nq :]
    return out


def anchored_empty_rects(px, py, anchor_x, far_x, anchor_left):
    """Maximal probe-empty rectangles anchored on one side of a strip.

    The strip spans from ``anchor_x`` to ``far_x`` (far side may be +-inf);
    probes (px, py) lie strictly between the two vertical lines. Emits
    exactly ``2k + 1`` rectangles for ``k`` probes in general position:
    one per probe (near side supported by that probe) plus ``k + 1``
    full-width bands between y-consecutive probes.

    Returns ``(rects, supports)``: supports rows are probe indices
    ``(near, low, high)`` with -1 meaning the corresponding side is the
    strip boundary / unbounded.
    """
    k = px.size
    rects = np.empty((2 * k + 1, 4), dtype=np.float64)
    sups = np.full((2 * k + 1, 3), -1, dtype=np.int64)
    if anchor_left:
        strip_x0, strip_x1 = anchor_x, far_x
    else:
        strip_x0, strip_x1 = far_x, anchor_x

    order = np.argsort(px)
    if not anchor_left:
        order = order[::-1]
    ys_seen: list[float] = []
    ids_seen: list[int] = []
    row = 0
    for idx in order:
        idx = int(idx)
        y = float(py[idx])
        pos = bisect_left(ys_seen, y)
        if pos > 0:
            lo, lo_id = ys_seen[pos - 1], ids_seen[pos - 1]
        else:
            lo, lo_id = -_INF, -1
        if pos < len(ys_seen):
            hi, hi_id = ys_seen[pos], ids_seen[pos]
        else:
            hi, hi_id = _INF, -1
        if anchor_left:
            rects[row, 0] = anchor_x
            rects[row, 1] = px[idx]
        else:
            rects[row, 0] = px[idx]
            rects[row, 1] = anchor_x
        rects[row, 2] = lo
        rects[row, 3] = hi
        sups[row, 0] = idx
        sups[row, 1] = lo_id
        sups[row, 2] = hi_id
        row += 1
        ys_seen.insert(pos, y)
        ids_seen.insert(pos, idx)

    lo, lo_id = -_INF, -1
    for j in range(k + 1):
        if j < k:
            hi, hi_id = ys_seen[j], ids_seen[j]
        else:
            hi, hi_id = _INF, -1
        rects[row, 0] = strip_x0
        rects[row, 1] = strip_x1
        rects[row, 2] = lo
        rects[row, 3] = hi
        sups[row, 1] = lo_id
        sups[row, 2] = hi_id
        row += 1
        lo, lo_id = hi, hi_id
    return rects, sups


def all_empty_rects(px, py):
    """All maximal probe-empty axis-parallel rectangles in the plane.

    Classifies by left side: unbounded (staircase walk from -inf plus
    full-plane bands) or supported by a probe (one rightward window-
    narrowing scan per probe). O(k^2) worst case.
    """
    k = px.size
    if k == 0:
        return np.array([[-_INF, _INF, -_INF, _INF]], dtype=np.float64)
    order = np.argsort(px)
    xo = px[order]
    yo = py[order]
    out: list[tuple[float, float, float, float]] = []

    ys_seen: list[float] = []
    for i in range(k):
        y = float(yo[i])
        pos = bisect_left(ys_seen, y)
        lo = ys_seen[pos - 1] if pos > 0 else -_INF
        hi = ys_seen[pos] if pos < len(ys_seen) else _INF
        out.append((-_INF, float(xo[i]), lo, hi))
        insort(ys_seen, y)

    lo = -_INF
    for j in range(k):
        out.append((-_INF, _INF, lo, ys_seen[j]))
        lo = ys_seen[j]
    out.append((-_INF, _INF, lo, _INF))

    for a in range(k):
        lo, hi = -_INF, _INF
        ya = float(yo[a])
        xa = float(xo[a])
        for b in range(a + 1, k):
            yb = float(yo[b])
            if lo < yb < hi:
                out.append((xa, float(xo[b]), lo, hi))
                if yb > ya:
                    hi = yb
                else:
                    lo = yb
        out.append((xa, _INF, lo, hi))
    return np.asarray(out, dtype=np.float64)
