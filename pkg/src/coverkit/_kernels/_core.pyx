# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel twins.

Every function here mirrors coverkit._kernels.pure exactly (same algorithm,
same iteration order, bit-identical outputs). Edit the two files together;
tests diff their outputs.
"""

import numpy as np

from libcpp.vector cimport vector

BACKEND_NAME = "compiled"

cdef double _INF = float("inf")


def max_flow(n_nodes, tails, heads, caps, source, sink):
    """Maximum flow (Dinic) with per-arc flow extraction."""
    cdef Py_ssize_t nn = int(n_nodes)
    cdef Py_ssize_t src = int(source)
    cdef Py_ssize_t snk = int(sink)
    t_arr = np.ascontiguousarray(tails, dtype=np.int64)
    h_arr = np.ascontiguousarray(heads, dtype=np.int64)
    c_arr = np.ascontiguousarray(caps, dtype=np.int64)
    cdef Py_ssize_t m = t_arr.shape[0]

    to_np = np.empty(2 * m, dtype=np.int64)
    cap_np = np.empty(2 * m, dtype=np.int64)
    cdef long long[::1] tl = t_arr
    cdef long long[::1] hd = h_arr
    cdef long long[::1] c0 = c_arr
    cdef long long[::1] to = to_np
    cdef long long[::1] cap = cap_np

    # CSR adjacency over the 2m residual arcs, per node in ascending arc id
    # (matches the append order of the pure twin).
    deg_np = np.zeros(nn + 1, dtype=np.int64)
    cdef long long[::1] deg = deg_np
    cdef Py_ssize_t i, u, v, a
    for i in range(m):
        to[2 * i] = hd[i]
        cap[2 * i] = c0[i]
        to[2 * i + 1] = tl[i]
        cap[2 * i + 1] = 0
        deg[tl[i] + 1] += 1
        deg[hd[i] + 1] += 1
    off_np = np.cumsum(deg_np, dtype=np.int64)
    arcs_np = np.empty(2 * m, dtype=np.int64)
    fill_np = off_np.copy()
    cdef long long[::1] off = off_np
    cdef long long[::1] arcs = arcs_np
    cdef long long[::1] fill = fill_np
    for i in range(m):
        u = tl[i]
        arcs[fill[u]] = 2 * i
        fill[u] += 1
        v = hd[i]
        arcs[fill[v]] = 2 * i + 1
        fill[v] += 1

    level_np = np.empty(nn, dtype=np.int64)
    ptr_np = np.empty(nn, dtype=np.int64)
    queue_np = np.empty(nn, dtype=np.int64)
    path_np = np.empty(nn + 1, dtype=np.int64)
    cdef long long[::1] level = level_np
    cdef long long[::1] ptr = ptr_np
    cdef long long[::1] queue = queue_np
    cdef long long[::1] path = path_np

    cdef long long total = 0
    cdef long long pushed
    cdef Py_ssize_t qh, qt, plen, cut, j
    cdef bint advanced

    while True:
        for i in range(nn):
            level[i] = -1
        level[src] = 0
        queue[0] = src
        qh = 0
        qt = 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            for j in range(off[u], off[u + 1]):
                a = arcs[j]
                v = to[a]
                if cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qt] = v
                    qt += 1
        if level[snk] < 0:
            break

        for i in range(nn):
            ptr[i] = 0
        plen = 0
        u = src
        while True:
            if u == snk:
                pushed = cap[path[0]]
                for j in range(1, plen):
                    if cap[path[j]] < pushed:
                        pushed = cap[path[j]]
                for j in range(plen):
                    cap[path[j]] -= pushed
                    cap[path[j] ^ 1] += pushed
                total += pushed
                cut = 0
                while cap[path[cut]] > 0:
                    cut += 1
                plen = cut
                u = to[path[plen - 1]] if plen > 0 else src
                continue
            advanced = False
            while ptr[u] < off[u + 1] - off[u]:
                a = arcs[off[u] + ptr[u]]
                v = to[a]
                if cap[a] > 0 and level[v] == level[u] + 1:
                    path[plen] = a
                    plen += 1
                    u = v
                    advanced = True
                    break
                ptr[u] += 1
            if advanced:
                continue
            level[u] = -1
            if plen == 0:
                break
            plen -= 1
            u = to[path[plen - 1]] if plen > 0 else src
            ptr[u] += 1

    flows_np = np.empty(m, dtype=np.int64)
    cdef long long[::1] flows = flows_np
    for i in range(m):
        flows[i] = c0[i] - cap[2 * i]
    return int(total), flows_np


def _dominance(px, py, xs, ys, qa, qb):
    """For each query j: #{points with x-rank < qa[j] and y-rank < qb[j]}."""
    cdef Py_ssize_t n = px.shape[0]
    res_np = np.zeros(qa.shape[0], dtype=np.int64)
    if n == 0:
        return res_np
    xorder = np.argsort(px, kind="stable")
    yrank_np = np.ascontiguousarray(np.searchsorted(ys, py)[xorder], dtype=np.int64)
    qorder_np = np.ascontiguousarray(np.argsort(qa, kind="stable"), dtype=np.int64)
    qa_np = np.ascontiguousarray(qa, dtype=np.int64)
    qb_np = np.ascontiguousarray(qb, dtype=np.int64)
    fen_np = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] yrank_by_x = yrank_np
    cdef long long[::1] qorder = qorder_np
    cdef long long[::1] va = qa_np
    cdef long long[::1] vb = qb_np
    cdef long long[::1] fen = fen_np
    cdef long long[::1] res = res_np
    cdef Py_ssize_t inserted = 0, qi, qj, p, bound
    cdef long long acc
    for qi in range(qorder.shape[0]):
        qj = qorder[qi]
        bound = va[qj]
        while inserted < bound:
            p = yrank_by_x[inserted] + 1
            while p <= n:
                fen[p] += 1
                p += p & (-p)
            inserted += 1
        acc = 0
        p = vb[qj]
        while p > 0:
            acc += fen[p]
            p -= p & (-p)
        res[qj] = acc
    return res_np


def count_in_rects(px, py, x0, x1, y0, y1, closed):
    """Count points inside each query rectangle (closed or open interior)."""
    nq = x0.shape[0]
    out = np.zeros(nq, dtype=np.int64)
    if nq == 0 or px.shape[0] == 0:
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
    """Maximal probe-empty rectangles anchored on one side of a strip."""
    cdef Py_ssize_t k = px.shape[0]
    rects_np = np.empty((2 * k + 1, 4), dtype=np.float64)
    sups_np = np.full((2 * k + 1, 3), -1, dtype=np.int64)
    cdef double[:, ::1] rects = rects_np
    cdef long long[:, ::1] sups = sups_np
    cdef double ax = float(anchor_x)
    cdef double fx = float(far_x)
    cdef bint left = bool(anchor_left)
    cdef double strip_x0, strip_x1
    if left:
        strip_x0 = ax
        strip_x1 = fx
    else:
        strip_x0 = fx
        strip_x1 = ax

    px_c = np.ascontiguousarray(px, dtype=np.float64)
    py_c = np.ascontiguousarray(py, dtype=np.float64)
    cdef double[::1] vx = px_c
    cdef double[::1] vy = py_c
    order_np = np.argsort(px_c)
    if not left:
        order_np = np.ascontiguousarray(order_np[::-1])
    order_np = np.ascontiguousarray(order_np, dtype=np.int64)
    cdef long long[::1] order = order_np

    ys_seen_np = np.empty(k, dtype=np.float64)
    ids_seen_np = np.empty(k, dtype=np.int64)
    cdef double[::1] ys_seen = ys_seen_np
    cdef long long[::1] ids_seen = ids_seen_np
    cdef Py_ssize_t cnt = 0, row = 0, i, pos, lo_p, hi_p, mid, t, idx
    cdef double y, lo, hi
    cdef long long lo_id, hi_id

    for i in range(k):
        idx = order[i]
        y = vy[idx]
        lo_p = 0
        hi_p = cnt
        while lo_p < hi_p:
            mid = (lo_p + hi_p) // 2
            if ys_seen[mid] < y:
                lo_p = mid + 1
            else:
                hi_p = mid
        pos = lo_p
        if pos > 0:
            lo = ys_seen[pos - 1]
            lo_id = ids_seen[pos - 1]
        else:
            lo = -_INF
            lo_id = -1
        if pos < cnt:
            hi = ys_seen[pos]
            hi_id = ids_seen[pos]
        else:
            hi = _INF
            hi_id = -1
        if left:
            rects[row, 0] = ax
            rects[row, 1] = vx[idx]
        else:
            rects[row, 0] = vx[idx]
            rects[row, 1] = ax
        rects[row, 2] = lo
        rects[row, 3] = hi
        sups[row, 0] = idx
        sups[row, 1] = lo_id
        sups[row, 2] = hi_id
        row += 1
        for t in range(cnt, pos, -1):
            ys_seen[t] = ys_seen[t - 1]
            ids_seen[t] = ids_seen[t - 1]
        ys_seen[pos] = y
        ids_seen[pos] = idx
        cnt += 1

    lo = -_INF
    lo_id = -1
    for i in range(k + 1):
        if i < k:
            hi = ys_seen[i]
            hi_id = ids_seen[i]
        else:
            hi = _INF
            hi_id = -1
        rects[row, 0] = strip_x0
        rects[row, 1] = strip_x1
        rects[row, 2] = lo
        rects[row, 3] = hi
        sups[row, 1] = lo_id
        sups[row, 2] = hi_id
        row += 1
        lo = hi
        lo_id = hi_id
    return rects_np, sups_np


def all_empty_rects(px, py):
    """All maximal probe-empty axis-parallel rectangles in the plane."""
    cdef Py_ssize_t k = px.shape[0]
    if k == 0:
        return np.array([[-_INF, _INF, -_INF, _INF]], dtype=np.float64)
    order_np = np.argsort(px)
    xo_np = np.ascontiguousarray(px[order_np], dtype=np.float64)
    yo_np = np.ascontiguousarray(py[order_np], dtype=np.float64)
    cdef double[::1] xo = xo_np
    cdef double[::1] yo = yo_np

    cdef vector[double] out
    ys_seen_np = np.empty(k, dtype=np.float64)
    cdef double[::1] ys_seen = ys_seen_np
    cdef Py_ssize_t cnt = 0, i, pos, lo_p, hi_p, mid, t, a, b
    cdef double y, lo, hi, ya, yb, xa

    for i in range(k):
        y = yo[i]
        lo_p = 0
        hi_p = cnt
        while lo_p < hi_p:
            mid = (lo_p + hi_p) // 2
            if ys_seen[mid] < y:
                lo_p = mid + 1
            else:
                hi_p = mid
        pos = lo_p
        lo = ys_seen[pos - 1] if pos > 0 else -_INF
        hi = ys_seen[pos] if pos < cnt else _INF
        out.push_back(-_INF)
        out.push_back(xo[i])
        out.push_back(lo)
        out.push_back(hi)
        for t in range(cnt, pos, -1):
            ys_seen[t] = ys_seen[t - 1]
        ys_seen[pos] = y
        cnt += 1

    lo = -_INF
    for i in range(k):
        out.push_back(-_INF)
        out.push_back(_INF)
        out.push_back(lo)
        out.push_back(ys_seen[i])
        lo = ys_seen[i]
    out.push_back(-_INF)
    out.push_back(_INF)
    out.push_back(lo)
    out.push_back(_INF)

    for a in range(k):
        lo = -_INF
        hi = _INF
        ya = yo[a]
        xa = xo[a]
        for b in range(a + 1, k):
            yb = yo[b]
            if lo < yb and yb < hi:
                out.push_back(xa)
                out.push_back(xo[b])
                out.push_back(lo)
                out.push_back(hi)
                if yb > ya:
                    hi = yb
                else:
                    lo = yb
        out.push_back(xa)
        out.push_back(_INF)
        out.push_back(lo)
        out.push_back(hi)

    cdef Py_ssize_t nrows = out.size() // 4
    res_np = np.empty((nrows, 4), dtype=np.float64)
    cdef double[:, ::1] res = res_np
    for i in range(nrows):
        res[i, 0] = out[4 * i]
        res[i, 1] = out[4 * i + 1]
        res[i, 2] = out[4 * i + 2]
        res[i, 3] = out[4 * i + 3]
    return res_np
