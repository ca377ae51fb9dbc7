"""Kernel backend selection.

Imports the compiled extension when available, otherwise the pure-Python
twin. ``COVERKIT_PURE_KERNELS=1`` forces the pure backend. Both produce
bit-identical outputs; ``BACKEND`` reports which one is active.
"""

from __future__ import annotations

import os

import numpy as np

from . import pure

if os.environ.get("COVERKIT_PURE_KERNELS"):
    _impl = pure
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND: str = _impl.BACKEND_NAME


def available_backends() -> dict:
    """Name -> implementation module for every importable backend."""
    backends = {"pure": pure}
    try:
        from . import _core

        backends["compiled"] = _core
    except ImportError:
        pass
    return backends


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def max_flow(n_nodes, tails, heads, caps, source, sink, impl=None):
    """Max flow value and per-arc flows on the given arc list."""
    mod = impl if impl is not None else _impl
    return mod.max_flow(
        int(n_nodes),
        np.ascontiguousarray(tails, dtype=np.int64),
        np.ascontiguousarray(heads, dtype=np.int64),
        np.ascontiguousarray(caps, dtype=np.int64),
        int(source),
        int(sink),
    )


def count_in_rects(px, py, rects, closed=True, impl=None):
    """Per-rectangle point counts; ``rects`` is an (m, 4) array of
    (x0, x1, y0, y1) rows, bounds may be +-inf."""
    mod = impl if impl is not None else _impl
    rects = _f64(rects).reshape(-1, 4)
    return mod.count_in_rects(
        _f64(px),
        _f64(py),
        _f64(rects[:, 0]),
        _f64(rects[:, 1]),
        _f64(rects[:, 2]),
        _f64(rects[:, 3]),
        bool(closed),
    )


def anchored_empty_rects(px, py, anchor_x, far_x, anchor_left, impl=None):
    """Maximal probe-empty rectangles anchored on one side of a strip."""
    mod = impl if impl is not None else _impl
    return mod.anchored_empty_rects(
        _f64(px), _f64(py), float(anchor_x), float(far_x), bool(anchor_left)
    )


def all_empty_rects(px, py, impl=None):
    """All maximal probe-empty rectangles spanned by the probe set."""
    mod = impl if impl is not None else _impl
    return mod.all_empty_rects(_f64(px), _f64(py))
