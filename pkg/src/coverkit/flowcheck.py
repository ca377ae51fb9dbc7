"""Maximum partial-cover value of a set family, computed as a max flow.

The network for a family F: source -> one node per set in F with arc
capacity equal to the set's capacity; set -> element arcs of capacity 1
for each member; element -> sink arcs of capacity 1 for every ground
element. The max flow value equals the largest number of elements any
valid partial cover over F can assign, and the integral flow on the
set -> element arcs is such a cover. Arc order is fixed (family sets by
ascending id, members ascending, then elements ascending), so witnesses
are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import MalformedInputError
from .setsystem import AssignmentCover, SetCoverInstance


@dataclass(frozen=True)
class FlowNetwork:
    n_nodes: int
    source: int
    sink: int
    tails: np.ndarray
    heads: np.ndarray
    caps: np.ndarray
    family: tuple[int, ...]
    # (arc index, set id, element id) for every set -> element arc
    assign_arcs: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class CoverValue:
    value: int
    witness: AssignmentCover


def _check_family(inst: SetCoverInstance, family: Iterable[int]) -> tuple[int, ...]:
    fam = sorted(set(int(s) for s in family))
    m = len(inst.sets)
    for s in fam:
        if not (0 <= s < m):
            raise MalformedInputError(f"family references unknown set {s}")
    return tuple(fam)


def build_network(inst: SetCoverInstance, family: Iterable[int]) -> FlowNetwork:
    """Flow network whose max flow is the family's best partial-cover size."""
    fam = _check_family(inst, family)
    n = inst.n_elements
    f = len(fam)
    source = 0
    sink = f + n + 1
    set_node = {sid: 1 + i for i, sid in enumerate(fam)}

    tails: list[int] = []
    heads: list[int] = []
    caps: list[int] = []
    assign_arcs: list[tuple[int, int, int]] = []
    for sid in fam:
        tails.append(source)
        heads.append(set_node[sid])
        caps.append(inst.sets[sid].capacity)
    for sid in fam:
        for e in inst.sets[sid].members:
            assign_arcs.append((len(tails), sid, e))
            tails.append(set_node[sid])
            heads.append(1 + f + e)
            caps.append(1)
    for e in range(n):
        tails.append(1 + f + e)
        heads.append(sink)
        caps.append(1)

    return FlowNetwork(
        n_nodes=f + n + 2,
        source=source,
        sink=sink,
        tails=np.asarray(tails, dtype=np.int64),
        heads=np.asarray(heads, dtype=np.int64),
        caps=np.asarray(caps, dtype=np.int64),
        family=fam,
        assign_arcs=tuple(assign_arcs),
    )


def max_cover_value(inst: SetCoverInstance, family: Iterable[int]) -> CoverValue:
    """Largest assignable element count over the family, with a witness
    cover extracted from the integral flow."""
    net = build_network(inst, family)
    value, flows = _kernels.max_flow(
        net.n_nodes, net.tails, net.heads, net.caps, net.source, net.sink
    )
    pairs = [(sid, e) for arc, sid, e in net.assign_arcs if flows[arc] > 0]
    witness = AssignmentCover.from_pairs(net.family, pairs)
    return CoverValue(value=int(value), witness=witness)


def marginal_gain(inst: SetCoverInstance, family: Iterable[int], candidate: int) -> int:
    """Increase of the max partial-cover value when adding one set."""
    fam = set(_check_family(inst, family))
    base = max_cover_value(inst, fam).value
    return max_cover_value(inst, fam | {int(candidate)}).value - base


def is_feasible(inst: SetCoverInstance) -> bool:
    """True iff some complete cover exists (all n elements assignable)."""
    return max_cover_value(inst, inst.set_ids).value == inst.n_elements
