"""Greedy minimum-cost covering, capacitated and plain, with exact ratios.

Each round picks the set minimizing cost / marginal-gain, where the gain
of a candidate is the increase in the maximum partial-cover value (a max
flow for the capacitated variant, plain new-element count otherwise).
Ratios are exact Fractions; ties break to the lowest set id. The final
cost is certified against harmonic(n) * OPT by the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleError
from .flowcheck import max_cover_value
from .setsystem import AssignmentCover, SetCoverInstance


@dataclass(frozen=True)
class IterationRecord:
    set_id: int
    gain: int
    ratio: Fraction  # cost / gain at pick time
    covered_after: int  # cumulative max-cover value after the pick


@dataclass(frozen=True)
class GreedyTrace:
    iterations: tuple[IterationRecord, ...]
    cover: AssignmentCover
    cost: Fraction


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n as an exact Fraction (H_0 = 0)."""
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def solve_capacitated(inst: SetCoverInstance) -> GreedyTrace:
    """Greedy complete cover under hard capacities.

    Raises InfeasibleError carrying the best achievable covered count
    when no candidate set has positive marginal gain before completion
    (zero marginals at the current family imply zero forever, so that
    count equals the max over the full family).
    """
    n = inst.n_elements
    chosen: list[int] = []
    covered = 0
    records: list[IterationRecord] = []
    remaining = set(inst.set_ids)
    while covered < n:
        best_ratio: Fraction | None = None
        best_sid = -1
        best_gain = 0
        for sid in sorted(remaining):
            gain = max_cover_value(inst, chosen + [sid]).value - covered
            if gain <= 0:
                continue
            ratio = inst.sets[sid].cost / gain
            if best_ratio is None or ratio < best_ratio:
                best_ratio, best_sid, best_gain = ratio, sid, gain
        if best_ratio is None:
            raise InfeasibleError(
                f"no complete cover exists: at most {covered} of {n} elements coverable",
                achieved=covered,
            )
        chosen.append(best_sid)
        remaining.discard(best_sid)
        covered += best_gain
        records.append(
            IterationRecord(
                set_id=best_sid, gain=best_gain, ratio=best_ratio, covered_after=covered
            )
        )
    witness = max_cover_value(inst, chosen).witness
    cost = sum((inst.sets[s].cost for s in chosen), Fraction(0))
    return GreedyTrace(iterations=tuple(records), cover=witness, cost=cost)


def solve_uncapacitated(inst: SetCoverInstance) -> GreedyTrace:
    """Classic greedy set cover: capacities ignored (every set may take
    all of its members). Same trace shape as the capacitated solver."""
    n = inst.n_elements
    uncovered = set(range(n))
    chosen: list[int] = []
    pairs: list[tuple[int, int]] = []
    records: list[IterationRecord] = []
    remaining = set(inst.set_ids)
    while uncovered:
        best_ratio: Fraction | None = None
        best_sid = -1
        best_new: list[int] = []
        for sid in sorted(remaining):
            new = [e for e in inst.sets[sid].members if e in uncovered]
            if not new:
                continue
            ratio = inst.sets[sid].cost / len(new)
            if best_ratio is None or ratio < best_ratio:
                best_ratio, best_sid, best_new = ratio, sid, new
        if best_ratio is None:
            raise InfeasibleError(
                f"no complete cover exists: at most {n - len(uncovered)} of {n} "
                "elements coverable",
                achieved=n - len(uncovered),
            )
        chosen.append(best_sid)
        remaining.discard(best_sid)
        uncovered.difference_update(best_new)
        pairs.extend((best_sid, e) for e in best_new)
        records.append(
            IterationRecord(
                set_id=best_sid,
                gain=len(best_new),
                ratio=best_ratio,
                covered_after=n - len(uncovered),
            )
        )
    cover = AssignmentCover.from_pairs(chosen, pairs)
    cost = sum((inst.sets[s].cost for s in chosen), Fraction(0))
    return GreedyTrace(iterations=tuple(records), cover=cover, cost=cost)


def trace_to_obj(trace: GreedyTrace) -> dict:
    """JSON-able view of a greedy run (exact ratios carried as strings)."""
    return {
        "format_version": 1,
        "iterations": [
            {
                "set": r.set_id,
                "gain": r.gain,
                "ratio": float(r.ratio),
                "ratio_exact": f"{r.ratio.numerator}/{r.ratio.denominator}",
                "covered": r.covered_after,
            }
            for r in trace.iterations
        ],
        "cost": float(trace.cost),
        "chosen": sorted(trace.cover.chosen),
    }
