"""Set-system instances, partial covers, validation, and their JSON formats.

An instance is a ground set X = {0..n-1} plus weighted, capacitated sets.
A partial cover is a family of chosen sets together with (set, element)
assignment pairs; an element may be assigned to a set only if it is a
member, each set may take at most its capacity, and each element may be
assigned at most once. Assignments are stored as explicit pairs (not a
map) so that duplicate assignments are representable and reportable.

Costs are exact rationals on a 1e-9 grid (parsed digit-exactly from JSON
via ``parse_float=Fraction``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import MalformedInputError

FORMAT_VERSION = 1

_COST_GRID = 10**9


@dataclass(frozen=True)
class SetEntry:
    """One capacitated, weighted set: members must be sorted and unique."""

    id: int
    members: tuple[int, ...]
    cost: Fraction
    capacity: int


@dataclass(frozen=True)
class SetCoverInstance:
    """Ground set {0..n_elements-1} plus sets with dense ids 0..m-1."""

    n_elements: int
    sets: tuple[SetEntry, ...]

    def __post_init__(self):
        n = self.n_elements
        if not isinstance(n, int) or n < 0:
            raise MalformedInputError(f"n_elements must be a non-negative int, got {n!r}")
        for pos, entry in enumerate(self.sets):
            if entry.id != pos:
                raise MalformedInputError(
                    f"set ids must be dense 0..m-1 in order; position {pos} has id {entry.id}"
                )
            if entry.capacity < 0 or not isinstance(entry.capacity, int):
                raise MalformedInputError(f"set {entry.id}: capacity must be an int >= 0")
            if entry.cost < 0:
                raise MalformedInputError(f"set {entry.id}: cost must be >= 0")
            if (entry.cost * _COST_GRID).denominator != 1:
                raise MalformedInputError(
                    f"set {entry.id}: cost {entry.cost} is off the 1e-9 grid"
                )
            prev = -1
            for e in entry.members:
                if not isinstance(e, int) or not (0 <= e < n):
                    raise MalformedInputError(
                        f"set {entry.id}: member {e!r} outside ground set 0..{n - 1}"
                    )
                if e <= prev:
                    raise MalformedInputError(
                        f"set {entry.id}: members must be strictly increasing"
                    )
                prev = e

    @property
    def set_ids(self) -> range:
        return range(len(self.sets))

    def total_capacity(self, family: Iterable[int]) -> int:
        """Sum over the family of min(capacity, |members|): an upper bound
        on how many elements the family can ever take."""
        return sum(
            min(self.sets[s].capacity, len(self.sets[s].members)) for s in family
        )


def make_instance(n_elements: int, raw_sets: Iterable) -> SetCoverInstance:
    """Build an instance from (id, members, cost, capacity) tuples or dicts.

    Normalizes: members are deduplicated and sorted, costs coerced to
    Fraction, entries ordered by id. Ids must be dense 0..m-1.
    """
    entries = []
    for raw in raw_sets:
        if isinstance(raw, Mapping):
            sid, members = raw["id"], raw["members"]
            cost, capacity = raw["cost"], raw["capacity"]
        else:
            sid, members, cost, capacity = raw
        try:
            cost = cost if isinstance(cost, Fraction) else Fraction(str(cost))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"set {sid}: bad cost {cost!r}") from exc
        members = tuple(sorted({int(e) for e in members}))
        entries.append(SetEntry(int(sid), members, cost, int(capacity)))
    entries.sort(key=lambda s: s.id)
    if any(e.id != i for i, e in enumerate(entries)):
        raise MalformedInputError("set ids must be dense 0..m-1 with no duplicates")
    return SetCoverInstance(int(n_elements), tuple(entries))


@dataclass(frozen=True)
class AssignmentCover:
    """A chosen family plus (set_id, element_id) assignment pairs.

    Pairs are kept in canonical sorted order. The relation form permits
    duplicate assignments of one element, which ``validate_cover``
    detects and reports; ``mapping`` is only available on covers without
    duplicates.
    """

    chosen: frozenset[int]
    pairs: tuple[tuple[int, int], ...]

    @staticmethod
    def from_pairs(chosen: Iterable[int], pairs: Iterable[tuple[int, int]]) -> "AssignmentCover":
        canon = tuple(sorted((int(s), int(e)) for s, e in pairs))
        return AssignmentCover(frozenset(int(s) for s in chosen), canon)

    @staticmethod
    def from_mapping(chosen: Iterable[int], assignment: Mapping[int, int]) -> "AssignmentCover":
        return AssignmentCover.from_pairs(
            chosen, ((s, e) for e, s in assignment.items())
        )

    @property
    def mapping(self) -> dict[int, int]:
        """element -> set map; raises if any element is assigned twice."""
        out: dict[int, int] = {}
        for s, e in self.pairs:
            if e in out:
                raise MalformedInputError(
                    f"element {e} assigned to sets {out[e]} and {s}; no unique mapping"
                )
            out[e] = s
        return out

    @property
    def assigned_elements(self) -> frozenset[int]:
        return frozenset(e for _, e in self.pairs)


@dataclass(frozen=True)
class Violation:
    kind: str  # unknown-set | unknown-element | unchosen-set | membership | capacity | duplicate
    message: str


@dataclass(frozen=True)
class CoverReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_cover(inst: SetCoverInstance, cover: AssignmentCover) -> CoverReport:
    """Check a partial cover and report every violated constraint.

    Constraint classes: ids in range, assignments only to chosen member
    sets, per-set capacity respected, each element assigned at most once.
    """
    out: list[Violation] = []
    m = len(inst.sets)
    for s in sorted(cover.chosen):
        if not (0 <= s < m):
            out.append(Violation("unknown-set", f"chosen set {s} does not exist"))
    load: dict[int, int] = {}
    seen_elem: dict[int, int] = {}
    for s, e in cover.pairs:
        if not (0 <= s < m):
            out.append(Violation("unknown-set", f"({s},{e}): set {s} does not exist"))
            continue
        if not (0 <= e < inst.n_elements):
            out.append(Violation("unknown-element", f"({s},{e}): element {e} does not exist"))
            continue
        if s not in cover.chosen:
            out.append(Violation("unchosen-set", f"({s},{e}): set {s} is not in the chosen family"))
        if e not in inst.sets[s].members:
            out.append(Violation("membership", f"({s},{e}): element {e} is not a member of set {s}"))
        load[s] = load.get(s, 0) + 1
        seen_elem[e] = seen_elem.get(e, 0) + 1
    for s in sorted(load):
        if load[s] > inst.sets[s].capacity:
            out.append(
                Violation(
                    "capacity",
                    f"set {s} assigned {load[s]} elements, capacity {inst.sets[s].capacity}",
                )
            )
    for e in sorted(seen_elem):
        if seen_elem[e] > 1:
            out.append(
                Violation("duplicate", f"element {e} assigned {seen_elem[e]} times")
            )
    return CoverReport(tuple(out))


def cover_cost(inst: SetCoverInstance, cover: AssignmentCover) -> Fraction:
    """Total cost of the chosen family (assignment pairs do not matter)."""
    m = len(inst.sets)
    for s in cover.chosen:
        if not (0 <= s < m):
            raise MalformedInputError(f"chosen set {s} does not exist")
    return sum((inst.sets[s].cost for s in cover.chosen), Fraction(0))


def is_complete(inst: SetCoverInstance, cover: AssignmentCover) -> bool:
    """True iff the cover is valid and assigns every element of X."""
    report = validate_cover(inst, cover)
    if not report.valid:
        raise MalformedInputError(
            "cover is not valid: " + "; ".join(v.message for v in report.violations[:3])
        )
    return len(cover.assigned_elements) == inst.n_elements


# ---------------------------------------------------------------------------
# JSON formats


def _json_num(value: Fraction):
    return int(value) if value.denominator == 1 else float(value)


def canonical_json(obj) -> str:
    """Stable serialization used by every writer in the package."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def instance_to_obj(inst: SetCoverInstance) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n": inst.n_elements,
        "sets": [
            {
                "id": s.id,
                "members": list(s.members),
                "cost": _json_num(s.cost),
                "capacity": s.capacity,
            }
            for s in inst.sets
        ],
    }


def instance_from_obj(obj) -> SetCoverInstance:
    if not isinstance(obj, dict):
        raise MalformedInputError("instance file must hold a JSON object")
    if obj.get("format_version") != FORMAT_VERSION:
        raise MalformedInputError(
            f"unsupported or missing format_version (want {FORMAT_VERSION})"
        )
    try:
        return make_instance(obj["n"], obj["sets"])
    except MalformedInputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad instance object: {exc}") from exc


def load_instance(path) -> SetCoverInstance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path}: not valid JSON: {exc}") from exc
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc}") from exc
    return instance_from_obj(obj)


def save_instance(path, inst: SetCoverInstance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(instance_to_obj(inst)))


def cover_to_obj(inst: SetCoverInstance, cover: AssignmentCover) -> dict:
    mapping = cover.mapping  # raises on duplicates: files carry the map form
    return {
        "format_version": FORMAT_VERSION,
        "chosen": sorted(cover.chosen),
        "assignment": {str(e): s for e, s in sorted(mapping.items())},
        "cost": _json_num(cover_cost(inst, cover)),
    }


def cover_from_obj(obj) -> AssignmentCover:
    if not isinstance(obj, dict):
        raise MalformedInputError("cover file must hold a JSON object")
    if obj.get("format_version") != FORMAT_VERSION:
        raise MalformedInputError(
            f"unsupported or missing format_version (want {FORMAT_VERSION})"
        )
    try:
        chosen = [int(s) for s in obj["chosen"]]
        assignment = {int(e): int(s) for e, s in obj["assignment"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedInputError(f"bad cover object: {exc}") from exc
    return AssignmentCover.from_mapping(chosen, assignment)


def load_cover(path) -> AssignmentCover:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path}: not valid JSON: {exc}") from exc
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc}") from exc
    return cover_from_obj(obj)


def save_cover(path, inst: SetCoverInstance, cover: AssignmentCover) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(cover_to_obj(inst, cover)))
