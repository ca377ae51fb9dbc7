"""Instance/cover model: normalization, validation, and JSON round-trips."""

import json
from fractions import Fraction

import numpy as np
import pytest

from coverkit import generators, setsystem
from coverkit.errors import MalformedInputError
from coverkit.setsystem import (
    AssignmentCover,
    SetCoverInstance,
    SetEntry,
    canonical_json,
    cover_cost,
    cover_from_obj,
    cover_to_obj,
    instance_from_obj,
    instance_to_obj,
    is_complete,
    load_cover,
    load_instance,
    make_instance,
    save_cover,
    save_instance,
    validate_cover,
)


def test_make_instance_normalizes_members_and_costs():
    inst = make_instance(6, [(1, [5, 3, 3, 0], "0.5", 2), (0, (2,), 1, 1)])
    assert inst.n_elements == 6
    assert [s.id for s in inst.sets] == [0, 1]
    assert inst.sets[1].members == (0, 3, 5)
    assert inst.sets[1].cost == Fraction(1, 2)
    assert inst.sets[0].capacity == 1
    # dict form is accepted too and produces the same instance
    again = make_instance(
        6,
        [
            {"id": 0, "members": [2], "cost": 1, "capacity": 1},
            {"id": 1, "members": [5, 3, 0], "cost": "1/2", "capacity": 2},
        ],
    )
    assert again == inst


@pytest.mark.parametrize(
    "n,raw",
    [
        (3, [(0, [0], 1, 1), (2, [1], 1, 1)]),  # non-dense ids
        (3, [(0, [0], 1, 1), (0, [1], 1, 1)]),  # duplicate ids
        (3, [(0, [3], 1, 1)]),  # member out of range
        (3, [(0, [-1], 1, 1)]),  # negative member
        (3, [(0, [0], -1, 1)]),  # negative cost
        (3, [(0, [0], "1e-10", 1)]),  # cost off the 1e-9 grid
        (3, [(0, [0], 1, -1)]),  # negative capacity
        (3, [(0, [0], "nan", 1)]),  # unparseable cost
        (-1, []),  # bad ground set size
    ],
)
def test_make_instance_rejects_malformed(n, raw):
    with pytest.raises(MalformedInputError):
        make_instance(n, raw)


def test_direct_constructor_enforces_sorted_members():
    with pytest.raises(MalformedInputError):
        SetCoverInstance(4, (SetEntry(0, (2, 1), Fraction(1), 1),))


def test_total_capacity_clips_by_set_size():
    inst = make_instance(4, [(0, [0, 1], 1, 5), (1, [2], 1, 2)])
    assert inst.total_capacity([0]) == 2
    assert inst.total_capacity([0, 1]) == 3


def test_validate_cover_accepts_valid_partial_cover():
    inst = generators.example_cover_instance()
    cover = AssignmentCover.from_pairs([0, 1], [(0, 0), (0, 1), (1, 2)])
    report = validate_cover(inst, cover)
    assert report.valid
    assert report.violations == ()
    assert not is_complete(inst, cover)
    assert cover.assigned_elements == frozenset({0, 1, 2})


def _valid_base():
    inst = make_instance(
        5, [(0, [0, 1, 2], 2, 2), (1, [2, 3, 4], 3, 2), (2, [0, 4], 1, 1)]
    )
    cover = AssignmentCover.from_pairs([0, 1], [(0, 0), (0, 1), (1, 3), (1, 4)])
    assert validate_cover(inst, cover).valid
    return inst, cover


@pytest.mark.parametrize(
    "kind,chosen,pairs",
    [
        ("unknown-set", [0, 1, 7], [(0, 0), (0, 1), (1, 3), (1, 4)]),
        ("unknown-set", [0, 1], [(9, 0), (0, 1), (1, 3), (1, 4)]),
        ("unknown-element", [0, 1], [(0, 0), (0, 9), (1, 3), (1, 4)]),
        ("unchosen-set", [0], [(0, 0), (0, 1), (1, 3), (1, 4)]),
        ("membership", [0, 1], [(0, 0), (0, 3), (1, 3), (1, 4)]),
        ("capacity", [0, 1], [(0, 0), (0, 1), (0, 2), (1, 3)]),
        ("duplicate", [0, 1], [(0, 0), (0, 1), (1, 3), (1, 3)]),
    ],
)
def test_validate_cover_reports_each_violation_kind(kind, chosen, pairs):
    inst, _ = _valid_base()
    report = validate_cover(inst, AssignmentCover.from_pairs(chosen, pairs))
    assert not report.valid
    assert kind in {v.kind for v in report.violations}


def test_validate_cover_mixed_violation_example():
    # one cover exhibiting a non-member assignment and a double assignment
    inst = generators.validity_example_instance()
    cover = AssignmentCover.from_pairs([0, 2], [(0, 0), (0, 7), (2, 7)])
    kinds = {v.kind for v in validate_cover(inst, cover).violations}
    assert "membership" in kinds
    assert "duplicate" in kinds


def test_is_complete_rejects_invalid_cover():
    inst, _ = _valid_base()
    bad = AssignmentCover.from_pairs([0], [(0, 3)])
    with pytest.raises(MalformedInputError):
        is_complete(inst, bad)


def test_cover_cost_sums_chosen_only():
    inst, cover = _valid_base()
    assert cover_cost(inst, cover) == Fraction(5)
    with pytest.raises(MalformedInputError):
        cover_cost(inst, AssignmentCover.from_pairs([42], []))


def test_mapping_requires_unique_assignment():
    cover = AssignmentCover.from_pairs([0, 1], [(0, 2), (1, 2)])
    with pytest.raises(MalformedInputError):
        cover.mapping
    ok = AssignmentCover.from_pairs([0, 1], [(1, 3), (0, 2)])
    assert ok.mapping == {2: 0, 3: 1}
    assert ok.pairs == ((0, 2), (1, 3))  # canonical sorted order


def test_canonical_json_is_stable_and_newline_terminated():
    text = canonical_json({"b": 1, "a": [2, 1]})
    assert text.endswith("\n")
    assert text == canonical_json(json.loads(text))
    assert text.index('"a"') < text.index('"b"')


def test_instance_json_round_trip_preserves_exact_costs(tmp_path):
    rng = np.random.default_rng(7)
    for trial in range(25):
        inst = generators.random_cover_instance(
            n=int(rng.integers(1, 9)), m=int(rng.integers(1, 7)), seed=trial
        )
        path = tmp_path / f"inst_{trial}.json"
        save_instance(path, inst)
        back = load_instance(path)
        assert back == inst
        # serialization itself is a fixed point
        save_instance(tmp_path / "again.json", back)
        assert (tmp_path / "again.json").read_bytes() == path.read_bytes()


def test_instance_round_trip_keeps_ninth_decimal_costs(tmp_path):
    inst = make_instance(2, [(0, [0, 1], "0.000000001", 2)])
    path = tmp_path / "tiny_cost.json"
    save_instance(path, inst)
    assert load_instance(path).sets[0].cost == Fraction(1, 10**9)


def test_cover_json_round_trip(tmp_path):
    inst, cover = _valid_base()
    path = tmp_path / "cover.json"
    save_cover(path, inst, cover)
    back = load_cover(path)
    assert back == cover
    obj = cover_to_obj(inst, back)
    assert obj["chosen"] == [0, 1]
    assert obj["cost"] == 5
    assert cover_from_obj(obj) == cover


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {},
        {"format_version": 99, "n": 1, "sets": []},
        {"format_version": 1, "sets": []},
        {"format_version": 1, "n": 1, "sets": [{"id": 0}]},
    ],
)
def test_instance_from_obj_rejects_bad_objects(obj):
    with pytest.raises(MalformedInputError):
        instance_from_obj(obj)


def test_load_instance_rejects_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(MalformedInputError):
        load_instance(path)
    path2 = tmp_path / "bad_cover.json"
    path2.write_text('{"format_version": 1}\n', encoding="utf-8")
    with pytest.raises(MalformedInputError):
        load_cover(path2)


def test_instance_to_obj_emits_ints_for_integral_costs():
    inst = make_instance(2, [(0, [0], 3, 1), (1, [1], "1/2", 1)])
    obj = instance_to_obj(inst)
    assert obj["sets"][0]["cost"] == 3
    assert isinstance(obj["sets"][0]["cost"], int)
    assert obj["sets"][1]["cost"] == 0.5
