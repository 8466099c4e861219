import pytest

from eventeval.core import (
    DetectionSet,
    EvaluationInstance,
    EventSet,
    Timeline,
    ToleranceConfig,
    ValidationError,
    validate_instance,
)


def test_minimal_instance():
    inst = validate_instance(10, [5], {"A": [5]})
    assert isinstance(inst, EvaluationInstance)
    assert inst.events.times == (5,)
    assert inst.detection_set("A").times == (5,)
    assert inst.warnings == ()


def test_out_of_range_event_names_index():
    with pytest.raises(ValidationError, match="index out of range: 11"):
        validate_instance(10, [11], {"A": []})


def test_zero_index_is_out_of_range():
    with pytest.raises(ValidationError, match="out of range"):
        validate_instance(10, [5], {"A": [0]})


def test_dedup_and_sort_with_warning():
    inst = validate_instance(10, [5, 5, 3], {"A": []})
    assert inst.events.times == (3, 5)
    assert len(inst.warnings) == 1
    assert "duplicate" in inst.warnings[0]


def test_empty_events_rejected():
    with pytest.raises(ValidationError, match="empty"):
        validate_instance(10, [], {"A": [1]})


def test_empty_detections_allowed():
    inst = validate_instance(10, [4], {"A": []})
    assert inst.detection_set("A").n == 0


def test_duplicate_method_rejected():
    with pytest.raises(ValidationError, match="duplicate method"):
        validate_instance(10, [4], [DetectionSet("A", (1,)), DetectionSet("A", (2,))])


def test_unknown_method():
    inst = validate_instance(10, [4], {"A": []})
    with pytest.raises(KeyError):
        inst.detection_set("B")


@pytest.mark.parametrize("length", [0, -3])
def test_bad_timeline(length):
    with pytest.raises(ValidationError):
        Timeline(length)


@pytest.mark.parametrize("k,beta", [(0, 1), (-1, 1), (1, 0)])
def test_bad_tolerance(k, beta):
    with pytest.raises(ValidationError):
        ToleranceConfig(k=k, beta=beta)


def test_non_integer_index_rejected():
    with pytest.raises(ValidationError, match="non-integer"):
        validate_instance(10, [2.5], {"A": []})


def test_validation_is_idempotent():
    raw = validate_instance(20, [9, 3, 3, 14], {"A": [20, 1, 1], "B": []})
    again = validate_instance(raw.timeline, raw.events, raw.detections)
    assert again == raw
    assert again.warnings == ()


def test_stored_sequences_strictly_increasing():
    inst = validate_instance(50, [40, 2, 17, 2], {"A": [9, 8, 7, 7, 50]})
    for seq in (inst.events.times, *(d.times for d in inst.detections)):
        assert all(a < b for a, b in zip(seq, seq[1:]))


def test_counts():
    assert EventSet((1, 4)).m == 2
    assert DetectionSet("x", ()).n == 0
