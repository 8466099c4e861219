import pytest

from eventeval.analysis import (
    PositionChange,
    ToleranceCategory,
    categorize_tolerance,
    compare_rankings,
    evaluate,
    rank,
    summarize_corpus,
    sweep_tolerance,
)
from eventeval.core import ToleranceConfig, validate_instance
from eventeval.hard_metrics import NA
from eventeval.scenarios import builtin_scenarios


def reports_for(length, events, dets, k=15):
    return {r.method: r for r in evaluate(validate_instance(length, events, dets), ToleranceConfig(k=k))}


def test_evaluate_one_report_per_method():
    reps = reports_for(100, [50], {"A": [50], "B": [47, 60], "C": []})
    assert set(reps) == {"A", "B", "C"}
    assert reps["A"].hard.f1 == reps["A"].soft.f1 == 1
    assert reps["B"].soft.f1 == pytest.approx(8 / 15)


def test_categories():
    reps = reports_for(100, [50], {"exact": [50], "near": [47], "far": [5], "none": []})
    assert categorize_tolerance(reps["exact"]) is ToleranceCategory.CONFIRMED
    assert categorize_tolerance(reps["near"]) is ToleranceCategory.INCORPORATED
    assert categorize_tolerance(reps["far"]) is ToleranceCategory.NOT_APPLICABLE
    assert categorize_tolerance(reps["none"]) is ToleranceCategory.NOT_APPLICABLE


def test_confirmed_when_soft_equals_hard_partial():
    # one exact hit, one far false alarm: tolerance adds nothing
    reps = reports_for(200, [50, 150], {"A": [50, 100]})
    assert reps["A"].soft.f1 == reps["A"].hard.f1
    assert categorize_tolerance(reps["A"]) is ToleranceCategory.CONFIRMED


def test_rank_orders_and_ties():
    reps = list(reports_for(100, [50], {"B": [50], "A": [50], "C": [47], "D": []}).values())
    table = rank(reps, "soft_f1")
    assert table.order == ("A", "B", "C", "D")
    assert [e.rank for e in table.entries] == [1, 1, 3, 4]
    assert [e.tied for e in table.entries] == [True, True, False, False]
    assert table.entries[-1].value is NA


def test_rank_unknown_criterion():
    reps = list(reports_for(100, [50], {"A": [50]}).values())
    with pytest.raises(ValueError):
        rank(reps, "auc")


def test_compare_rankings():
    reps = list(reports_for(100, [50], {"A": [47], "B": [50, 90], "C": [80]}).values())
    hard = rank(reps, "hard_f1")
    soft = rank(reps, "soft_f1")
    assert hard.order == ("B", "A", "C")
    assert soft.order == ("A", "B", "C")
    assert compare_rankings(hard, soft) == [
        PositionChange(1, 0, 1, 0),
        PositionChange(2, 0, 0, 1),
        PositionChange(3, 1, 0, 0),
    ]


def test_compare_rankings_short_tables():
    reps = list(reports_for(100, [50], {"A": [50]}).values())
    changes = compare_rankings(rank(reps, "hard_f1"), rank(reps, "soft_f1"), depth=3)
    assert changes[0].kept == 1
    assert changes[2] == PositionChange(3, 0, 0, 0)


def test_sweep_deltas_grow_with_k():
    inst = validate_instance(500, [100, 300], {"A": [80, 330]})
    rows = sweep_tolerance(inst)
    assert [r.k for r in rows] == [15, 30, 45, 60]
    recall = [r.delta_recall for r in rows]
    assert recall[0] == 0
    assert all(a <= b for a, b in zip(recall, recall[1:]))
    assert recall[-1] > 0


def test_sweep_na_delta():
    inst = validate_instance(100, [50], {"A": []})
    (row, *_) = sweep_tolerance(inst, k_values=[10])
    assert row.delta_precision is NA and row.delta_recall == 0


def test_summarize_corpus():
    per_series = [
        list(reports_for(100, [50], {"A": [50], "B": [47]}).values()),
        list(reports_for(100, [50], {"A": [5], "B": [50], "C": [52], "D": [51]}).values()),
    ]
    s = summarize_corpus(per_series)
    assert s.n_series == 2 and s.n_applications == 6
    assert s.per_application == pytest.approx({"incorporated": 3 / 6, "confirmed": 2 / 6, "not_applicable": 1 / 6})
    # series 1: 1/2 each of inc/conf; series 2: 2/4 inc, 1/4 conf, 1/4 n/a
    assert s.per_series == pytest.approx({"incorporated": 0.5, "confirmed": 0.375, "not_applicable": 0.125})
    # depth 3: two positions from the first series, three from the second
    assert sum(c.kept + c.climbed + c.dropped for c in s.rank_changes) == 5


def test_scenarios_hard_soft_f1():
    expected = {
        "perfect_recall": ((3 / 7, 1.0), (3 / 7, 1.0)),
        "detection_symmetry": ((0, 0), (13 / 15, 13 / 15)),
        "number_of_detections": ((0, 0), (0.12, 0.6)),
        "detection_distances": ((0, 0), (1 / 15, 13 / 15)),
        "detection_bias": ((1, 0), (1, 8 / 15)),
    }
    for sc in builtin_scenarios():
        if sc.name not in expected:
            continue
        reps = {r.method: r for r in evaluate(sc.instance)}
        (ha, hb), (sa, sb) = expected[sc.name]
        for method, h, s in (("A", ha, sa), ("B", hb, sb)):
            hard = reps[method].hard.f1
            assert (0 if hard is NA else hard) == pytest.approx(h, abs=1e-9), (sc.name, method)
            assert reps[method].soft.f1 == pytest.approx(s, abs=1e-9), (sc.name, method)
