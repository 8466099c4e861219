import random

import pytest
from hypothesis import given, settings, strategies as st

from eventeval import softed
from eventeval.core import validate_instance
from eventeval.hard_metrics import NA, hard_confusion
from eventeval.softed import (
    SoftCounts,
    attribute,
    evaluate_soft,
    membership,
    resolve_representatives,
    soft_counts,
    soft_scores,
)

from conftest import random_instance
from oracles import exhaustive_best_total, membership_exact, nearest_sets


def resolved(events, dets, k, rule="optimal"):
    return resolve_representatives(attribute(events, dets, k), rule)


# --- membership --------------------------------------------------------------


@pytest.mark.parametrize("k", [0.5, 1, 7, 15, 60.25])
def test_membership_peak_and_ramps(k):
    assert membership(50, 50, k) == 1
    assert membership(50 + k, 50, k) == 0
    assert membership(50 - k, 50, k) == 0
    assert membership(50 + k / 2, 50, k) == pytest.approx(0.5, abs=1e-12)


def test_membership_direct_evaluation():
    assert membership(47, 50, 15) == pytest.approx(0.8, abs=1e-12)


def test_membership_outside_is_zero():
    assert membership(10, 50, 15) == 0.0


def test_membership_rejects_bad_k():
    with pytest.raises(ValueError):
        membership(1, 1, 0)


def test_kernel_membership_matches(kernels):
    for d in range(30, 71):
        assert kernels.membership(d, 50, 15) == pytest.approx(float(membership_exact(d, 50, 15)), abs=1e-12)


# --- assignment phase ----------------------------------------------------------


def test_attribute_nearest_event():
    a = attribute([10, 20], [14], 15)
    assert a.event_of_detection == (frozenset({10}),)
    assert membership(14, 10, 15) == pytest.approx(11 / 15)
    assert membership(14, 20, 15) == pytest.approx(9 / 15)
    assert a.detections_of_event == ((14,), ())


def test_attribute_tie_gives_set():
    a = attribute([10, 20], [15], 15)
    assert a.event_of_detection == (frozenset({10, 20}),)
    assert a.detections_of_event == ((15,), (15,))


def test_attribute_outside_tolerance():
    a = attribute([10], [40], 15)
    assert a.detections_of_event == ((),)


def test_candidates_ordered_by_membership_then_time():
    a = attribute([50], [44, 47, 53, 56, 60], 15)
    assert a.detections_of_event == ((47, 53, 44, 56, 60),)


def test_attribute_unresolved_has_no_scores():
    a = attribute([50], [47], 15)
    assert not a.resolved
    assert a.representative == (None,)
    with pytest.raises(ValueError):
        soft_counts(a, 100)


# --- scoring phase -------------------------------------------------------------


def test_many_detections_single_event():
    # three candidates with strictly decreasing membership
    a = resolved([50], [47, 55, 60], 15)
    assert a.representative == (47,)
    assert a.detection_score == pytest.approx((0.8, 0.0, 0.0))


def test_representative_max_membership():
    a = resolved([50], [47, 60], 15)
    assert a.detection_score == pytest.approx((0.8, 0.0))
    assert a.event_score == pytest.approx((0.8,))


def test_tied_detection_goes_to_earlier_event():
    a = resolved([10, 20], [15], 15)
    assert a.representative == (15, None)
    assert a.event_score == pytest.approx((2 / 3, 0.0))


def test_equal_membership_candidates_pick_earliest():
    a = resolved([50], [45, 55], 15)
    assert a.representative == (45,)


# Two events share the midpoint detection 7; the earlier event's other
# candidate (2) is closer than the later event's (13).
COUNTEREXAMPLE = ([5, 9], [2, 7, 13], 5)


def test_optimal_rule_defers_shared_detection():
    a = resolved(*COUNTEREXAMPLE, rule="optimal")
    assert a.representative == (2, 7)
    assert sum(a.detection_score) == pytest.approx(1.0)


def test_greedy_rule_falls_back():
    a = resolved(*COUNTEREXAMPLE, rule="greedy")
    assert a.representative == (7, 13)
    assert sum(a.detection_score) == pytest.approx(0.8)


def test_strict_rule_has_no_fallback():
    a = resolved(*COUNTEREXAMPLE, rule="strict")
    assert a.representative == (7, None)
    assert sum(a.detection_score) == pytest.approx(0.6)


def test_unknown_rule():
    with pytest.raises(ValueError, match="unknown resolution rule"):
        resolved([5], [5], 3, rule="best")


@pytest.mark.parametrize("rule", sorted(softed.RULES))
def test_rules_agree_without_shared_detections(rule):
    a = resolved([10, 40, 90], [8, 12, 39, 45, 95], 6, rule=rule)
    assert a.representative == (8, 39, 95)


# --- counts and scores -----------------------------------------------------------


def test_soft_counts_perfect_match():
    sc = soft_counts(resolved([5], [5], 15), 10)
    assert sc == SoftCounts(1.0, 0.0, 9.0, 0.0)


def test_soft_counts_near_miss():
    sc = soft_counts(resolved([50], [47, 60], 15), 100)
    # ds = (0.8, 0): tps = 0.8, fps = 2 - 0.8, tns = 99 - 1.2, fns = 1 - 0.8
    assert sc.tps == pytest.approx(0.8, abs=1e-12)
    assert sc.fps == pytest.approx(1.2, abs=1e-12)
    assert sc.tns == pytest.approx(97.8, abs=1e-12)
    assert sc.fns == pytest.approx(0.2, abs=1e-12)


def test_soft_counts_no_detections():
    assert soft_counts(resolved([50], [], 15), 100) == SoftCounts(0.0, 0.0, 99.0, 1.0)


def test_soft_scores_near_miss():
    s = soft_scores(SoftCounts(0.8, 1.2, 97.8, 0.2))
    assert s.precision == pytest.approx(0.4, abs=1e-12)
    assert s.recall == pytest.approx(0.8, abs=1e-12)
    # harmonic mean: 2 * 0.4 * 0.8 / 1.2
    assert s.f1 == pytest.approx(8 / 15, abs=1e-12)


def test_soft_scores_perfect_and_empty():
    perfect = soft_scores(SoftCounts(3.0, 0.0, 97.0, 0.0))
    assert perfect.precision == perfect.recall == perfect.f1 == perfect.specificity == 1
    empty = soft_scores(SoftCounts(0.0, 0.0, 99.0, 1.0))
    assert empty.precision is NA and empty.recall == 0


def test_evaluate_soft_on_instance():
    inst = validate_instance(100, [50], {"A": [47, 60]})
    att, sc = evaluate_soft(inst, "A", 15)
    assert att.resolved and sc.tps == pytest.approx(0.8)


# --- backends ------------------------------------------------------------------------


def test_backends_agree():
    from eventeval import _backend

    if _backend.compiled is None:
        pytest.skip("compiled kernels not built")
    rng = random.Random(11)
    for _ in range(2000):
        _, events, dets = random_instance(rng, max_length=120, max_m=8, max_n=20)
        k = rng.choice([0.5, 1, 2.5, 5, 15, 40])
        for rule in softed.RULES.values():
            assert _backend.pure.resolve(events, dets, k, rule) == _backend.compiled.resolve(events, dets, k, rule)


def test_nearest_events_matches_brute_force(kernels):
    rng = random.Random(5)
    for _ in range(500):
        _, events, dets = random_instance(rng, max_length=60, max_m=6, max_n=12)
        lo, hi = kernels.nearest_events(events, dets)
        brute = nearest_sets(events, dets)
        assert [{events[a], events[b]} for a, b in zip(lo, hi)] == brute


# --- properties ------------------------------------------------------------------------

instances = st.integers(1, 150).flatmap(
    lambda length: st.tuples(
        st.just(length),
        st.sets(st.integers(1, length), min_size=1, max_size=8).map(sorted),
        st.sets(st.integers(1, length), max_size=15).map(sorted),
    )
)


@given(instances, st.floats(0.1, 80))
@settings(max_examples=300, deadline=None)
def test_scoring_constraints(inst, k):
    length, events, dets = inst
    a = resolved(events, dets, k)
    reps = [r for r in a.representative if r is not None]
    assert len(reps) == len(set(reps))
    assert sum(a.detection_score) <= len(events)
    for es in a.event_score:
        assert 0 <= es <= 1
    sc = soft_counts(a, length)
    assert sc.tps + sc.fns == pytest.approx(len(events), abs=1e-9)
    assert sc.fps + sc.tns == pytest.approx(length - len(events), abs=1e-9)
    assert sc.tps + sc.fps == pytest.approx(len(dets), abs=1e-9)


@given(instances)
@settings(max_examples=200, deadline=None)
def test_soft_dominates_hard(inst):
    length, events, dets = inst
    validated = validate_instance(length, events, {"A": dets})
    hc = hard_confusion(validated, "A")
    _, sc = evaluate_soft(validated, "A", 15)
    assert sc.tps >= hc.tp - 1e-12


@given(instances, st.integers(-40, 40), st.floats(0.5, 40))
@settings(max_examples=200, deadline=None)
def test_shift_invariance(inst, shift, k):
    length, events, dets = inst
    pts = events + dets
    if min(pts) + shift < 1 or max(pts) + shift > length:
        shift = 0
    a = soft_counts(resolved(events, dets, k), length)
    b = soft_counts(resolved([e + shift for e in events], [d + shift for d in dets], k), length)
    assert a.tps == pytest.approx(b.tps, abs=1e-12)
    assert a.fps == pytest.approx(b.fps, abs=1e-12)


@given(instances)
@settings(max_examples=100, deadline=None)
def test_perfect_detection(inst):
    length, events, _ = inst
    sc = soft_counts(resolved(events, events, 15), length)
    assert sc == SoftCounts(float(len(events)), 0.0, float(length - len(events)), 0.0)


def test_optimal_matches_exhaustive_oracle():
    rng = random.Random(2024)
    for _ in range(3000):
        _, events, dets = random_instance(rng, max_length=40, max_m=3, max_n=4)
        k = rng.choice([1.5, 2, 3, 5, 8])
        total = sum(resolved(events, dets, k).detection_score)
        assert total == pytest.approx(float(exhaustive_best_total(events, dets, k)), abs=1e-9)


def test_soft_tp_shortcut_matches():
    assert softed.soft_tp([50], [47, 60], 15) == pytest.approx(0.8)


def test_optimal_matches_greedy_when_greedy_is_optimal(kernels):
    # the optimal rule only departs from greedy where greedy loses credit
    rng = random.Random(77)
    departures = 0
    for _ in range(5000):
        _, events, dets = random_instance(rng, max_length=80, max_m=8, max_n=16)
        k = rng.choice([2, 5, 10, 20])
        g_rep, _, g_ds = kernels.resolve(events, dets, k, softed.RULES["greedy"])
        o_rep, _, o_ds = kernels.resolve(events, dets, k, softed.RULES["optimal"])
        if abs(sum(g_ds) - sum(o_ds)) <= 1e-12:
            assert g_rep == o_rep
        else:
            assert sum(o_ds) > sum(g_ds)
            departures += 1
    assert departures > 0
