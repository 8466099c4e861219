"""Soft (temporally tolerant) evaluation of event detections.

Each detection earns a credit in [0, 1] from a triangular membership around
its nearest event. Every event keeps at most one representative detection,
so the credited total never exceeds the number of events and the soft
confusion counts stay on the same scale as their hard counterparts.

Resolution rules for detections equidistant to two events:

``"optimal"`` (default)
    Events are visited in ascending time. A shared detection goes to the
    earlier event unless leaving it to the later one gives a strictly larger
    total credit. This attains the maximum total over every one-to-one
    assignment that respects nearest-event attribution.
``"greedy"``
    Each event, in ascending time, takes its best unconsumed candidate and
    falls back to the next one when the best was consumed.
``"strict"``
    Like ``"greedy"`` but with no fallback: an event whose best candidate
    was consumed scores 0.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence

from ._backend import RULE_GREEDY, RULE_OPTIMAL, RULE_STRICT, kernels
from .core import EvaluationInstance, ValidationError
from .hard_metrics import ScoreSet, scores

RULES = {"optimal": RULE_OPTIMAL, "greedy": RULE_GREEDY, "strict": RULE_STRICT}
DEFAULT_RULE = "optimal"


@dataclass(frozen=True)
class Attribution:
    """Bookkeeping from event assignment through detection scoring.

    Sequences are aligned with ``events`` (per-event fields) or
    ``detections`` (per-detection fields). Before resolution,
    ``representative`` is all ``None`` and both score tuples are zeros.
    """

    events: tuple[int, ...]
    detections: tuple[int, ...]
    k: float
    event_of_detection: tuple[frozenset[int], ...]
    detections_of_event: tuple[tuple[int, ...], ...]
    representative: tuple[int | None, ...]
    event_score: tuple[float, ...]
    detection_score: tuple[float, ...]
    resolved: bool = False
    rule: str | None = None


@dataclass(frozen=True)
class SoftCounts:
    tps: float
    fps: float
    tns: float
    fns: float


def membership(t_d: float, t_e: float, k: float) -> float:
    """Triangular membership of a detection at ``t_d`` for an event at ``t_e``."""
    if not k > 0:
        raise ValueError(f"tolerance k must be > 0, got {k}")
    return max(1.0 - abs(t_d - t_e) / k, 0.0)


def _rule_code(rule: str) -> int:
    try:
        return RULES[rule]
    except KeyError:
        raise ValueError(f"unknown resolution rule {rule!r}; expected one of {sorted(RULES)}") from None


def attribute(events: Sequence[int], detections: Sequence[int], k: float) -> Attribution:
    """Assignment phase: nearest-event sets and ordered per-event candidates."""
    if not k > 0:
        raise ValidationError(f"tolerance k must be > 0, got {k}")
    events = tuple(int(t) for t in events)
    detections = tuple(int(t) for t in detections)
    m = len(events)
    of_detection: list[frozenset[int]] = []
    per_event: list[list[int]] = [[] for _ in range(m)]
    for t in detections:
        pos = bisect_left(events, t)
        near = [j for j in (pos - 1, pos) if 0 <= j < m]
        best = min(abs(t - events[j]) for j in near) if near else None
        tied = [j for j in near if abs(t - events[j]) == best]
        of_detection.append(frozenset(events[j] for j in tied))
        for j in tied:
            if abs(t - events[j]) < k:
                per_event[j].append(t)
    ordered = tuple(tuple(sorted(c, key=lambda t, e=events[j]: (abs(t - e), t))) for j, c in enumerate(per_event))
    return Attribution(
        events=events,
        detections=detections,
        k=k,
        event_of_detection=tuple(of_detection),
        detections_of_event=ordered,
        representative=(None,) * m,
        event_score=(0.0,) * m,
        detection_score=(0.0,) * len(detections),
    )


def resolve_representatives(attribution: Attribution, rule: str = DEFAULT_RULE) -> Attribution:
    """Scoring phase: one representative per event, event and detection scores."""
    rep, es, ds = kernels.resolve(attribution.events, attribution.detections, attribution.k, _rule_code(rule))
    dets = attribution.detections
    return Attribution(
        events=attribution.events,
        detections=dets,
        k=attribution.k,
        event_of_detection=attribution.event_of_detection,
        detections_of_event=attribution.detections_of_event,
        representative=tuple(dets[i] if i >= 0 else None for i in rep),
        event_score=tuple(es),
        detection_score=tuple(ds),
        resolved=True,
        rule=rule,
    )


def soft_counts(attribution: Attribution, length: int) -> SoftCounts:
    if not attribution.resolved:
        raise ValueError("attribution must be resolved before counting")
    m = len(attribution.events)
    n = len(attribution.detections)
    tps = sum(attribution.detection_score)
    fps = n - tps
    return SoftCounts(tps=tps, fps=fps, tns=(length - m) - fps, fns=m - tps)


def soft_scores(counts: SoftCounts, beta: float = 1.0) -> ScoreSet:
    return scores(counts, beta)


def evaluate_soft(
    instance: EvaluationInstance, method: str, k: float, rule: str = DEFAULT_RULE
) -> tuple[Attribution, SoftCounts]:
    det = instance.detection_set(method)
    att = resolve_representatives(attribute(instance.events.times, det.times, k), rule)
    return att, soft_counts(att, instance.length)


def soft_tp(events: Sequence[int], detections: Sequence[int], k: float, rule: str = DEFAULT_RULE) -> float:
    """Total credited score without building an :class:`Attribution`."""
    return kernels.soft_tp(events, detections, k, _rule_code(rule))
