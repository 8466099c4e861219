"""Domain types shared by every evaluator, plus instance validation.

Time is an integer observation index starting at 1. Wall-clock labels are
carried only as free text on :class:`Timeline`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)


class ValidationError(ValueError):
    """Raised when raw inputs cannot form a well-formed evaluation instance."""


@dataclass(frozen=True)
class Timeline:
    length: int
    origin: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.length, bool) or not isinstance(self.length, int):
            raise ValidationError(f"timeline length must be an integer, got {self.length!r}")
        if self.length < 1:
            raise ValidationError(f"timeline length must be >= 1, got {self.length}")


@dataclass(frozen=True)
class EventSet:
    times: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.times)

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self):
        return iter(self.times)


@dataclass(frozen=True)
class DetectionSet:
    method: str
    times: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.times)

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self):
        return iter(self.times)


@dataclass(frozen=True)
class ToleranceConfig:
    """Temporal tolerance ``k`` (in observations) and the F-beta weight."""

    k: float = 15.0
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise ValidationError(f"tolerance k must be > 0, got {self.k}")
        if not self.beta > 0:
            raise ValidationError(f"beta must be > 0, got {self.beta}")


@dataclass(frozen=True)
class EvaluationInstance:
    timeline: Timeline
    events: EventSet
    detections: tuple[DetectionSet, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def length(self) -> int:
        return self.timeline.length

    @property
    def methods(self) -> tuple[str, ...]:
        return tuple(d.method for d in self.detections)

    def detection_set(self, method: str) -> DetectionSet:
        for d in self.detections:
            if d.method == method:
                return d
        raise KeyError(f"unknown method {method!r}")


def _normalize(times: Iterable[int], length: int, what: str, warnings: list[str]) -> tuple[int, ...]:
    raw = list(times)
    for t in raw:
        if isinstance(t, bool) or int(t) != t:
            raise ValidationError(f"{what}: non-integer index {t!r}")
        if not 1 <= t <= length:
            raise ValidationError(f"{what}: index out of range: {t} not in [1, {length}]")
    seen: set[int] = set()
    for t in raw:
        t = int(t)
        if t in seen:
            msg = f"{what}: removed duplicate index {t}"
            warnings.append(msg)
            logger.warning(msg)
        seen.add(t)
    return tuple(sorted(seen))


def validate_instance(
    timeline: Timeline | int,
    events: EventSet | Iterable[int],
    detections: Mapping[str, Iterable[int]] | Sequence[DetectionSet],
) -> EvaluationInstance:
    """Build an immutable, validated :class:`EvaluationInstance`.

    Times are sorted and deduplicated; each removed duplicate produces one
    warning on the returned instance. Out-of-range indices, an empty event
    set and repeated method names raise :class:`ValidationError`.
    """
    if not isinstance(timeline, Timeline):
        timeline = Timeline(timeline)
    length = timeline.length
    warnings: list[str] = []

    ev_times = events.times if isinstance(events, EventSet) else events
    ev = EventSet(_normalize(ev_times, length, "events", warnings))
    if ev.m == 0:
        raise ValidationError("event set is empty; metrics over zero events are undefined")

    if isinstance(detections, Mapping):
        pairs = list(detections.items())
    else:
        pairs = [(d.method, d.times) for d in detections]
    if not pairs:
        raise ValidationError("at least one detection method is required")

    dets: list[DetectionSet] = []
    names: set[str] = set()
    for method, times in pairs:
        if not isinstance(method, str) or not method:
            raise ValidationError(f"method name must be a non-empty string, got {method!r}")
        if method in names:
            raise ValidationError(f"duplicate method name {method!r}")
        names.add(method)
        dets.append(DetectionSet(method, _normalize(times, length, f"detections[{method}]", warnings)))

    return EvaluationInstance(timeline, ev, tuple(dets), tuple(warnings))
