"""NAB-style windowed scoring with window-derived confusion counts.

Windows are centred on each event with a nominal width of
``floor(0.1 * length / m)``. Inside a window the earliest detection earns a
sigmoid weight that rewards early detection; detections outside every window
are penalised relative to the preceding window; empty windows cost a miss.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Sequence

from .core import EvaluationInstance
from .hard_metrics import HardCounts, Score, scores


@dataclass(frozen=True)
class AnomalyWindow:
    event: int
    left: int
    right: int

    @property
    def width(self) -> int:
        return self.right - self.left + 1

    def __contains__(self, t: int) -> bool:
        return self.left <= t <= self.right


@dataclass(frozen=True)
class ApplicationProfile:
    weight_tp: float
    weight_fp: float
    weight_fn: float

    def __post_init__(self) -> None:
        for name in ("weight_tp", "weight_fp", "weight_fn"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be a finite non-negative number, got {v}")


# Weights of the reference NAB profiles.
PROFILES = {
    "standard": ApplicationProfile(weight_tp=1.0, weight_fp=0.11, weight_fn=1.0),
    "low-fp": ApplicationProfile(weight_tp=1.0, weight_fp=0.22, weight_fn=1.0),
    "low-fn": ApplicationProfile(weight_tp=1.0, weight_fp=0.11, weight_fn=2.0),
}

# Fraction of the series covered by all windows together.
WINDOW_FRACTION = 0.1
# Steepness of the scoring sigmoid.
SIGMOID_SLOPE = 5.0


@dataclass(frozen=True)
class NabResult:
    raw_score: float
    counts: HardCounts
    f1: Score
    windows: tuple[AnomalyWindow, ...] = ()


def window_width(length: int, m: int, fraction: float = WINDOW_FRACTION) -> int:
    # rational arithmetic: 0.1 * length / m in floats can land just under an integer
    return math.floor(Fraction(fraction).limit_denominator(10**6) * length / m)


def make_windows(
    events: Sequence[int], length: int, fraction: float = WINDOW_FRACTION
) -> list[AnomalyWindow]:
    m = len(events)
    if m < 1:
        raise ValueError("at least one event is required to build windows")
    for e in events:
        if not 1 <= e <= length:
            raise ValueError(f"index out of range: {e} not in [1, {length}]")
    w = window_width(length, m, fraction)
    half = w // 2
    return [AnomalyWindow(e, max(1, e - half), min(length, e + half)) for e in events]


def sigmoid_weight(y: float) -> float:
    """Scaled sigmoid ``2 / (1 + exp(slope * y)) - 1``.

    ``y <= 0`` inside a window (``-1`` at the left edge), positive after it.
    """
    z = SIGMOID_SLOPE * y
    if z > 700:
        return -1.0
    return 2.0 / (1.0 + math.exp(z)) - 1.0


def _owner(t: int, windows: Sequence[AnomalyWindow]) -> int:
    # nearest event's window among those containing t; ties -> earlier
    best = -1
    for idx, w in enumerate(windows):
        if t in w and (best < 0 or abs(t - w.event) < abs(t - windows[best].event)):
            best = idx
    return best


def score_detections(
    events: Sequence[int],
    detections: Sequence[int],
    length: int,
    profile: ApplicationProfile = PROFILES["standard"],
    windows: Sequence[AnomalyWindow] | None = None,
) -> NabResult:
    if windows is None:
        windows = make_windows(events, length)
    hit = [False] * len(windows)
    raw = 0.0
    tp = fp = 0
    for t in sorted(detections):
        idx = _owner(t, windows)
        if idx >= 0:
            tp += 1
            if not hit[idx]:
                w = windows[idx]
                hit[idx] = True
                raw += profile.weight_tp * sigmoid_weight((t - w.right - 1) / w.width)
            continue
        fp += 1
        prior = [w for w in windows if w.right < t]
        if prior:
            w = prior[-1]
            penalty = abs(sigmoid_weight((t - w.right) / w.width))
        else:
            penalty = 1.0
        raw -= profile.weight_fp * penalty
    fn = hit.count(False)
    raw -= profile.weight_fn * fn
    counts = HardCounts(tp=tp, fp=fp, tn=length - tp - fp - fn, fn=fn)
    return NabResult(raw_score=raw, counts=counts, f1=scores(counts).f1, windows=tuple(windows))


def nab_score(
    instance: EvaluationInstance, method: str, profile: ApplicationProfile = PROFILES["standard"]
) -> NabResult:
    det = instance.detection_set(method)
    return score_detections(instance.events.times, det.times, instance.length, profile)
