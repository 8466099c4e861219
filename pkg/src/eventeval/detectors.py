"""Neighbourhood-deviation classifiers for events, anomalies and change points,
and a seeded synthetic series generator with injected ground truth.

A point ``x_t`` deviates on a side when it differs from the expectation
estimated on the ``neighborhood`` observations before (or after) it by more
than ``sigma``. Events deviate on at least one side, anomalies on both, and
change points on exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .core import EventSet, ValidationError

Side = Literal["before", "after"]

ESTIMATORS = {"mean": np.mean, "median": np.median}


class EstimatorError(ValueError):
    """The expectation is undefined (no in-range neighbours)."""


@dataclass(frozen=True)
class DetectorConfig:
    neighborhood: int = 5
    sigma: float = 1.0
    estimator: str = "mean"

    def __post_init__(self) -> None:
        if self.neighborhood < 1:
            raise ValidationError(f"neighborhood must be >= 1, got {self.neighborhood}")
        if not self.sigma > 0:
            raise ValidationError(f"sigma must be > 0, got {self.sigma}")
        if self.estimator not in ESTIMATORS:
            raise ValidationError(f"unknown estimator {self.estimator!r}")


def _as_series(series) -> np.ndarray:
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ValidationError("series must be one-dimensional")
    if not np.all(np.isfinite(x)):
        raise ValidationError("series contains non-finite values")
    return x


def expected_value(series, t: int, side: Side, neighborhood: int, estimator: str = "mean") -> float:
    """Estimator applied to the in-range side window of 1-based position ``t``."""
    x = _as_series(series)
    if side == "before":
        window = x[max(0, t - 1 - neighborhood) : t - 1]
    elif side == "after":
        window = x[t : t + neighborhood]
    else:
        raise ValueError(f"side must be 'before' or 'after', got {side!r}")
    if window.size == 0:
        raise EstimatorError(f"no in-range neighbours {side} t={t}")
    return float(ESTIMATORS[estimator](window))


def side_deviations(series, config: DetectorConfig) -> tuple[np.ndarray, np.ndarray]:
    """Per-side deviation flags as int8 arrays: 1 deviates, 0 does not, -1 no neighbours."""
    x = _as_series(series)
    n = x.size
    if n < config.neighborhood + 1:
        raise ValidationError(f"series of length {n} is shorter than neighborhood + 1 = {config.neighborhood + 1}")
    before = np.full(n, -1, dtype=np.int8)
    after = np.full(n, -1, dtype=np.int8)
    nb = config.neighborhood
    if config.estimator == "mean":
        csum = np.concatenate(([0.0], np.cumsum(x)))
        idx = np.arange(n)
        lo = np.maximum(idx - nb, 0)
        cnt_b = idx - lo
        ok = cnt_b > 0
        mean_b = np.where(ok, (csum[idx] - csum[lo]) / np.maximum(cnt_b, 1), 0.0)
        before[ok] = (np.abs(x - mean_b) > config.sigma)[ok]
        hi = np.minimum(idx + 1 + nb, n)
        cnt_a = hi - (idx + 1)
        ok = cnt_a > 0
        mean_a = np.where(ok, (csum[hi] - csum[np.minimum(idx + 1, n)]) / np.maximum(cnt_a, 1), 0.0)
        after[ok] = (np.abs(x - mean_a) > config.sigma)[ok]
    else:
        est = ESTIMATORS[config.estimator]
        for i in range(n):
            if i > 0:
                before[i] = abs(x[i] - est(x[max(0, i - nb) : i])) > config.sigma
            if i < n - 1:
                after[i] = abs(x[i] - est(x[i + 1 : i + 1 + nb])) > config.sigma
    return before, after


def _times(mask: np.ndarray) -> EventSet:
    return EventSet(tuple(int(i) + 1 for i in np.flatnonzero(mask)))


def classify_events(series, config: DetectorConfig) -> EventSet:
    before, after = side_deviations(series, config)
    return _times((before == 1) | (after == 1))


def classify_anomalies(series, config: DetectorConfig) -> EventSet:
    before, after = side_deviations(series, config)
    return _times((before == 1) & (after == 1))


def classify_change_points(series, config: DetectorConfig) -> EventSet:
    before, after = side_deviations(series, config)
    both = (before >= 0) & (after >= 0)
    return _times(both & ((before == 1) != (after == 1)))


CLASSIFIERS = {
    "events": classify_events,
    "anomalies": classify_anomalies,
    "change_points": classify_change_points,
}


# --- synthetic series -------------------------------------------------------

EVENT_KINDS = ("spike", "level_shift", "variance_shift")
BASES = ("constant", "trend", "seasonal", "random_walk")


@dataclass(frozen=True)
class InjectedEvent:
    kind: str
    time: int
    magnitude: float = 10.0

    def __post_init__(self) -> None:
        if self.kind not in EVENT_KINDS:
            raise ValidationError(f"unknown event kind {self.kind!r}; expected one of {EVENT_KINDS}")


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a synthetic series.

    ``level`` is the constant offset, ``slope`` the per-step trend,
    ``amplitude``/``period`` shape the seasonal base and ``step`` scales the
    random-walk increments. ``magnitude`` of a variance shift is the noise
    multiplier applied from its time onwards.
    """

    length: int
    base: str = "constant"
    noise: float = 1.0
    events: tuple[InjectedEvent, ...] = field(default_factory=tuple)
    level: float = 0.0
    slope: float = 0.05
    amplitude: float = 5.0
    period: int = 50
    step: float = 0.5

    def __post_init__(self) -> None:
        if self.base not in BASES:
            raise ValidationError(f"unknown base signal {self.base!r}; expected one of {BASES}")
        if self.length < 2:
            raise ValidationError("synthetic series needs length >= 2")
        if self.noise < 0:
            raise ValidationError("noise must be >= 0")
        for ev in self.events:
            if not 1 <= ev.time <= self.length:
                raise ValidationError(f"injected event index out of range: {ev.time} not in [1, {self.length}]")

    @classmethod
    def from_dict(cls, data: dict) -> "SyntheticSpec":
        data = dict(data)
        data["base"] = str(data.get("base", "constant")).replace("-", "_")
        data["events"] = tuple(
            InjectedEvent(kind=str(e["kind"]).replace("-", "_"), time=int(e["time"]), magnitude=float(e.get("magnitude", 10.0)))
            for e in data.get("events", ())
        )
        return cls(**data)


def generate_synthetic(spec: SyntheticSpec, seed: int = 0) -> tuple[np.ndarray, EventSet]:
    """Deterministic series for ``(spec, seed)`` and its injected ground truth."""
    rng = np.random.default_rng(seed)
    n = spec.length
    t = np.arange(n, dtype=float)
    if spec.base == "constant":
        x = np.full(n, spec.level)
    elif spec.base == "trend":
        x = spec.level + spec.slope * t
    elif spec.base == "seasonal":
        x = spec.level + spec.amplitude * np.sin(2 * np.pi * t / spec.period)
    else:
        x = spec.level + np.cumsum(rng.normal(0.0, spec.step, n))
    scale = np.full(n, spec.noise)
    for ev in spec.events:
        if ev.kind == "variance_shift":
            scale[ev.time - 1 :] *= ev.magnitude
    x = x + rng.normal(0.0, 1.0, n) * scale
    for ev in spec.events:
        if ev.kind == "spike":
            x[ev.time - 1] += ev.magnitude
        elif ev.kind == "level_shift":
            x[ev.time - 1 :] += ev.magnitude
    truth = EventSet(tuple(sorted({ev.time for ev in spec.events})))
    return x, truth
