"""Exact-match (hard) confusion counts and classification scores."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import EvaluationInstance


class NotApplicable:
    """Sentinel for a score whose defining ratio is 0/0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "n/a"

    __str__ = __repr__

    def __reduce__(self):
        return (NotApplicable, ())


NA = NotApplicable()

Score = Union[float, NotApplicable]


def is_na(value: object) -> bool:
    return value is NA


@dataclass(frozen=True)
class HardCounts:
    tp: int
    fp: int
    tn: int
    fn: int


@dataclass(frozen=True)
class ScoreSet:
    precision: Score
    recall: Score
    sensitivity: Score
    specificity: Score
    f_beta: Score
    f1: Score

    def as_dict(self) -> dict[str, Score]:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "f_beta": self.f_beta,
            "f1": self.f1,
        }


def _ratio(num: float, den: float) -> Score:
    if den == 0:
        return NA
    return num / den


def _f_beta(precision: Score, recall: Score, beta: float) -> Score:
    if precision is NA or recall is NA:
        return NA
    b2 = beta * beta
    den = b2 * precision + recall
    if den == 0:
        return NA
    return (1 + b2) * precision * recall / den


def hard_confusion(instance: EvaluationInstance, method: str) -> HardCounts:
    events = set(instance.events.times)
    dets = set(instance.detection_set(method).times)
    tp = len(events & dets)
    return HardCounts(
        tp=tp,
        fp=len(dets) - tp,
        tn=instance.length - len(events | dets),
        fn=len(events) - tp,
    )


def scores(counts, beta: float = 1.0) -> ScoreSet:
    """Precision, recall, specificity and F-scores from a confusion quadruple.

    Works on integer (hard) and real-valued (soft) counts alike; only a 0/0
    ratio yields :data:`NA`.
    """
    tp, fp, tn, fn = _unpack(counts)
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    specificity = _ratio(tn, tn + fp)
    return ScoreSet(
        precision=precision,
        recall=recall,
        sensitivity=recall,
        specificity=specificity,
        f_beta=_f_beta(precision, recall, beta),
        f1=_f_beta(precision, recall, 1.0),
    )


def _unpack(counts) -> tuple[float, float, float, float]:
    if isinstance(counts, HardCounts):
        return counts.tp, counts.fp, counts.tn, counts.fn
    # SoftCounts and similar quadruples
    return counts.tps, counts.fps, counts.tns, counts.fns
