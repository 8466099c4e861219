"""Cross-method evaluation: reports, rankings, tolerance categories, k sweeps."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import EvaluationInstance, ToleranceConfig
from .hard_metrics import NA, HardCounts, Score, ScoreSet, hard_confusion, scores
from .nab import PROFILES, ApplicationProfile, NabResult, nab_score
from .softed import DEFAULT_RULE, SoftCounts, evaluate_soft

# Equality tolerance when comparing soft and hard F1.
F1_TOL = 1e-12


@dataclass(frozen=True)
class MetricReport:
    method: str
    k: float
    beta: float
    hard_counts: HardCounts
    hard: ScoreSet
    soft_counts: SoftCounts
    soft: ScoreSet
    nab: NabResult


class ToleranceCategory(str, enum.Enum):
    INCORPORATED = "incorporated"
    CONFIRMED = "confirmed"
    NOT_APPLICABLE = "not_applicable"


CRITERIA = ("hard_f1", "soft_f1", "nab_raw", "nab_f1")


@dataclass(frozen=True)
class RankEntry:
    method: str
    rank: int
    value: Score
    tied: bool


@dataclass(frozen=True)
class RankingTable:
    criterion: str
    entries: tuple[RankEntry, ...]

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(e.method for e in self.entries)


@dataclass(frozen=True)
class PositionChange:
    position: int
    kept: int
    climbed: int
    dropped: int


def evaluate(
    instance: EvaluationInstance,
    tolerance: ToleranceConfig = ToleranceConfig(),
    profile: ApplicationProfile = PROFILES["standard"],
    rule: str = DEFAULT_RULE,
) -> list[MetricReport]:
    reports = []
    for det in instance.detections:
        hc = hard_confusion(instance, det.method)
        _, sc = evaluate_soft(instance, det.method, tolerance.k, rule)
        reports.append(
            MetricReport(
                method=det.method,
                k=tolerance.k,
                beta=tolerance.beta,
                hard_counts=hc,
                hard=scores(hc, tolerance.beta),
                soft_counts=sc,
                soft=scores(sc, tolerance.beta),
                nab=nab_score(instance, det.method, profile),
            )
        )
    return reports


def categorize_tolerance(report: MetricReport) -> ToleranceCategory:
    soft, hard = report.soft.f1, report.hard.f1
    if soft is NA or report.soft.precision == 0 or report.soft.recall == 0:
        return ToleranceCategory.NOT_APPLICABLE
    if hard is NA or soft > hard + F1_TOL:
        return ToleranceCategory.INCORPORATED
    return ToleranceCategory.CONFIRMED


def criterion_value(report: MetricReport, criterion: str) -> Score:
    if criterion == "hard_f1":
        return report.hard.f1
    if criterion == "soft_f1":
        return report.soft.f1
    if criterion == "nab_raw":
        return report.nab.raw_score
    if criterion == "nab_f1":
        return report.nab.f1
    raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}")


def _rank_key(value: Score) -> tuple[int, float]:
    # n/a sorts below every number
    return (1, 0.0) if value is NA else (0, -value)


def rank(reports: Sequence[MetricReport], criterion: str) -> RankingTable:
    """Descending order by ``criterion``; ties share a rank, broken by name."""
    rows = sorted(((criterion_value(r, criterion), r.method) for r in reports), key=lambda p: (_rank_key(p[0]), p[1]))
    counts = Counter(_rank_key(v) for v, _ in rows)
    entries = []
    prev_key = None
    current = 0
    for pos, (value, method) in enumerate(rows, start=1):
        key = _rank_key(value)
        if key != prev_key:
            current = pos
            prev_key = key
        entries.append(RankEntry(method=method, rank=current, value=value, tied=counts[key] > 1))
    return RankingTable(criterion=criterion, entries=tuple(entries))


def compare_rankings(table_hard: RankingTable, table_soft: RankingTable, depth: int = 3) -> list[PositionChange]:
    """Per position, whether the soft-ranked method kept, climbed to or dropped to it."""
    hard_pos = {m: i for i, m in enumerate(table_hard.order, start=1)}
    out = []
    for pos in range(1, depth + 1):
        kept = climbed = dropped = 0
        if pos <= len(table_soft.order):
            before = hard_pos[table_soft.order[pos - 1]]
            if before == pos:
                kept = 1
            elif before > pos:
                climbed = 1
            else:
                dropped = 1
        out.append(PositionChange(pos, kept, climbed, dropped))
    return out


@dataclass(frozen=True)
class SweepRow:
    method: str
    k: float
    delta_precision: Score
    delta_recall: Score


def _delta(a: Score, b: Score) -> Score:
    if a is NA or b is NA:
        return NA
    return a - b


def sweep_tolerance(
    instance: EvaluationInstance, k_values: Iterable[float] = (15, 30, 45, 60), rule: str = DEFAULT_RULE
) -> list[SweepRow]:
    """Soft minus hard precision and recall for every method at every ``k``."""
    rows = []
    for det in instance.detections:
        hard = scores(hard_confusion(instance, det.method))
        for k in k_values:
            _, sc = evaluate_soft(instance, det.method, k, rule)
            soft = scores(sc)
            rows.append(
                SweepRow(det.method, k, _delta(soft.precision, hard.precision), _delta(soft.recall, hard.recall))
            )
    return rows


@dataclass(frozen=True)
class CorpusSummary:
    """Category shares at two granularities plus summed rank changes.

    ``per_application`` counts each (series, method) evaluation once;
    ``per_series`` averages each series' own category shares.
    """

    n_series: int
    n_applications: int
    per_application: dict[str, float]
    per_series: dict[str, float]
    rank_changes: tuple[PositionChange, ...]


def summarize_corpus(per_series_reports: Sequence[Sequence[MetricReport]], depth: int = 3) -> CorpusSummary:
    names = [c.value for c in ToleranceCategory]
    app_counts = Counter({n: 0 for n in names})
    series_share = Counter({n: 0.0 for n in names})
    totals = [[0, 0, 0] for _ in range(depth)]
    n_apps = 0
    for reports in per_series_reports:
        cats = [categorize_tolerance(r).value for r in reports]
        n_apps += len(cats)
        app_counts.update(cats)
        for n in names:
            series_share[n] += cats.count(n) / len(cats) if cats else 0.0
        changes = compare_rankings(rank(reports, "hard_f1"), rank(reports, "soft_f1"), depth)
        for i, ch in enumerate(changes):
            totals[i][0] += ch.kept
            totals[i][1] += ch.climbed
            totals[i][2] += ch.dropped
    n_series = len(per_series_reports)
    return CorpusSummary(
        n_series=n_series,
        n_applications=n_apps,
        per_application={n: (app_counts[n] / n_apps if n_apps else 0.0) for n in names},
        per_series={n: (series_share[n] / n_series if n_series else 0.0) for n in names},
        rank_changes=tuple(PositionChange(i + 1, *t) for i, t in enumerate(totals)),
    )
