"""Hard, soft (temporally tolerant) and NAB-style evaluation of time series
event detections, with benchmarking and ranking across detection methods.

>>> from eventeval import validate_instance, evaluate, ToleranceConfig
>>> inst = validate_instance(100, [50], {"A": [47, 60]})
>>> round(evaluate(inst, ToleranceConfig(k=15))[0].soft.f1, 4)
0.5333
"""

from ._backend import BACKEND
from .analysis import (
    MetricReport,
    RankingTable,
    ToleranceCategory,
    categorize_tolerance,
    compare_rankings,
    evaluate,
    rank,
    summarize_corpus,
    sweep_tolerance,
)
from .core import (
    DetectionSet,
    EvaluationInstance,
    EventSet,
    Timeline,
    ToleranceConfig,
    ValidationError,
    validate_instance,
)
from .hard_metrics import NA, HardCounts, ScoreSet, hard_confusion, is_na, scores
from .nab import PROFILES, AnomalyWindow, ApplicationProfile, NabResult, make_windows, nab_score, sigmoid_weight
from .softed import (
    Attribution,
    SoftCounts,
    attribute,
    evaluate_soft,
    membership,
    resolve_representatives,
    soft_counts,
    soft_scores,
)

__all__ = [
    "BACKEND",
    "NA",
    "PROFILES",
    "AnomalyWindow",
    "ApplicationProfile",
    "Attribution",
    "DetectionSet",
    "EvaluationInstance",
    "EventSet",
    "HardCounts",
    "MetricReport",
    "NabResult",
    "RankingTable",
    "ScoreSet",
    "SoftCounts",
    "Timeline",
    "ToleranceCategory",
    "ToleranceConfig",
    "ValidationError",
    "attribute",
    "categorize_tolerance",
    "compare_rankings",
    "evaluate",
    "evaluate_soft",
    "hard_confusion",
    "is_na",
    "make_windows",
    "membership",
    "nab_score",
    "rank",
    "resolve_representatives",
    "scores",
    "sigmoid_weight",
    "soft_counts",
    "soft_scores",
    "summarize_corpus",
    "sweep_tolerance",
    "validate_instance",
]
