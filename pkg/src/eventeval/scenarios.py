"""Built-in two-method comparison scenarios.

Each scenario pits method ``A`` against method ``B`` on a small hand-built
instance that isolates one evaluation situation: perfect recall with extra
false alarms, neighbourhood-only detections, symmetric lead/lag, detection
count, detection distance, and exact match versus near miss. Distances are
chosen for the default tolerance ``k = 15``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import EvaluationInstance, validate_instance


@dataclass(frozen=True)
class Scenario:
    name: str
    title: str
    instance: EvaluationInstance


def _scenario(name: str, title: str, length: int, events, a, b) -> Scenario:
    return Scenario(name, title, validate_instance(length, events, {"A": a, "B": b}))


def builtin_scenarios() -> list[Scenario]:
    return [
        # both hit all three events; A adds eight isolated false alarms
        _scenario(
            "perfect_recall",
            "Perfect recall",
            200,
            [40, 100, 160],
            [40, 100, 160, 5, 12, 65, 72, 128, 135, 185, 195],
            [40, 100, 160],
        ),
        # neither hits an event; A sits just inside the tolerance of both
        # events, B reaches one event at the edge and scatters the rest
        _scenario(
            "event_neighborhood",
            "Event neighbourhood",
            300,
            [80, 200],
            [66, 186],
            [94, 10, 30, 45, 130, 140, 150, 240, 255, 270, 290],
        ),
        # one detection each, equally far before (A) and after (B) the event
        _scenario("detection_symmetry", "Detection symmetry", 120, [60], [58], [62]),
        # same closest distance; A adds eight more detections inside the window
        _scenario(
            "number_of_detections",
            "Number of detections",
            400,
            [200],
            [194, 207, 208, 209, 210, 211, 212, 213, 214],
            [194],
        ),
        # both lead each of two events; B is much closer
        _scenario("detection_distances", "Detection distances", 600, [100, 200], [86, 186], [98, 198]),
        # A matches exactly, B arrives seven steps early
        _scenario("detection_bias", "Detection bias", 150, [75], [75], [68]),
    ]
