"""Regenerate the example corpus shipped under ``src/eventeval/data/corpus``.

Run from the repository root: ``python tools/build_corpus.py``.
"""

import json
import shutil
from pathlib import Path

from eventeval import io as rio
from eventeval.detectors import (
    DetectorConfig,
    InjectedEvent,
    SyntheticSpec,
    classify_anomalies,
    classify_change_points,
    classify_events,
    generate_synthetic,
)
from eventeval.scenarios import builtin_scenarios

ROOT = Path(__file__).resolve().parents[1] / "src" / "eventeval" / "data" / "corpus"

SYNTHETIC = {
    "synth_spikes": SyntheticSpec(
        length=400,
        base="constant",
        noise=1.0,
        events=(InjectedEvent("spike", 80, 9.0), InjectedEvent("spike", 210, 8.0), InjectedEvent("spike", 330, 10.0)),
    ),
    "synth_level_shift": SyntheticSpec(
        length=300, base="trend", noise=0.5, slope=0.01, events=(InjectedEvent("level_shift", 150, 6.0),)
    ),
    "synth_seasonal_mixed": SyntheticSpec(
        length=500,
        base="seasonal",
        noise=0.4,
        amplitude=2.0,
        period=60,
        events=(InjectedEvent("spike", 120, 6.0), InjectedEvent("level_shift", 300, 5.0)),
    ),
    "synth_random_walk": SyntheticSpec(
        length=360, base="random_walk", noise=0.3, step=0.2, events=(InjectedEvent("level_shift", 200, 6.0),)
    ),
}


def _write(d: Path, length: int, events, detections: dict) -> None:
    d.mkdir(parents=True)
    (d / "events.csv").write_text(rio.events_csv(events))
    (d / "detections.csv").write_text(rio.detections_csv(detections))
    (d / "meta.json").write_text(json.dumps({"length": length}, indent=2) + "\n")


def main() -> None:
    if ROOT.exists():
        shutil.rmtree(ROOT)
    for sc in builtin_scenarios():
        inst = sc.instance
        _write(ROOT / sc.name, inst.length, inst.events.times, {d.method: d.times for d in inst.detections})
    for seed, (name, spec) in enumerate(SYNTHETIC.items()):
        values, truth = generate_synthetic(spec, seed=seed)
        sigma = 3.0 * spec.noise
        cfg = DetectorConfig(neighborhood=5, sigma=sigma)
        dets = {
            "events": classify_events(values, cfg).times,
            "anomalies": classify_anomalies(values, cfg).times,
            "change_points": classify_change_points(values, cfg).times,
            "lagged": tuple(min(spec.length, t + 4) for t in truth.times),
        }
        d = ROOT / name
        _write(d, spec.length, truth.times, dets)
        (d / "series.csv").write_text(rio.series_csv(values))
        (d / "meta.json").unlink()


if __name__ == "__main__":
    main()
