"""Delimited input files, report documents and tidy plot-data tables.

All time indices in files are 1-based: the first observation is ``1``.

Input files
-----------
events      header ``time``; one integer index per row
detections  header ``time`` (method named after the file stem) or
            ``time,method``
series      header ``time,value``; rows must cover ``1..n`` in order and fix
            the timeline length to ``n``

Report numbers are rendered with 12 significant digits and non-computable
scores as the token ``"n/a"``.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import jsonschema

from .analysis import (
    CorpusSummary,
    MetricReport,
    PositionChange,
    RankingTable,
    SweepRow,
    categorize_tolerance,
    compare_rankings,
    rank,
)
from .core import EvaluationInstance, Timeline, ToleranceConfig, ValidationError, validate_instance
from .hard_metrics import NA, is_na
from .nab import ApplicationProfile

SCHEMA_VERSION = "1.0"
NA_TOKEN = "n/a"
RANK_CRITERIA = ("hard_f1", "soft_f1", "nab_raw", "nab_f1")


class InputError(ValidationError):
    """A malformed input file; the message names the file and line."""


def _read_rows(path: Path) -> tuple[list[str], list[tuple[int, list[str]]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [(reader.line_num, row) for row in reader if row and any(c.strip() for c in row)]
    if not rows:
        raise InputError(f"{path}: file is empty (expected a header row)")
    header = [c.strip().lower() for c in rows[0][1]]
    return header, rows[1:]


def _int(value: str, path: Path, line: int) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise InputError(f"{path}:{line}: malformed row: {value!r} is not an integer time index") from None


def read_events(path: str | Path) -> list[int]:
    path = Path(path)
    header, rows = _read_rows(path)
    if header != ["time"]:
        raise InputError(f"{path}:1: unknown header {','.join(header)!r}; expected 'time'")
    out = []
    for line, row in rows:
        if len(row) != 1:
            raise InputError(f"{path}:{line}: malformed row: expected 1 column, got {len(row)}")
        out.append(_int(row[0], path, line))
    return out


def read_detections(path: str | Path) -> dict[str, list[int]]:
    path = Path(path)
    header, rows = _read_rows(path)
    if header == ["time"]:
        out: dict[str, list[int]] = {path.stem: []}
        for line, row in rows:
            if len(row) != 1:
                raise InputError(f"{path}:{line}: malformed row: expected 1 column, got {len(row)}")
            out[path.stem].append(_int(row[0], path, line))
        return out
    if header != ["time", "method"]:
        raise InputError(f"{path}:1: unknown header {','.join(header)!r}; expected 'time' or 'time,method'")
    out = {}
    for line, row in rows:
        if len(row) != 2 or not row[1].strip():
            raise InputError(f"{path}:{line}: malformed row: expected 'time,method'")
        out.setdefault(row[1].strip(), []).append(_int(row[0], path, line))
    return out


def read_series(path: str | Path) -> list[float]:
    path = Path(path)
    header, rows = _read_rows(path)
    if header != ["time", "value"]:
        raise InputError(f"{path}:1: unknown header {','.join(header)!r}; expected 'time,value'")
    values = []
    for expected, (line, row) in enumerate(rows, start=1):
        if len(row) != 2:
            raise InputError(f"{path}:{line}: malformed row: expected 'time,value'")
        t = _int(row[0], path, line)
        if t != expected:
            raise InputError(f"{path}:{line}: malformed row: expected time {expected}, got {t}")
        try:
            v = float(row[1])
        except ValueError:
            raise InputError(f"{path}:{line}: malformed row: {row[1]!r} is not a number") from None
        if not math.isfinite(v):
            raise InputError(f"{path}:{line}: malformed row: non-finite value")
        values.append(v)
    if not values:
        raise InputError(f"{path}: series has no rows")
    return values


def read_inputs(
    events_path: str | Path,
    detection_paths: Sequence[str | Path],
    series_path: str | Path | None = None,
    length: int | None = None,
) -> tuple[EvaluationInstance, list[float] | None]:
    """Parse input files into a validated instance (and the series, if given)."""
    series = read_series(series_path) if series_path is not None else None
    if series is not None:
        if length is not None and length != len(series):
            raise InputError(f"--length {length} disagrees with series length {len(series)}")
        length = len(series)
    if length is None:
        raise InputError("timeline length unspecified: pass a series file or --length")
    events = read_events(events_path)
    detections: dict[str, list[int]] = {}
    for p in detection_paths:
        for method, times in read_detections(p).items():
            if method in detections:
                raise ValidationError(f"duplicate method name {method!r}")
            detections[method] = times
    return validate_instance(Timeline(length), events, detections), series


def read_instance_dir(path: str | Path) -> tuple[EvaluationInstance, list[float] | None]:
    """One corpus entry: ``events.csv``, ``detections*.csv`` and a length source.

    The length comes from ``series.csv`` or ``meta.json`` (``{"length": n}``).
    """
    path = Path(path)
    dets = sorted(path.glob("detections*.csv"))
    if not dets:
        raise InputError(f"{path}: no detections*.csv file")
    series_path = path / "series.csv"
    length = None
    meta = path / "meta.json"
    if meta.exists():
        try:
            length = int(json.loads(meta.read_text())["length"])
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"{meta}: malformed meta file: {exc}") from None
    return read_inputs(path / "events.csv", dets, series_path if series_path.exists() else None, length)


def corpus_path() -> Path:
    """Directory of the packaged example corpus (one sub-directory per instance)."""
    return Path(str(resources.files("eventeval").joinpath("data/corpus")))


# --- report documents -------------------------------------------------------


def num(value):
    """Render a score for a report: 12 significant digits or ``"n/a"``."""
    if is_na(value):
        return NA_TOKEN
    if isinstance(value, bool):
        raise TypeError("booleans are not report numbers")
    if isinstance(value, int):
        return value
    r = float(f"{value:.12g}")
    if r == int(r) and abs(r) < 2**53:
        # -0.0 and 1.0 alike collapse to canonical integers
        return int(r)
    return r


def _scores_doc(s) -> dict:
    return {key: num(v) for key, v in s.as_dict().items()}


def _report_doc(r: MetricReport) -> dict:
    hc, sc = r.hard_counts, r.soft_counts
    return {
        "method": r.method,
        "hard": {
            "counts": {"tp": hc.tp, "fp": hc.fp, "tn": hc.tn, "fn": hc.fn},
            "scores": _scores_doc(r.hard),
        },
        "soft": {
            "counts": {"tp": num(sc.tps), "fp": num(sc.fps), "tn": num(sc.tns), "fn": num(sc.fns)},
            "scores": _scores_doc(r.soft),
        },
        "nab": {
            "raw_score": num(r.nab.raw_score),
            "counts": {"tp": r.nab.counts.tp, "fp": r.nab.counts.fp, "tn": r.nab.counts.tn, "fn": r.nab.counts.fn},
            "f1": num(r.nab.f1),
        },
        "tolerance_category": categorize_tolerance(r).value,
    }


def _ranking_doc(table: RankingTable) -> list[dict]:
    return [{"method": e.method, "rank": e.rank, "value": num(e.value), "tied": e.tied} for e in table.entries]


def _changes_doc(changes: Iterable[PositionChange]) -> list[dict]:
    return [{"position": c.position, "kept": c.kept, "climbed": c.climbed, "dropped": c.dropped} for c in changes]


def sweep_doc(rows: Sequence[SweepRow]) -> list[dict]:
    return [
        {"method": r.method, "k": num(r.k), "delta_precision": num(r.delta_precision), "delta_recall": num(r.delta_recall)}
        for r in rows
    ]


def profile_doc(name: str, profile: ApplicationProfile) -> dict:
    return {
        "name": name,
        "weight_tp": num(profile.weight_tp),
        "weight_fp": num(profile.weight_fp),
        "weight_fn": num(profile.weight_fn),
    }


def instance_report(
    name: str,
    instance: EvaluationInstance,
    reports: Sequence[MetricReport],
    tolerance: ToleranceConfig,
    profile_name: str,
    profile: ApplicationProfile,
    rule: str,
    sweep: Sequence[SweepRow] | None = None,
) -> dict:
    tables = {c: rank(reports, c) for c in RANK_CRITERIA}
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "instance",
        "instance": {
            "series": name,
            "length": instance.length,
            "m": instance.events.m,
            "k": num(tolerance.k),
            "beta": num(tolerance.beta),
            "profile": profile_doc(profile_name, profile),
            "rule": rule,
            "warnings": list(instance.warnings),
        },
        "methods": [_report_doc(r) for r in reports],
        "rankings": {c: _ranking_doc(t) for c, t in tables.items()},
        "rank_changes": _changes_doc(compare_rankings(tables["hard_f1"], tables["soft_f1"])),
    }
    if sweep is not None:
        doc["sweep"] = sweep_doc(sweep)
    return doc


def corpus_report(entries: Sequence[dict], summary: CorpusSummary, settings: dict, kind: str = "batch") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "settings": settings,
        "instances": list(entries),
        "summary": {
            "n_series": summary.n_series,
            "n_applications": summary.n_applications,
            "categories_per_application": {k: num(v) for k, v in summary.per_application.items()},
            "categories_per_series": {k: num(v) for k, v in summary.per_series.items()},
            "rank_changes": _changes_doc(summary.rank_changes),
        },
    }


def load_schema() -> dict:
    text = resources.files("eventeval").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def validate_report(doc: dict) -> None:
    jsonschema.validate(doc, load_schema())


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def parse_score(value):
    """Inverse of :func:`num` for score fields."""
    return NA if value == NA_TOKEN else value


# --- flat renderings ---------------------------------------------------------

_FLAT_COLUMNS = (
    "series",
    "method",
    "hard_tp",
    "hard_fp",
    "hard_tn",
    "hard_fn",
    "hard_precision",
    "hard_recall",
    "hard_f1",
    "soft_tp",
    "soft_fp",
    "soft_tn",
    "soft_fn",
    "soft_precision",
    "soft_recall",
    "soft_f1",
    "nab_raw",
    "nab_f1",
    "category",
)


def _flat_rows(doc: dict) -> list[list]:
    docs = doc["instances"] if "instances" in doc else [doc]
    rows = []
    for d in docs:
        for mr in d["methods"]:
            h, s = mr["hard"], mr["soft"]
            rows.append(
                [
                    d["instance"]["series"],
                    mr["method"],
                    *(h["counts"][c] for c in ("tp", "fp", "tn", "fn")),
                    h["scores"]["precision"],
                    h["scores"]["recall"],
                    h["scores"]["f1"],
                    *(s["counts"][c] for c in ("tp", "fp", "tn", "fn")),
                    s["scores"]["precision"],
                    s["scores"]["recall"],
                    s["scores"]["f1"],
                    mr["nab"]["raw_score"],
                    mr["nab"]["f1"],
                    mr["tolerance_category"],
                ]
            )
    return rows


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _md(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps_json(doc)
    if doc["kind"] == "sweep":
        header = ("series", "method", "k", "delta_precision", "delta_recall")
        rows = [
            [d["instance"]["series"], r["method"], r["k"], r["delta_precision"], r["delta_recall"]]
            for d in doc["instances"]
            for r in d["sweep"]
        ]
    else:
        header, rows = _FLAT_COLUMNS, _flat_rows(doc)
    if fmt == "csv":
        return _csv(header, rows)
    if fmt == "md":
        return _md(header, rows)
    raise ValueError(f"unknown format {fmt!r}")


# --- plot data ---------------------------------------------------------------


@dataclass(frozen=True)
class PlotTable:
    name: str
    header: tuple[str, ...]
    rows: list[list]

    def to_csv(self) -> str:
        return _csv(self.header, self.rows)


def plot_tables(doc: dict) -> list[PlotTable]:
    """Tidy long-format tables behind category, ranking and sweep plots."""
    docs = doc["instances"] if "instances" in doc else [doc]
    tables = []
    if doc["kind"] != "sweep":
        metrics = []
        cats = []
        for d in docs:
            series, k = d["instance"]["series"], d["instance"]["k"]
            for mr in d["methods"]:
                for family in ("hard", "soft"):
                    for metric, value in mr[family]["scores"].items():
                        metrics.append([series, mr["method"], f"{family}_{metric}", k, value])
                metrics.append([series, mr["method"], "nab_raw", k, mr["nab"]["raw_score"]])
                metrics.append([series, mr["method"], "nab_f1", k, mr["nab"]["f1"]])
                cats.append([series, mr["method"], mr["tolerance_category"]])
        tables.append(PlotTable("metrics", ("dataset", "method", "metric", "k", "value"), metrics))
        tables.append(PlotTable("categories", ("series", "method", "category"), cats))
        changes = [
            [d["instance"]["series"], c["position"], outcome, c[outcome]]
            for d in docs
            for c in d["rank_changes"]
            for outcome in ("kept", "climbed", "dropped")
        ]
        tables.append(PlotTable("rank_changes", ("series", "position", "outcome", "count"), changes))
    sweep_rows = []
    for d in docs:
        for r in d.get("sweep", ()):
            sweep_rows.append([r["method"], r["k"], "precision", r["delta_precision"]])
            sweep_rows.append([r["method"], r["k"], "recall", r["delta_recall"]])
    if sweep_rows:
        if len(docs) > 1:
            header = ("series", "method", "k", "metric", "delta")
            sweep_rows = [
                [d["instance"]["series"], r["method"], r["k"], metric, r[f"delta_{metric}"]]
                for d in docs
                for r in d.get("sweep", ())
                for metric in ("precision", "recall")
            ]
        else:
            header = ("method", "k", "metric", "delta")
        tables.append(PlotTable("sweep", header, sweep_rows))
    return tables


def write_plot_data(doc: dict, directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for table in plot_tables(doc):
        p = directory / f"{table.name}.csv"
        p.write_text(table.to_csv())
        written.append(p)
    return written


# --- writers for generated inputs -------------------------------------------


def events_csv(times: Iterable[int]) -> str:
    return _csv(("time",), ([t] for t in times))


def detections_csv(detections: dict[str, Iterable[int]]) -> str:
    return _csv(("time", "method"), ([t, m] for m, times in detections.items() for t in times))


def series_csv(values: Sequence[float]) -> str:
    return _csv(("time", "value"), ([i, repr(float(v))] for i, v in enumerate(values, start=1)))
