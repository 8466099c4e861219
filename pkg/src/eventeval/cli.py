"""Command-line harness: ``eventeval {eval,batch,sweep,detect,synth,scenarios}``.

Exit codes: 0 success, 1 validation or parse error, 2 I/O error. Errors go
to stderr as ``eventeval: error[<kind>]: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import io as rio
from .analysis import MetricReport, evaluate, summarize_corpus, sweep_tolerance
from .core import ToleranceConfig, ValidationError
from .detectors import CLASSIFIERS, DetectorConfig, SyntheticSpec, generate_synthetic
from .nab import PROFILES, ApplicationProfile
from .scenarios import builtin_scenarios
from .softed import DEFAULT_RULE, RULES

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

DEFAULT_K = 15.0
DEFAULT_SWEEP = "15,30,45,60"


class UsageError(ValidationError):
    pass


@dataclass(frozen=True)
class Settings:
    tolerance: ToleranceConfig
    profile_name: str
    profile: ApplicationProfile
    rule: str

    def as_doc(self) -> dict:
        return {
            "k": rio.num(self.tolerance.k),
            "beta": rio.num(self.tolerance.beta),
            "profile": rio.profile_doc(self.profile_name, self.profile),
            "rule": self.rule,
        }


def _k_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--k expects a number or comma-separated numbers, got {text!r}") from None
    if not values:
        raise UsageError("--k is empty")
    return values


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed config: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path}: config must be a JSON object")
    return data


def _settings(args, k: float | None = None) -> Settings:
    cfg = _load_config(args.config)
    if k is None:
        k = _k_list(args.k)[0] if args.k is not None else float(cfg.get("k", DEFAULT_K))
    beta = args.beta if args.beta is not None else float(cfg.get("beta", 1.0))
    rule = args.rule or cfg.get("rule", DEFAULT_RULE)
    if rule not in RULES:
        raise UsageError(f"unknown rule {rule!r}")
    profile = args.profile or cfg.get("profile", "standard")
    if isinstance(profile, dict):
        try:
            prof = ApplicationProfile(
                weight_tp=float(profile["weight_tp"]),
                weight_fp=float(profile["weight_fp"]),
                weight_fn=float(profile["weight_fn"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed profile in config: {exc}") from None
        name = str(profile.get("name", "custom"))
    else:
        if profile not in PROFILES:
            raise UsageError(f"unknown profile {profile!r}; expected one of {sorted(PROFILES)}")
        prof, name = PROFILES[profile], profile
    return Settings(ToleranceConfig(k=k, beta=beta), name, prof, rule)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SOFTED_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SOFTED_SEED must be an integer, got {env!r}") from None
    return 0


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _finish(doc: dict, args) -> None:
    rio.validate_report(doc)
    _emit(rio.render(doc, args.format), args.out)
    if args.plot_data:
        rio.write_plot_data(doc, args.plot_data)


# --- per-instance work (top-level so it can run in worker processes) ---------


def _instance_doc(name: str, path: str, settings: Settings) -> tuple[dict, list[MetricReport]]:
    instance, _ = rio.read_instance_dir(path)
    reports = evaluate(instance, settings.tolerance, settings.profile, settings.rule)
    doc = rio.instance_report(
        name, instance, reports, settings.tolerance, settings.profile_name, settings.profile, settings.rule
    )
    return doc, reports


def _sweep_doc(name: str, path: str, settings: Settings, ks: Sequence[float]) -> dict:
    instance, _ = rio.read_instance_dir(path)
    doc = rio.instance_report(
        name, instance, [], settings.tolerance, settings.profile_name, settings.profile, settings.rule
    )
    return {"instance": doc["instance"], "sweep": rio.sweep_doc(sweep_tolerance(instance, ks, settings.rule))}


def _map(fn, items, jobs: int):
    # results come back in input order whatever the worker count
    if jobs <= 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))


def _instance_dirs(directory: str) -> list[Path]:
    root = Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(f"not a directory: {root}")
    dirs = sorted(p for p in root.iterdir() if p.is_dir() and (p / "events.csv").exists())
    if not dirs:
        raise UsageError(f"{root}: no instance directories (each needs events.csv)")
    return dirs


# --- subcommands -------------------------------------------------------------


def cmd_eval(args) -> int:
    settings = _settings(args)
    instance, _ = rio.read_inputs(args.events, args.detections, args.series, args.length)
    reports = evaluate(instance, settings.tolerance, settings.profile, settings.rule)
    name = args.name or Path(args.events).resolve().parent.name
    doc = rio.instance_report(
        name, instance, reports, settings.tolerance, settings.profile_name, settings.profile, settings.rule
    )
    _finish(doc, args)
    return EXIT_OK


def _batch_doc(dirs: Sequence[Path], settings: Settings, jobs: int, kind: str = "batch") -> dict:
    items = [(d.name, str(d), settings) for d in dirs]
    results = _map(_instance_doc, items, jobs)
    docs = [doc for doc, _ in results]
    summary = summarize_corpus([reports for _, reports in results])
    return rio.corpus_report(docs, summary, settings.as_doc(), kind)


def cmd_batch(args) -> int:
    settings = _settings(args)
    doc = _batch_doc(_instance_dirs(args.directory), settings, args.jobs)
    _finish(doc, args)
    return EXIT_OK


def cmd_sweep(args) -> int:
    ks = _k_list(args.k if args.k is not None else DEFAULT_SWEEP)
    settings = _settings(args, k=ks[0])
    if args.directory:
        items = [(d.name, str(d), settings, ks) for d in _instance_dirs(args.directory)]
        entries = _map(_sweep_doc, items, args.jobs)
    else:
        if not args.events or not args.detections:
            raise UsageError("sweep needs --events and --detections, or --directory")
        instance, _ = rio.read_inputs(args.events, args.detections, args.series, args.length)
        name = args.name or Path(args.events).resolve().parent.name
        meta = rio.instance_report(
            name, instance, [], settings.tolerance, settings.profile_name, settings.profile, settings.rule
        )["instance"]
        entries = [{"instance": meta, "sweep": rio.sweep_doc(sweep_tolerance(instance, ks, settings.rule))}]
    settings_doc = settings.as_doc() | {"k_values": [rio.num(k) for k in ks]}
    doc = {"schema_version": rio.SCHEMA_VERSION, "kind": "sweep", "settings": settings_doc, "instances": entries}
    _finish(doc, args)
    return EXIT_OK


def cmd_detect(args) -> int:
    series = rio.read_series(args.series)
    config = DetectorConfig(neighborhood=args.neighborhood, sigma=args.sigma, estimator=args.estimator)
    found = CLASSIFIERS[args.kind](series, config)
    method = args.method or args.kind
    _emit(rio.detections_csv({method: found.times}), args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    spec = SyntheticSpec.from_dict(_load_config(args.spec))
    values, truth = generate_synthetic(spec, _seed(args))
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "series.csv").write_text(rio.series_csv(values))
    (out / "events.csv").write_text(rio.events_csv(truth.times))
    return EXIT_OK


def cmd_scenarios(args) -> int:
    settings = _settings(args)
    root = Path(args.out_dir) if args.out_dir else None
    docs = []
    per_series = []
    for sc in builtin_scenarios():
        inst = sc.instance
        if root is not None:
            d = root / sc.name
            d.mkdir(parents=True, exist_ok=True)
            (d / "events.csv").write_text(rio.events_csv(inst.events.times))
            (d / "detections.csv").write_text(rio.detections_csv({ds.method: ds.times for ds in inst.detections}))
            (d / "meta.json").write_text(json.dumps({"length": inst.length, "title": sc.title}, indent=2) + "\n")
        reports = evaluate(inst, settings.tolerance, settings.profile, settings.rule)
        per_series.append(reports)
        docs.append(
            rio.instance_report(
                sc.name, inst, reports, settings.tolerance, settings.profile_name, settings.profile, settings.rule
            )
        )
    doc = rio.corpus_report(docs, summarize_corpus(per_series), settings.as_doc(), "scenarios")
    _finish(doc, args)
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", default=None, help="temporal tolerance in observations (default 15)")
    common.add_argument("--beta", type=float, default=None, help="F-beta weight (default 1)")
    common.add_argument("--profile", default=None, help="NAB profile: standard, low-fp or low-fn")
    common.add_argument("--rule", choices=sorted(RULES), default=None, help="shared-detection resolution rule")
    common.add_argument("--config", default=None, help="JSON config with k, beta, rule, profile")
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=None, help="random seed (fallback: $SOFTED_SEED)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--plot-data", default=None, metavar="DIR", help="also write tidy CSV tables to DIR")

    parser = argparse.ArgumentParser(prog="eventeval", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--events", required=p.prog.endswith("eval"))
        p.add_argument("--detections", nargs="+", required=p.prog.endswith("eval"))
        p.add_argument("--series", default=None)
        p.add_argument("--length", type=int, default=None)
        p.add_argument("--name", default=None, help="series name in the report")

    p = sub.add_parser("eval", parents=[common], help="evaluate one instance")
    inputs(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("batch", parents=[common], help="evaluate a directory of instances")
    p.add_argument("directory")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("sweep", parents=[common], help="soft-minus-hard deltas over several k")
    inputs(p)
    p.add_argument("--directory", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("detect", parents=[common], help="run a baseline neighbourhood detector")
    p.add_argument("--series", required=True)
    p.add_argument("--kind", choices=sorted(CLASSIFIERS), default="events")
    p.add_argument("--neighborhood", type=int, default=5)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--estimator", choices=("mean", "median"), default="mean")
    p.add_argument("--method", default=None)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("synth", parents=[common], help="generate a synthetic series and its ground truth")
    p.add_argument("--spec", required=True, help="JSON synthetic spec")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("scenarios", parents=[common], help="emit and evaluate the built-in scenario suite")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_scenarios)
    return parser


def _error(kind: str, msg: str) -> None:
    print(f"eventeval: error[{kind}]: {msg}", file=sys.stderr)


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        return args.func(args)
    except (ValidationError, ValueError, KeyError) as exc:
        _error("validation", str(exc))
        return EXIT_VALIDATION
    except OSError as exc:
        _error("io", str(exc))
        return EXIT_IO


def main() -> None:
    sys.exit(run_cli())
