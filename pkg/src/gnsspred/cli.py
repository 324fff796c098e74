"""Command-line entry point.

Subcommands: ingest, predict, evaluate, simulate-outliers, detect-event,
bench. Option precedence is CLI flag > config file > built-in default;
the config file is flat "key = value" text. Every run writes a manifest
next to its outputs so published numbers stay re-derivable.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .campaign import run_campaign, synthetic_series
from .errors import DataError, NoDeparture, NumericalError
from .events import predict_event
from .ingest import (
    NGL_SCHEMA,
    SeriesFileSchema,
    parse_delimited,
    parse_ngl,
    read_series,
    write_results,
    write_series,
    write_table,
)
from .metrics import evaluate
from .outliers import inject_outliers
from .plots import (
    save_event_figure,
    save_metrics_figure,
    save_outlier_figure,
    save_prediction_figure,
)
from .predictor import predict_horizon, predict_one, train
from .series import F0_DAILY, PipelineConfig, Window, slice_window

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def read_config(path) -> dict:
    """Flat key = value configuration file; '#' starts a comment."""
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = line.split("=", 1)
        cfg[key.strip()] = value.strip()
    return cfg


def _resolve(args, cfg, key, default, cast):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in cfg:
        raw = cfg[key]
        if cast is bool:
            return raw.lower() in ("1", "true", "yes")
        return cast(raw)
    return default


def build_pipeline_config(args, cfg) -> PipelineConfig:
    m_fixed = _resolve(args, cfg, "m_fixed", None, int)
    return PipelineConfig(
        n=_resolve(args, cfg, "n", 128, int),
        f0=_resolve(args, cfg, "f0", F0_DAILY, float),
        m_fixed=m_fixed,
        m_min=_resolve(args, cfg, "m_min", 1, int),
        m_max=_resolve(args, cfg, "m_max", 4, int),
        mse_threshold=_resolve(args, cfg, "mse_threshold", 1e-6, float),
        wavelet=_resolve(args, cfg, "wavelet", "haar", str),
        window_policy=_resolve(args, cfg, "window_policy", "sliding", str),
        refit_per_step=_resolve(args, cfg, "refit_per_step", True, bool),
    )


def read_schema(path) -> SeriesFileSchema:
    cfg = read_config(path)
    value_cols = {}
    sigma_cols = {}
    for key, raw in cfg.items():
        if key.startswith("value_col."):
            value_cols[key.split(".", 1)[1]] = int(raw)
        elif key.startswith("sigma_col."):
            sigma_cols[key.split(".", 1)[1]] = int(raw)
    delimiter = cfg.get("delimiter")
    if delimiter == "whitespace":
        delimiter = None
    return SeriesFileSchema(
        epoch_col=int(cfg.get("epoch_col", 0)),
        value_cols=value_cols,
        sigma_cols=sigma_cols or None,
        delimiter=delimiter,
        epoch_unit=cfg.get("epoch_unit", "seconds"),
        header_lines=int(cfg.get("header_lines", 0)),
        station_id=cfg.get("station_id", "UNKNOWN"),
        sampling_interval=float(cfg.get("sampling_interval", 1.0)),
    )


def load_series(path, fmt, schema_path=None):
    """Load one input file into a list of TimeSeries."""
    data = Path(path).read_bytes()
    if fmt == "ngl":
        return parse_ngl(data)
    if fmt == "delimited":
        if schema_path is None:
            raise DataError("--schema is required for --format delimited")
        return parse_delimited(data, read_schema(schema_path))
    return [read_series(data)]


def write_manifest(args, outdir: Path, inputs):
    lines = [
        f"subcommand = {args.command}",
        f"inputs = {';'.join(str(p) for p in inputs)}",
        f"config = {args.config or ''}",
        f"seed = {getattr(args, 'seed', None) if getattr(args, 'seed', None) is not None else ''}",
        f"out = {outdir}",
        f"version = {__version__}",
    ]
    (outdir / "manifest.txt").write_text("\n".join(lines) + "\n")


def _outdir(args) -> Path:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _pick_component(series_list, component):
    if component:
        matches = [s for s in series_list if s.component == component]
        if not matches:
            raise DataError(f"component {component!r} not present in input")
        return matches[0]
    return series_list[0]


def cmd_ingest(args, cfg) -> int:
    outdir = _outdir(args)
    series_list = load_series(args.input, args.format, args.schema)
    for series in series_list:
        name = f"{series.station_id}_{series.component}.series"
        (outdir / name).write_text(write_series(series))
    write_manifest(args, outdir, [args.input])
    print(f"wrote {len(series_list)} series to {outdir}")
    return EXIT_OK


def cmd_predict(args, cfg) -> int:
    outdir = _outdir(args)
    config = build_pipeline_config(args, cfg)
    series = _pick_component(load_series(args.input, args.format, args.schema), args.component)
    horizon = _resolve(args, cfg, "horizon", 10, int)

    predictions = predict_horizon(series, config, horizon)
    window = slice_window(series, len(series.samples) - 1, config.n)
    model = train(window, config)

    (outdir / "predictions.tsv").write_text(
        write_table(("t", "value"), [(p.t, p.value) for p in predictions])
    )
    model_summary = {
        "station": series.station_id,
        "component": series.component,
        "m_used": model.m_used,
        "training_mse": model.training_mse,
        "mean": model.mean,
        "trend_a": model.trend_a,
        "trend_b": model.trend_b,
        "f0": config.f0,
        "n": config.n,
    }
    (outdir / "model.txt").write_text(write_results(model_summary, format="structured-text"))
    if not args.no_figures:
        save_prediction_figure(series, predictions, outdir / "prediction.png")
    write_manifest(args, outdir, [args.input])
    print(f"predicted {horizon} steps for {series.station_id}/{series.component} -> {outdir}")
    return EXIT_OK


def _read_prediction_table(path):
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].split("\t")[:2] != ["t", "value"]:
        raise DataError(f"{path} is not a prediction table")
    out = []
    for line in lines[1:]:
        if line.strip():
            t, v = line.split("\t")[:2]
            out.append((float(t), float(v)))
    return out


def cmd_evaluate(args, cfg) -> int:
    outdir = _outdir(args)
    truth = _pick_component(load_series(args.input, args.format, args.schema), args.component)
    predictions = _read_prediction_table(args.predictions)

    q = len(predictions)
    total = len(truth.samples)
    if q == 0 or q >= total:
        raise DataError(f"{q} predictions cannot be scored against {total} truth samples")
    tail = truth.samples[total - q :]
    for sample, (t, _) in zip(tail, predictions):
        if abs(sample.t - t) > 1e-6:
            raise DataError(f"epoch mismatch: truth {sample.t} vs prediction {t}")

    actual = [s.value for s in tail]
    predicted = [v for _, v in predictions]
    denominator = _resolve(args, cfg, "mase_denominator", "full", str)
    report = evaluate(actual, predicted, [s.value for s in truth.samples], total - q, denominator=denominator)

    (outdir / "report.tsv").write_text(write_results(report, format="delimited"))
    if not args.no_figures:
        save_metrics_figure(report, outdir / "report.png")
    write_manifest(args, outdir, [args.input, args.predictions])
    print(
        f"sMAPE={report.smape:.6g}%  MASE={report.mase:.6g}  StD={report.std:.6g} m  MAE={report.mae:.6g} m"
    )
    return EXIT_OK


def cmd_simulate_outliers(args, cfg) -> int:
    outdir = _outdir(args)
    config = build_pipeline_config(args, cfg)
    threshold = _resolve(args, cfg, "threshold", 0.03, float)
    seed = _resolve(args, cfg, "seed", 0, int)
    count = _resolve(args, cfg, "injections_per_series", 5, int)
    min_mag = _resolve(args, cfg, "min_magnitude", 0.02, float)
    max_mag = _resolve(args, cfg, "max_magnitude", 5.0, float)
    margin = _resolve(args, cfg, "margin", config.n, int)
    workers = _resolve(args, cfg, "workers", 1, int)

    if args.input:
        paths = sorted(Path(args.input).glob("*.series"))
        corpus = [read_series(p.read_bytes()) for p in paths]
        inputs = [args.input]
    else:
        series_count = _resolve(args, cfg, "series_count", 0, int)
        length = _resolve(args, cfg, "series_length", 500, int)
        noise = _resolve(args, cfg, "noise_sigma", 0.005, float)
        corpus = [synthetic_series(length, seed=seed + 1000 + k, noise_sigma=noise) for k in range(series_count)]
        inputs = []
    if not corpus:
        raise DataError("empty corpus: no input series and series_count is 0")

    results, summary = run_campaign(
        corpus, config, threshold, count, min_mag, max_mag, seed=seed, margin=margin, workers=workers
    )

    (outdir / "summary.tsv").write_text(write_results(summary, format="delimited"))
    per_series = [
        (r.series_id, r.score.injected_count, r.score.detected_count, r.score.success_rate, r.score.false_positive_count)
        for r in results
    ]
    (outdir / "per_series.tsv").write_text(
        write_table(("series_id", "injected", "detected", "success_rate", "false_positives"), per_series)
    )
    flag_rows = [
        (r.series_id, f.index, f.epoch, f.observed, f.forward_pred, f.backward_pred, f.magnitude_estimate)
        for r in results
        for f in r.flags
    ]
    (outdir / "flags.tsv").write_text(
        write_table(
            ("series_id", "index", "epoch", "observed", "forward_pred", "backward_pred", "magnitude_estimate"),
            flag_rows,
        )
    )
    if not args.no_figures and results:
        corrupted, _ = inject_outliers(corpus[0], count, min_mag, max_mag, seed=seed, margin=margin)
        save_outlier_figure(corrupted, list(results[0].flags), outdir / "campaign.png")
    write_manifest(args, outdir, inputs)
    print(
        f"{summary.detected_count}/{summary.injected_count} injected outliers detected "
        f"({summary.success_rate:.2f}%), {summary.false_positive_count} false positives"
    )
    return EXIT_OK


def cmd_detect_event(args, cfg) -> int:
    outdir = _outdir(args)
    config = build_pipeline_config(args, cfg)
    step_threshold = _resolve(args, cfg, "step_threshold", 0.03, float)
    event_threshold = _resolve(args, cfg, "event_threshold", 10.0 * step_threshold, float)
    horizon = _resolve(args, cfg, "horizon", 600, int)
    offset = _resolve(args, cfg, "window_end_offset", 0, int)
    baseline_samples = _resolve(args, cfg, "baseline_samples", 300, int)
    reference = _resolve(args, cfg, "reference_time", None, float)

    wanted = (args.component,) if args.component else ("E", "U")
    rows = []
    first_plot = None
    for path in args.input:
        for series in load_series(path, args.format, args.schema):
            if args.format == "ngl" and series.component not in wanted:
                continue
            try:
                report = predict_event(
                    series,
                    config,
                    step_threshold,
                    event_threshold,
                    horizon,
                    window_end_offset=offset,
                    baseline_samples=baseline_samples,
                    reference_event_time=reference,
                )
            except NoDeparture:
                continue
            rows.append(
                (
                    series.station_id,
                    series.component,
                    report.departure_index,
                    report.predicted_event_time,
                    report.predicted_first_motion,
                    report.lead_time,
                    report.training_fraction,
                )
            )
            if first_plot is None:
                first_plot = (series, report)
    if not rows:
        raise DataError("no departure detected in any input series")

    avg = (
        "AVERAGE",
        "",
        sum(r[2] for r in rows) / len(rows),
        sum(r[3] for r in rows) / len(rows),
        sum(r[4] for r in rows) / len(rows),
        (sum(r[5] for r in rows) / len(rows)) if rows[0][5] is not None else None,
        sum(r[6] for r in rows) / len(rows),
    )
    (outdir / "events.tsv").write_text(
        write_table(
            (
                "station",
                "component",
                "departure_index",
                "predicted_event_time",
                "predicted_first_motion",
                "lead_time",
                "training_fraction",
            ),
            rows + [avg],
        )
    )
    if not args.no_figures and first_plot is not None:
        series, report = first_plot
        from dataclasses import replace as dc_replace

        end = report.departure_index + offset
        training = dc_replace(series, samples=series.samples[: end + 1])
        predictions = predict_horizon(training, config, horizon)
        save_event_figure(series, predictions, report, outdir / "event.png")
    write_manifest(args, outdir, args.input)
    print(f"{len(rows)} event report(s) -> {outdir}")
    return EXIT_OK


def cmd_bench(args, cfg) -> int:
    outdir = _outdir(args)
    repeats = _resolve(args, cfg, "repeats", 20, int)
    rows = []
    rng = np.random.default_rng(0)
    for item in (args.sizes.split(",") if args.sizes else []):
        n_str, m_str = item.split(":")
        n, m = int(n_str), int(m_str)
        config = PipelineConfig(n=n, f0=1.0, m_fixed=m, mse_threshold=1e-12)
        t = np.arange(n, dtype=float)
        window = Window(times=t, values=rng.normal(0, 0.02, size=n), weights=np.ones(n))
        timings = []
        for _ in range(repeats):
            start = time.perf_counter()
            model = train(window, config)
            predict_one(model, float(n))
            timings.append((time.perf_counter() - start) * 1e3)
        rows.append((n, m, repeats, statistics.median(timings), min(timings), max(timings)))
    (outdir / "bench.tsv").write_text(
        write_table(("n", "m", "repeats", "median_ms", "min_ms", "max_ms"), rows)
    )
    write_manifest(args, outdir, [])
    for row in rows:
        print(f"n={row[0]} m={row[1]}: median {row[3]:.3f} ms over {row[2]} runs")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="gnsspred", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs="single"):
        if inputs == "single":
            p.add_argument("--input", required=True)
        elif inputs == "many":
            p.add_argument("--input", nargs="+", required=True)
        elif inputs == "optional":
            p.add_argument("--input")
        p.add_argument("--format", choices=("canonical", "ngl", "delimited"), default="canonical")
        p.add_argument("--schema", help="schema sidecar for --format delimited")
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", help="output directory (default: current)")
        p.add_argument("--seed", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--m-min", dest="m_min", type=int)
        p.add_argument("--m-max", dest="m_max", type=int)
        p.add_argument("--m-fixed", dest="m_fixed", type=int)
        p.add_argument("--mse-threshold", dest="mse_threshold", type=float)
        p.add_argument("--f0", type=float)
        p.add_argument("--horizon", type=int)
        p.add_argument("--threshold", type=float)
        p.add_argument("--step-threshold", dest="step_threshold", type=float)
        p.add_argument("--event-threshold", dest="event_threshold", type=float)
        p.add_argument("--workers", type=int)
        p.add_argument("--window-policy", dest="window_policy", choices=("sliding", "growing"))
        p.add_argument("--wavelet")
        p.add_argument("--component")
        p.add_argument("--no-figures", action="store_true")

    p = sub.add_parser("ingest", help="parse input files into canonical series files")
    common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("predict", help="train and predict a horizon")
    common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions against truth")
    common(p)
    p.add_argument("--predictions", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("simulate-outliers", help="injection benchmark campaign")
    common(p, inputs="optional")
    p.set_defaults(func=cmd_simulate_outliers)

    p = sub.add_parser("detect-event", help="event onset detection")
    common(p, inputs="many")
    p.set_defaults(func=cmd_detect_event)

    p = sub.add_parser("bench", help="latency of train + one-step prediction")
    common(p, inputs="optional")
    p.add_argument("--sizes", default="1024:64", help="comma list of n:m pairs")
    p.add_argument("--repeats", type=int)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = read_config(args.config) if args.config else {}
        return args.func(args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
