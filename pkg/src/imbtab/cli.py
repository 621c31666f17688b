"""Command-line entry points.

  imbtab run --config cfg.json [--out DIR] [--format json,txt]
  imbtab generate-data --rows N [--positive-rate P] [--seed S] --out data.csv
  imbtab resample --config cfg.json --out resampled.csv

Exit codes: 0 success, 2 config error, 3 data error, 4 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .errors import (
    HeaderMismatch,
    ImbtabError,
    MalformedRow,
    ParseError,
    PipelineError,
    ValidationError,
)
from .pipeline import emit_report, parse_config, run_experiment
from .synth import generate_dataset, write_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_RUNTIME = 4

_DATA_ERRORS = (FileNotFoundError, HeaderMismatch, MalformedRow)


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except FileNotFoundError as exc:
        raise ParseError(f"config file not found: {path}") from exc


def _cmd_run(args):
    cfg = _load_config(args.config)
    if args.out:
        cfg = type(cfg)(**{**cfg.__dict__, "output_dir": args.out})
    if args.format:
        cfg = type(cfg)(**{**cfg.__dict__, "formats": tuple(args.format.split(","))})
    result = run_experiment(cfg)
    written = emit_report(result, cfg.formats, cfg.output_dir)
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_generate(args):
    d = generate_dataset(
        rows=args.rows,
        positive_rate=args.positive_rate,
        seed=args.seed,
        missing_rate=args.missing_rate,
    )
    write_csv(d, args.out)
    print(args.out)
    return EXIT_OK


def _cmd_resample(args):
    # standalone resampler: run the pipeline front half, dump the training
    # matrix after rebalancing plus a synthetic-row provenance audit
    import numpy as np

    from .data import cast_columns, drop_missing, load_csv, train_test_split
    from .pipeline import FittedColumnEncoder, build_features
    from .resampling import rebalance

    cfg = _load_config(args.config)
    raw = load_csv(cfg.dataset_path, cfg.schema)
    clean = drop_missing(cast_columns(raw, cfg.schema))
    train, _ = train_test_split(clean, cfg.split)
    fitted = {spec.column: FittedColumnEncoder(spec).fit(train) for spec in cfg.encoders}
    X = build_features(train, cfg.schema, fitted)
    y = np.asarray(train.column(cfg.target), dtype=int)
    result = rebalance(X, y, cfg.resampler)

    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(result.features.column_names) + ["label", "original"])
        for row, label, orig in zip(result.features.values, result.labels, result.original_mask):
            writer.writerow([f"{v:.10g}" for v in row] + [int(label), int(orig)])
    print(args.out)

    if result.provenance:
        audit = args.out + ".audit.csv"
        with open(audit, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["base_index", "neighbor_index", "u"])
            for p in result.provenance:
                writer.writerow([p.base_index, p.neighbor_index, f"{p.u:.17g}"])
        print(audit)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="imbtab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured experiment")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default=None, help="output directory (overrides config)")
    p_run.add_argument("--format", default=None, help="comma-separated: json,txt")
    p_run.set_defaults(func=_cmd_run)

    p_gen = sub.add_parser("generate-data", help="write a synthetic HR-style CSV")
    p_gen.add_argument("--rows", type=int, required=True)
    p_gen.add_argument("--positive-rate", type=float, default=0.156)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--missing-rate", type=float, default=0.0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_generate)

    p_res = sub.add_parser("resample", help="rebalance a training split to CSV")
    p_res.add_argument("--config", required=True)
    p_res.add_argument("--out", required=True)
    p_res.set_defaults(func=_cmd_resample)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _DATA_ERRORS as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except PipelineError as exc:
        if isinstance(exc.cause, _DATA_ERRORS):
            print(f"data error: {exc}", file=sys.stderr)
            return EXIT_DATA
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ImbtabError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
