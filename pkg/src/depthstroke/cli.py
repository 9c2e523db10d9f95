"""Command-line entry point.

Subcommands: gen, train, eval, classify, process, config, serve. Every
command is deterministic given its flags and seeds. Exit codes: 0 success,
1 usage, 2 I/O, 3 validation. DEPTHSTROKE_LOG (error|warn|info|debug)
controls logging verbosity on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .data import load_dataset, save_dataset
from .errors import ValidationError
from .features import FeatureConfig
from .mlp import (
    EvalReport,
    MLPModel,
    NetworkTopology,
    TrainingConfig,
    classify,
    evaluate,
    load_model,
    save_model,
    topology_sweep,
    train,
)
from .pipelines import default_pipeline, dump_pipeline, load_pipeline
from .projection import ProjectionParams, save_curve
from .service import ServiceConfig, serve
from .smoothing import SmoothMethod, SmoothingSpec
from .stroke import CurveClass, load_stroke
from .synth import generate_dataset

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3

LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code pinned to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _setup_logging() -> None:
    level_name = os.environ.get("DEPTHSTROKE_LOG", "warn").lower()
    logging.basicConfig(
        level=LOG_LEVELS.get(level_name, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="depthstroke", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a synthetic labeled dataset")
    p_gen.add_argument("--spiral", type=int, required=True, help="spiral profile count")
    p_gen.add_argument("--forward", type=int, required=True, help="forward profile count")
    p_gen.add_argument("--backward", type=int, required=True, help="backward profile count")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True, help="output dataset file (one record per line)")

    p_train = sub.add_parser("train", help="train a classifier on a dataset file")
    p_train.add_argument("--data", required=True)
    p_train.add_argument("--out", help="model file to write")
    p_train.add_argument("--topology", default="50:35:3", help="layer sizes, e.g. 50:35:3")
    p_train.add_argument("--max-iters", type=int, default=30000)
    p_train.add_argument("--target-mse", type=float, default=0.0001)
    p_train.add_argument("--lr", type=float, default=0.5)
    p_train.add_argument("--lr-up", type=float, default=1.05)
    p_train.add_argument("--lr-down", type=float, default=0.5)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--restarts", type=int, default=1,
                         help="independent runs from consecutive seeds; best final MSE wins")
    p_train.add_argument("--fft-len", type=int, default=512)
    p_train.add_argument("--features", type=int, default=50)
    p_train.add_argument("--sweep", metavar="A..B",
                         help="sweep single-hidden-layer sizes A..B instead of training once")
    p_train.add_argument("--report-dir", help="write mse_trace.csv and figures here")

    p_eval = sub.add_parser("eval", help="evaluate a model on a labeled dataset")
    p_eval.add_argument("--model", required=True)
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--report-dir", help="write confusion.csv and figures here")

    p_classify = sub.add_parser("classify", help="classify one stroke file")
    p_classify.add_argument("--model", required=True)
    p_classify.add_argument("--stroke", required=True)
    p_classify.add_argument("--fft-len", type=int)
    p_classify.add_argument("--features", type=int)

    p_process = sub.add_parser("process", help="classify, filter, project, and smooth a stroke")
    p_process.add_argument("--model", required=True)
    p_process.add_argument("--stroke", required=True)
    p_process.add_argument("--out", required=True, help="projected 3D curve file")
    p_process.add_argument("--smoothed-out",
                           help="smoothed curve file (default: OUT with .smoothed.json)")
    p_process.add_argument("--smooth", help="smoothing method "
                           + "(" + ", ".join(m.value for m in SmoothMethod) + "); "
                           "default picks the per-class method")
    p_process.add_argument("--trace", help="write the per-stage profile trace to this file")
    p_process.add_argument("--depth-scale", type=float, default=100.0)
    p_process.add_argument("--invert", action="store_true",
                           help="map high pressure away from the camera instead of toward it")
    p_process.add_argument("--pipeline-config", help="pipeline parameter file (default built-in)")
    p_process.add_argument("--fft-len", type=int)
    p_process.add_argument("--features", type=int)
    p_process.add_argument("--report-dir", help="write profile/curve figures and CSV here")

    p_config = sub.add_parser("config", help="inspect the active pipeline configuration")
    p_config.add_argument("--dump", action="store_true", help="print the configuration JSON")
    p_config.add_argument("--pipeline-config", help="load this file instead of the defaults")
    p_config.add_argument("--out", help="also write the JSON here")

    p_serve = sub.add_parser("serve", help="run the HTTP JSON service")
    p_serve.add_argument("--model", required=True)
    p_serve.add_argument("--port", type=int, default=8008)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--pipeline-config")
    p_serve.add_argument("--static-dir", help="serve this directory at / (the sketch UI bundle)")

    return parser


def _check_feature_flags(model: MLPModel, args) -> None:
    """classify/process accept the training-time feature flags only as a
    cross-check; a mismatch with the model is an error."""
    if getattr(args, "fft_len", None) is not None and args.fft_len != model.feature_cfg.fft_len:
        raise ValidationError(
            f"--fft-len {args.fft_len} does not match the model's fft_len "
            f"{model.feature_cfg.fft_len}"
        )
    if getattr(args, "features", None) is not None and args.features != model.feature_cfg.n_features:
        raise ValidationError(
            f"--features {args.features} does not match the model's n_features "
            f"{model.feature_cfg.n_features}"
        )


def _parse_sweep(text: str) -> range:
    parts = text.split("..")
    if len(parts) != 2:
        raise ValidationError(f"sweep range must look like A..B, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValidationError(f"sweep range must be numeric, got {text!r}") from None
    if not 1 <= lo <= hi <= 100:
        raise ValidationError("sweep range must lie within [1, 100]")
    return range(lo, hi + 1)


def cmd_gen(args) -> int:
    for name in ("spiral", "forward", "backward"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name} must be a positive count")
    dataset = generate_dataset(args.spiral, args.forward, args.backward, seed=args.seed)
    save_dataset(dataset, args.out)
    counts = dataset.class_counts()
    for cls in CurveClass:
        print(f"{cls.label}: {counts[cls]}")
    print(f"total: {len(dataset)} -> {args.out}")
    return EXIT_OK


def cmd_train(args) -> int:
    dataset = load_dataset(args.data)
    feature_cfg = FeatureConfig(fft_len=args.fft_len, n_features=args.features)
    cfg = TrainingConfig(
        max_iterations=args.max_iters,
        target_mse=args.target_mse,
        lr_initial=args.lr,
        lr_up=args.lr_up,
        lr_down=args.lr_down,
        seed=args.seed,
    )
    if args.sweep:
        sweep = topology_sweep(dataset, cfg, _parse_sweep(args.sweep), feature_cfg)
        print("hidden  final_mse")
        for topology, mse in sweep.rows:
            print(f"{topology.layer_sizes[1]:>6}  {mse:.8f}")
        print(f"rule-of-thumb hidden size for "
              f"{feature_cfg.n_features}/3: {sweep.rule_of_thumb}")
        return EXIT_OK

    topology = NetworkTopology.parse(args.topology)
    model, report = train(dataset, topology, cfg, feature_cfg, restarts=args.restarts)
    if args.max_iters == 0:
        print("warning: --max-iters 0, writing the initialized model untrained",
              file=sys.stderr)
    if args.out:
        save_model(model, args.out)
    print(f"topology: {topology}")
    print(f"epochs: {report.epochs_run} ({report.stop_reason})")
    print(f"final mse: {report.final_mse:.8f}")
    if args.out:
        print(f"model -> {args.out}")
    if args.report_dir:
        from .report import write_training_report

        for path in write_training_report(report, args.report_dir):
            print(f"report -> {path}")
    return EXIT_OK


def _print_eval(report: EvalReport) -> None:
    header = f"{'class':<10}{'tested':>8}"
    for cls in CurveClass:
        header += f"{'->' + cls.label:>12}"
    header += f"{'correct':>9}{'errors':>8}{'accuracy':>10}"
    print(header)
    for cls in CurveClass:
        row = report.confusion[cls.value]
        total = int(row.sum())
        correct = int(row[cls.value])
        line = f"{cls.label:<10}{total:>8}"
        for j in range(3):
            line += f"{int(row[j]):>12}"
        line += f"{correct:>9}{total - correct:>8}{report.per_class_accuracy[cls]:>9.1%}"
        print(line)
    print(f"overall: {report.correct}/{report.total} = {report.overall_accuracy:.1%}")
    fwd = report.confusion[CurveClass.FORWARD.value]
    print(
        "trend check: forward errors -> spiral: "
        f"{int(fwd[CurveClass.SPIRAL.value])}, -> backward: "
        f"{int(fwd[CurveClass.BACKWARD.value])} "
        "(expected trend: forward errors fall into spiral, never backward)"
    )


def cmd_eval(args) -> int:
    model = load_model(args.model)
    dataset = load_dataset(args.data)
    report = evaluate(model, dataset)
    print(f"topology: {model.topology}")
    print(f"items: {report.total}")
    _print_eval(report)
    if args.report_dir:
        from .report import write_eval_report

        for path in write_eval_report(report, args.report_dir):
            print(f"report -> {path}")
    return EXIT_OK


def cmd_classify(args) -> int:
    model = load_model(args.model)
    _check_feature_flags(model, args)
    stroke = load_stroke(args.stroke)
    curve_class, scores = classify(model, [s.p for s in stroke.samples])
    print(f"class: {curve_class.label}")
    print("scores: " + " ".join(f"{cls.label}={score:.6f}"
                                for cls, score in zip(CurveClass, scores)))
    return EXIT_OK


def cmd_process(args) -> int:
    from .engine import process_stroke

    model = load_model(args.model)
    _check_feature_flags(model, args)
    stroke = load_stroke(args.stroke)
    pipeline = load_pipeline(args.pipeline_config) if args.pipeline_config else None
    smooth_spec = None
    if args.smooth:
        smooth_spec = SmoothingSpec(method=SmoothMethod.parse(args.smooth))
    result = process_stroke(
        stroke,
        model,
        pipeline=pipeline,
        projection=ProjectionParams(depth_scale=args.depth_scale, invert=args.invert),
        smooth_spec=smooth_spec,
    )
    save_curve(result.curve3d, args.out)
    smoothed_out = args.smoothed_out or str(Path(args.out).with_suffix(".smoothed.json"))
    save_curve(result.smoothed, smoothed_out)
    print(f"class: {result.curve_class.label}")
    print("scores: " + " ".join(f"{cls.label}={score:.6f}"
                                for cls, score in zip(CurveClass, result.scores)))
    print(f"curve3d: {result.curve3d.shape[0]} points -> {args.out}")
    print(f"smoothed: {result.smoothed.shape[0]} points -> {smoothed_out}")
    if args.trace:
        payload = {
            "class": result.curve_class.label,
            "stages": [
                {"stage": name, "profile": values.tolist()}
                for name, values in result.processed.stage_trace
            ],
        }
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
        print(f"trace -> {args.trace}")
    if args.report_dir:
        from .report import write_process_report

        for path in write_process_report(result, args.report_dir):
            print(f"report -> {path}")
    return EXIT_OK


def cmd_config(args) -> int:
    cfg = load_pipeline(args.pipeline_config) if args.pipeline_config else default_pipeline()
    text = dump_pipeline(cfg)
    if args.dump or not args.out:
        print(text, end="")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"config -> {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    config = ServiceConfig(
        model_path=args.model,
        port=args.port,
        host=args.host,
        pipeline_config_path=args.pipeline_config,
        static_dir=args.static_dir,
    )
    serve(config)
    return EXIT_OK


class UsageError(Exception):
    pass


COMMANDS = {
    "gen": cmd_gen,
    "train": cmd_train,
    "eval": cmd_eval,
    "classify": cmd_classify,
    "process": cmd_process,
    "config": cmd_config,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"depthstroke {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"depthstroke {args.command}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"depthstroke {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except KeyboardInterrupt:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
