"""Command-line front end.

Subcommands: ``synth``, ``train``, ``tune``, ``predict``, ``evaluate``,
``ablate``.  Report commands write delimited output and, unless
``--no-figure`` is given, render a matching PNG next to it.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical error.
Failures print a single machine-parsable line ``E_<CODE>: message`` to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .ablation import run_ablation
from .config import TaskConfig, task_presets
from .dataset import TaskDataset, load_dataset
from .encoding import EncoderSpec
from .ensemble import fit_ensemble
from .errors import ArchRankError, DataError, NumericalError
from .labels import score_like
from .metrics import kendall_tau
from .persistence import canonical_json, load_model, save_model
from .plotting import save_ladder_figure, save_tau_figure, save_trace_figure
from .synth import make_synth_task, write_synth_files
from .tuner import TuneSpec, tune_weights


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"E_USAGE: {message}", file=sys.stderr)
        raise SystemExit(2)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load_cli_dataset(args) -> TaskDataset:
    return load_dataset(
        args.dataset,
        cardinalities=args.cardinalities,
        label_kind=args.label_kind,
    )


def _resolve_config(name_or_path: str) -> TaskConfig:
    presets = task_presets()
    if name_or_path in presets:
        return presets[name_or_path]
    path = Path(name_or_path)
    if not path.exists():
        raise DataError(
            f"config {name_or_path!r} is neither a preset "
            f"({', '.join(sorted(presets))}) nor an existing file"
        )
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
        return TaskConfig.from_dict(obj)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise DataError(f"{path}: bad config ({exc})") from None


def _figure_path(out_path) -> Path:
    return Path(out_path).with_suffix(".png")


def cmd_synth(args) -> int:
    ds, truth = make_synth_task(
        n=args.n,
        dim=args.dim,
        cardinality=args.cardinality,
        noise=args.noise,
        seed=args.seed,
        informative=args.informative,
        interaction=args.interaction,
        task_id=args.task_id,
    )
    data_path, truth_path = write_synth_files(ds, truth, args.out)
    print(f"wrote {ds.n} records to {data_path} (truth scores: {truth_path})")
    return 0


def cmd_train(args) -> int:
    ds = _load_cli_dataset(args)
    config = _resolve_config(args.config)
    model = fit_ensemble(ds, config)
    save_model(model, args.out)
    names = ", ".join(name for name, _, _ in model.members)
    print(f"trained on {ds.n} records (base learners: {names}) -> {args.out}")
    return 0


def cmd_tune(args) -> int:
    ds = _load_cli_dataset(args)
    config = _resolve_config(args.config)
    if config.beta is None:
        raise DataError(
            "config has no beta pair: the weighted kernel is disabled, nothing to tune"
        )
    dims = EncoderSpec.for_dataset(ds, config.encoder_k).encoded_dim if args.per_bit else ds.dim
    spec = TuneSpec(
        dims=dims,
        bounds=(args.low, args.high),
        budget=args.budget,
        init_points=args.init_points,
        seed=args.seed,
        objective=args.objective,
    )
    weights, trace = tune_weights(ds, config, spec)
    tuned = replace(config, tuned_weights=tuple(float(w) for w in weights))
    Path(args.out).write_text(canonical_json(tuned.to_dict()), encoding="utf-8")
    if args.trace:
        Path(args.trace).write_text(canonical_json(trace.to_dict()), encoding="utf-8")
    if not args.no_figure:
        save_trace_figure(trace.values, _figure_path(args.out))
    print(
        f"best objective {trace.best_value:.6f} after {len(trace.values)} "
        f"evaluations -> {args.out}"
    )
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    ds = _load_cli_dataset(args)
    scores, ranks = model.predict(ds)
    with Path(args.out).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "score", "rank"])
        for i, (s, r) in enumerate(zip(scores, ranks)):
            writer.writerow([i, repr(float(s)), int(r)])
    print(f"wrote {len(scores)} predictions to {args.out}")
    return 0


def _read_score_file(path) -> np.ndarray:
    """Scores (higher = better) from a predictions CSV, truth sidecar, or dataset."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"file not found: {path}")
    if path.suffix.lower() == ".json":
        ds = load_dataset(path)
        return score_like(ds.required_labels(), ds.label_kind)
    with path.open("r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows) < 2:
        raise DataError(f"{path}: no data rows")
    header = rows[0]
    if header[0] == "index" and "score" in header:
        col = header.index("score")
        try:
            order = np.argsort([int(r[0]) for r in rows[1:]], kind="stable")
            scores = np.array([float(r[col]) for r in rows[1:]])
        except (ValueError, IndexError) as exc:
            raise DataError(f"{path}: bad row ({exc})") from None
        return scores[order]
    if header and header[0] == "f0":
        ds = load_dataset(path)
        return score_like(ds.required_labels(), ds.label_kind)
    raise DataError(f"{path}: unrecognized file layout (header {header})")


def cmd_evaluate(args) -> int:
    if len(args.predictions) != len(args.truth):
        raise DataError(
            f"{len(args.predictions)} prediction files vs {len(args.truth)} truth files"
        )
    names, taus = [], []
    for i, (pred_path, truth_path) in enumerate(zip(args.predictions, args.truth)):
        pred = _read_score_file(pred_path)
        truth = _read_score_file(truth_path)
        if pred.size != truth.size:
            raise DataError(
                f"pair {i}: {pred.size} predictions vs {truth.size} truth rows"
            )
        tau = kendall_tau(pred, truth).tau
        names.append(f"task{i}")
        taus.append(tau)
        print(f"task{i}: tau={tau:.6f} ({pred_path} vs {truth_path})")
    mean_tau = float(np.mean(taus))
    print(f"mean tau: {mean_tau:.6f}")
    if args.out:
        with Path(args.out).open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["task", "tau", "predictions", "truth"])
            for name, tau, p, t in zip(names, taus, args.predictions, args.truth):
                writer.writerow([name, repr(tau), p, t])
            writer.writerow(["mean", repr(mean_tau), "", ""])
        if not args.no_figure:
            save_tau_figure(names, taus, _figure_path(args.out))
    return 0


def cmd_ablate(args) -> int:
    ds = _load_cli_dataset(args)
    config = _resolve_config(args.config)
    seeds = [args.seed + i for i in range(args.seeds)]
    rows = run_ablation(
        ds,
        config,
        seeds,
        split_fraction=args.split_fraction,
        tune_budget=args.tune_budget,
        tune_init=args.tune_init,
    )
    width = max(len(r.variant) for r in rows)
    for row in rows:
        print(f"{row.variant:<{width}}  mean tau {row.mean:+.4f}  (std {row.std:.4f})")
    if args.out:
        with Path(args.out).open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["variant", "mean_tau", "std_tau"] + [f"tau_seed{s}" for s in seeds]
            )
            for row in rows:
                writer.writerow(
                    [row.variant, repr(row.mean), repr(row.std)]
                    + [repr(t) for t in row.taus]
                )
        if not args.no_figure:
            save_ladder_figure(rows, _figure_path(args.out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="archrank", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"archrank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_dataset_args(p):
        p.add_argument("--dataset", required=True, help="dataset file (.csv or .json)")
        p.add_argument(
            "--cardinalities",
            type=_int_list,
            default=None,
            help="declared per-column category counts, e.g. 4,4,4",
        )
        p.add_argument(
            "--label-kind",
            choices=("rank", "score"),
            default=None,
            help="label interpretation (default: file's own, or rank for CSV)",
        )

    p = sub.add_parser("synth", help="generate a synthetic task with ground truth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, default=6)
    p.add_argument("--cardinality", type=int, default=4)
    p.add_argument("--noise", type=float, default=0.0, help="noise std as a fraction of signal std")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interaction", type=float, default=0.0)
    p.add_argument("--informative", type=_int_list, default=None, help="indices of informative columns")
    p.add_argument("--task-id", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("train", help="fit the ensemble and save the model")
    add_dataset_args(p)
    p.add_argument("--config", required=True, help="preset name (task0..task7) or JSON path")
    p.add_argument("--out", required=True, help="model file to write")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tune", help="tune kernel weights, write an updated config")
    add_dataset_args(p)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="updated config JSON to write")
    p.add_argument("--budget", type=int, default=60)
    p.add_argument("--init-points", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objective", choices=("validation_tau", "train_tau"), default="validation_tau")
    p.add_argument("--per-bit", action="store_true", help="one weight per encoded bit instead of per column")
    p.add_argument("--low", type=float, default=0.0)
    p.add_argument("--high", type=float, default=1.0)
    p.add_argument("--trace", default=None, help="optional JSON dump of the tuning trace")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("predict", help="score a dataset with a saved model")
    add_dataset_args(p)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True, help="CSV of index,score,rank")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="Kendall tau of predictions against truth")
    p.add_argument("--predictions", action="append", required=True, help="repeatable")
    p.add_argument("--truth", action="append", required=True, help="repeatable, paired in order")
    p.add_argument("--out", default=None, help="optional CSV report")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ablate", help="run the ablation ladder on a dataset")
    add_dataset_args(p)
    p.add_argument("--config", required=True)
    p.add_argument("--seeds", type=int, default=5, help="number of split seeds")
    p.add_argument("--seed", type=int, default=0, help="first split seed")
    p.add_argument("--split-fraction", type=float, default=0.8)
    p.add_argument("--tune-budget", type=int, default=60)
    p.add_argument("--tune-init", type=int, default=10)
    p.add_argument("--out", default=None, help="optional CSV of the ladder")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_ablate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"E_DATA: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"E_NUMERIC: {exc}", file=sys.stderr)
        return 4
    except ArchRankError as exc:
        print(f"E_DATA: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"E_USAGE: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
