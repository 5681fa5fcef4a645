"""Command-line entry point: ``rmcs {toy,run,export-context}``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error (which
includes a toy self-test mismatch).
"""
from __future__ import annotations

import argparse
import difflib
import sys
import time
from pathlib import Path

import numpy as np

from . import toy
from .classifiers import ClassifierSpec, fit, load_roster_config, parse_roster
from .cxt import format_cxt
from .data import DataError, Dataset, DistanceSpec, load_csv, minmax_normalize, split
from .ensembles import adaboost_fit, bagging_fit
from .fca import FormalConcept, FormalContext, to_dot, top_cbo
from .recommender import LEAVE_ONE_OUT, RmcsConfig, build_classification_context, run_rmcs, select_classifiers
from .report import RunReport

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_ROSTER = "knn,logistic_regression,naive_bayes"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt_set(names) -> str:
    return "{" + ",".join(names) + "}"


def _fmt_concept(ctx: FormalContext, c: FormalConcept) -> str:
    ext = _fmt_set(ctx.object_names[g] for g in sorted(c.extent))
    itt = _fmt_set(ctx.attribute_names[a] for a in sorted(c.intent))
    return f"({ext}, {itt})"


def render_toy(ctx: FormalContext, neighbors: dict[int, tuple[int, ...]]) -> str:
    """Top concepts and recommendations for the toy problem, as printed by ``rmcs toy``."""
    top, lowers = top_cbo(ctx)
    lines = [f"classification context: {ctx.n_objects} objects x {ctx.n_attributes} classifiers",
             f"top concept: {_fmt_concept(ctx, top)}", "lower neighbors:"]
    lines += [f"  {_fmt_concept(ctx, c)}" for c in lowers]
    lines.append("recommendations:")
    lines.append(f"  {'object':<8}{'neighbors':<11}{'best concept':<27}recommended")
    for obj, nb in neighbors.items():
        ids = frozenset(g - 1 for g in nb)
        chosen = select_classifiers(ctx, ids, (top, lowers))
        best = max(lowers, key=lambda c: len(c.extent & ids), default=top)
        rec = "+".join(ctx.attribute_names[a] for a in sorted(chosen))
        lines.append(f"  {obj!s:<8}{_fmt_set(map(str, nb)):<11}{_fmt_concept(ctx, best):<27}{rec}")
    return "\n".join(lines) + "\n"


def cmd_toy(context: FormalContext | None = None, out=None) -> int:
    out = out or sys.stdout
    ctx = context if context is not None else toy.classification_context()
    text = render_toy(ctx, toy.NEIGHBORS)
    out.write(text)
    if text != toy.GOLDEN:
        diff = difflib.unified_diff(toy.GOLDEN.splitlines(True), text.splitlines(True), "expected", "actual")
        out.write("toy output does not match the golden fixture:\n" + "".join(diff))
        return EXIT_INTERNAL
    return EXIT_OK


def _roster(args) -> list[ClassifierSpec]:
    if args.config:
        return load_roster_config(args.config)
    try:
        return parse_roster(args.classifiers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _distance(args) -> DistanceSpec:
    try:
        return DistanceSpec.parse(args.distance)
    except ValueError as exc:
        raise UsageError(f"--distance: {exc}") from None


def _n_folds(text: str):
    if text == LEAVE_ONE_OUT:
        return text
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"--n-folds must be an integer or '{LEAVE_ONE_OUT}'") from None


def _load(path, args) -> Dataset:
    label = args.label_col
    return load_csv(path, int(label) if label.lstrip("-").isdigit() else label, not args.no_header)


def _train_test(args) -> tuple[Dataset, Dataset]:
    if args.data and (args.train or args.test):
        raise UsageError("use either --data or --train/--test")
    if args.data:
        train, test = split(_load(args.data, args), args.split, args.seed)
    elif args.train and args.test:
        train, test = _load(args.train, args), _load(args.test, args)
        if train.feature_names != test.feature_names:
            raise DataError("train and test files have different feature columns")
        if train.label_names != test.label_names:
            # re-encode test labels into the training label universe
            lookup = {name: i for i, name in enumerate(train.label_names)}
            missing = set(test.label_names) - set(lookup)
            if missing:
                raise DataError(f"test labels {sorted(missing)} never occur in the training file")
            y = np.array([lookup[test.label_names[c]] for c in test.labels])
            test = Dataset(test.features, y, test.feature_names, train.label_names, test.feature_kind)
    else:
        raise UsageError("give --data (with --split) or both --train and --test")
    if args.normalize:
        train, test = minmax_normalize(train, test)
    return train, test


def cmd_run(args) -> RunReport:
    roster = _roster(args)
    dist = _distance(args)
    n_folds = _n_folds(args.n_folds)
    for flag, value in (("--k", args.k), ("--bagging-estimators", args.bagging_estimators),
                        ("--adaboost-rounds", args.adaboost_rounds)):
        if value < 1:
            raise UsageError(f"{flag} must be >= 1")
    train, test = _train_test(args)
    rep = RunReport()
    rep.config = {
        "data": args.data or "", "train": args.train or "", "test": args.test or "",
        "split": repr(args.split) if args.data else "", "label_col": args.label_col,
        "k": str(args.k), "n_folds": str(args.n_folds), "distance": str(dist),
        "roster": ";".join(s.describe() for s in roster),
        "bagging_base": args.bagging_base, "bagging_estimators": str(args.bagging_estimators),
        "adaboost_rounds": str(args.adaboost_rounds), "seed": str(args.seed),
        "normalize": str(args.normalize).lower(),
        "n_train": str(train.n_objects), "n_features": str(train.n_features),
    }
    rep.truth = [int(v) for v in test.labels]

    def timed(method, fn):
        t0 = time.perf_counter()
        try:
            preds = fn()
        except Exception as exc:  # one failing method must not abort the others
            rep.record_failure(method, exc, time.perf_counter() - t0)
            return None
        rep.record(method, preds, time.perf_counter() - t0)
        return preds

    for spec in roster:
        timed(spec.name, lambda spec=spec: fit(spec, train).predict_many(test.features))

    config = RmcsConfig(roster, args.k, n_folds, dist, args.seed)
    result = {}

    def rmcs():
        result["r"] = run_rmcs(config, train, test)
        return result["r"].predictions

    timed("rmcs", rmcs)
    if "r" in result:
        rep.rmcs_selected = [[roster[j].name for j in sorted(sel)] for sel in result["r"].selected]
    timed("bagging", lambda: bagging_fit(ClassifierSpec(args.bagging_base), train,
                                         args.bagging_estimators, args.seed).predict_many(test.features))
    timed("adaboost", lambda: adaboost_fit(train, args.adaboost_rounds).predict_many(test.features))
    return rep


def cmd_export_context(args) -> int:
    if args.toy:
        ctx = toy.classification_context()
    else:
        if not args.data:
            raise UsageError("export-context needs --data or --toy")
        train = _load(args.data, args)
        if args.split is not None:
            train, _ = split(train, args.split, args.seed)
        ctx = build_classification_context(_roster(args), train, _n_folds(args.n_folds), args.seed)
    Path(args.out).write_text(format_cxt(ctx))
    if args.dot:
        top, lowers = top_cbo(ctx)
        Path(args.dot).write_text(to_dot(ctx, top, lowers))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--label-col", default="-1", help="label column name or index (default: last)")
    common.add_argument("--no-header", action="store_true", help="CSV files have no header row")
    common.add_argument("--n-folds", default="4", help=f"cross-validation folds, or '{LEAVE_ONE_OUT}'")
    common.add_argument("--classifiers", default=DEFAULT_ROSTER, help="comma list of classifier kinds")
    common.add_argument("--config", help="INI roster file (overrides --classifiers)")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="rmcs", description="Recommender-based multiple classifier system.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("toy", help="reproduce the ten-object toy example and self-check it")

    run = sub.add_parser("run", parents=[common], help="benchmark base classifiers, RMCS, bagging and AdaBoost")
    run.add_argument("--data", help="single CSV file, split by --split")
    run.add_argument("--train")
    run.add_argument("--test")
    run.add_argument("--split", type=float, default=0.7, help="training fraction for --data (default 0.7)")
    run.add_argument("--k", type=int, default=3, help="neighbours per test object")
    run.add_argument("--distance", default="euclidean", help="hamming, euclidean or minkowski:P")
    run.add_argument("--normalize", action="store_true", help="min-max scale numeric features")
    run.add_argument("--bagging-estimators", type=int, default=50)
    run.add_argument("--bagging-base", default="logistic_regression")
    run.add_argument("--adaboost-rounds", type=int, default=50)
    run.add_argument("--out", default="report.txt", help="machine-readable report path")

    exp = sub.add_parser("export-context", parents=[common], help="write the classification context as CXT")
    exp.add_argument("--data", help="training CSV file")
    exp.add_argument("--split", type=float, default=None, help="use only the training part of a split")
    exp.add_argument("--toy", action="store_true", help="export the toy classification context")
    exp.add_argument("--out", required=True, help="CXT output path")
    exp.add_argument("--dot", help="also write top concept and lower neighbours as Graphviz DOT")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "toy":
            return cmd_toy()
        if args.command == "run":
            rep = cmd_run(args)
            sys.stdout.write(rep.table())
            rep.write(args.out)
            return EXIT_OK
        return cmd_export_context(args)
    except UsageError as exc:
        print(f"rmcs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ValueError) as exc:
        print(f"rmcs: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"rmcs: I/O error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:
        print(f"rmcs: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
