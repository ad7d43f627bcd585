"""
The `reducebench` command-line tool.

    reducebench run --config uci.json --out results/
    reducebench reduce --config uci.json --reducer nca --out reduced/
    reducebench evaluate --train a.csv --test b.csv --classifiers knn,svm
    reducebench validate-config --config uci.json
    reducebench template

Exit status is 0 on success, 2 for usage mistakes, and 1 for anything
that goes wrong while running. Failures print one line to stderr:

    reducebench-error: <ErrorClassName>: <message>
"""

from ..imports import *
from ..datasets import load_csv, write_csv
from .config import (
    RunConfig,
    load_config,
    check_datasets,
    template_config_path,
    reducer_names,
    classifier_names,
)
from .pipeline import CellResult, reduce_split, score_classifier, run_pipeline
from .reports import emit_reports, print_summary
import argparse

__all__ = ["main", "cli_main", "build_parser"]


class CommandLine(Talker):
    pass


def _seed(text):
    value = int(text)
    if value < 0 or value >= 2**64:
        raise argparse.ArgumentTypeError("seeds must be unsigned 64-bit integers")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    """Create the argument parser, with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="reducebench",
        description="Benchmark autoencoder and NCA dimensionality reduction "
        "with KNN, ENN, and SVM classifiers.",
    )
    commands = parser.add_subparsers(dest="command")

    run = commands.add_parser("run", help="run the full benchmark")
    run.add_argument("--config", required=True, help="JSON run configuration")
    run.add_argument("--out", default=None, help="output directory")
    run.add_argument("--seed", type=_seed, default=None, help="base seed")
    run.add_argument("--repetitions", type=_positive, default=None)
    run.add_argument("--threads", type=_positive, default=None)
    run.add_argument("--quiet", action="store_true", help="hide progress")

    reduce = commands.add_parser(
        "reduce", help="write reduced train/test CSVs for one reducer"
    )
    reduce.add_argument("--config", required=True)
    reduce.add_argument("--reducer", required=True, choices=reducer_names)
    reduce.add_argument("--out", default=None)
    reduce.add_argument("--seed", type=_seed, default=None)

    evaluate = commands.add_parser(
        "evaluate", help="score classifiers on given train/test CSVs"
    )
    evaluate.add_argument("--train", required=True)
    evaluate.add_argument("--test", required=True)
    evaluate.add_argument("--classifiers", default=",".join(classifier_names))
    evaluate.add_argument("--k", type=_positive, default=None)
    evaluate.add_argument("--C", type=float, default=None)
    evaluate.add_argument("--no-header", action="store_true")
    evaluate.add_argument("--out", default=None)

    check = commands.add_parser(
        "validate-config", help="check a config and every dataset it names"
    )
    check.add_argument("--config", required=True)

    commands.add_parser("template", help="print the path of the UCI config template")
    return parser


def _run(args, talker):
    config = load_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["base_seed"] = args.seed
    if args.repetitions is not None:
        overrides["repetitions"] = args.repetitions
    if args.out is not None:
        overrides["output_directory"] = args.out
    config = replace(config, **overrides).validate()
    if args.quiet:
        talker.mute()

    results = run_pipeline(config, threads=args.threads, mute=args.quiet)
    paths = emit_reports(results, config.output_directory, config)
    print_summary(results, speaker=talker)
    talker._speak(f"wrote {', '.join(paths.values())}")
    return 0


def _reduce(args, talker):
    config = load_config(args.config)
    seed = config.base_seed if args.seed is None else args.seed
    out = args.out or config.output_directory
    mkdir(out)
    for dataset in check_datasets(config):
        reduced = reduce_split(dataset, args.reducer, seed, config)
        for which in ["train", "test"]:
            path = os.path.join(out, f"{dataset.name}-{args.reducer}-{which}.csv")
            write_csv(getattr(reduced, which), path)
            talker._speak(f"wrote {path}")
    return 0


def _evaluate(args, talker):
    chosen = [c.strip() for c in args.classifiers.split(",") if c.strip()]
    for c in chosen:
        if c not in classifier_names:
            raise ConfigError(f"unknown classifier {c!r} (allowed: {classifier_names})")
    overrides = {}
    if args.k is not None:
        overrides.update(knn_k=args.k, enn_k=args.k)
    config = RunConfig(**overrides)
    if args.C is not None:
        config = replace(config, svm=replace(config.svm, C=args.C))
    config.validate(require_datasets=False)

    header = not args.no_header
    train = load_csv(args.train, header=header)
    test = load_csv(args.test, header=header, min_classes=1)
    # express the test labels in the training set's class indices
    test_labels = train.encode_labels(test.decode_labels(test.labels))
    check_width(test.features, train.d, "test features")

    results = []
    for classifier in chosen:
        model_metrics, timings = score_classifier(
            classifier, train, test.features, test_labels, config
        )
        results.append(
            CellResult(
                dataset=train.name,
                reducer="given",
                classifier=classifier,
                repetition=0,
                seed=0,
                metrics=model_metrics,
                timings=timings,
                d_original=train.d,
                d_reduced=train.d,
                n_train=train.n,
                n_test=len(test_labels),
            )
        )
    print_summary(results, speaker=talker)
    if args.out is not None:
        emit_reports(results, args.out)
    return 0


def _validate_config(args, talker):
    config = load_config(args.config)
    for dataset in check_datasets(config):
        talker._speak(
            f"{dataset.name}: n={dataset.n} d={dataset.d} classes={dataset.n_classes}"
        )
    talker._speak(f"{args.config} is valid")
    return 0


def _template(args, talker):
    print(template_config_path())
    return 0


_commands = {
    "run": _run,
    "reduce": _reduce,
    "evaluate": _evaluate,
    "validate-config": _validate_config,
    "template": _template,
}


def main(argv=None):
    """
    Run the command line tool, returning its exit status.

    Parameters
    ----------
    argv : list of str
        The arguments (defaults to sys.argv[1:]).
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    talker = CommandLine()
    try:
        return _commands[args.command](args, talker)
    except (ReduceBenchError, OSError) as e:
        print(f"reducebench-error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


cli_main = main

if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
