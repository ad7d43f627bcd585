"""
Write benchmark results to disk: per-cell CSV rows, per-(dataset,
reducer) summaries, a full JSON report, and the data behind the
accuracy bar charts.
"""

from ..imports import *
from ..metrics import metric_definitions
from ..version import version

__all__ = ["emit_reports", "summarize", "accuracy_plotdata", "print_summary"]

_metric_names = ["accuracy", "f_measure", "g_mean"]


def _std(values):
    """Sample standard deviation (0 for a single repetition)."""
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1))


def _groups(results, keys):
    """Group results by some attributes, keeping first-seen order."""
    groups = {}
    for r in results:
        groups.setdefault(tuple(getattr(r, k) for k in keys), []).append(r)
    return groups


def _format_floats(table, fmt="{:.8f}"):
    for c in table.colnames:
        if table[c].dtype.kind == "f":
            table[c].format = fmt
    return table


def summarize(results):
    """
    Summarize F-measure and G-mean over repetitions.

    Returns
    -------
    summary : astropy.table.Table
        One row per (dataset, reducer), with columns
        dataset, reducer, repetitions, then f_measure_<classifier> and
        g_mean_<classifier> means grouped by classifier, then the
        matching `_std` columns in the same order.
    """
    classifiers = list(dict.fromkeys(r.classifier for r in results))
    rows = []
    for (dataset, reducer), group in _groups(results, ["dataset", "reducer"]).items():
        row = dict(
            dataset=dataset,
            reducer=reducer,
            repetitions=len(set(r.repetition for r in group)),
        )
        by_classifier = _groups(group, ["classifier"])
        for suffix, f in [("", np.mean), ("_std", _std)]:
            for c in classifiers:
                for metric in ["f_measure", "g_mean"]:
                    values = [getattr(r.metrics, metric) for r in by_classifier.get((c,), [])]
                    row[f"{metric}_{c}{suffix}"] = float(f(values)) if values else np.nan
        rows.append(row)
    return Table(rows=rows, names=list(rows[0].keys()))


def accuracy_plotdata(results):
    """
    The numbers behind per-reducer accuracy bar charts.

    Returns
    -------
    plotdata : astropy.table.Table
        One row per (reducer, dataset, classifier), with the mean and
        standard deviation of accuracy over repetitions and the
        accuracy from the lowest seed.
    """
    rows = []
    for reducer in dict.fromkeys(r.reducer for r in results):
        subset = [r for r in results if r.reducer == reducer]
        for (dataset, classifier), group in _groups(subset, ["dataset", "classifier"]).items():
            accuracies = [r.metrics.accuracy for r in group]
            first = min(group, key=lambda r: r.seed)
            rows.append(
                dict(
                    reducer=reducer,
                    dataset=dataset,
                    classifier=classifier,
                    accuracy_mean=float(np.mean(accuracies)),
                    accuracy_std=_std(accuracies),
                    accuracy_first_seed=first.metrics.accuracy,
                )
            )
    return Table(rows=rows, names=list(rows[0].keys()))


def emit_reports(results, out_dir, config=None):
    """
    Write results.csv, summary.csv, accuracy_plotdata.csv, and
    report.json into a directory.

    Parameters
    ----------
    results : list of CellResult
        The cells to report (in the order they should be written).
    out_dir : str
        The directory to write into (created if need be).
    config : RunConfig
        If given, echoed into report.json.

    Returns
    -------
    paths : dict
        The path of each file written.
    """
    if len(results) == 0:
        raise EmptyDataset("there are no results to report")

    tables = dict(
        results=Table(
            rows=[r.to_row() for r in results], names=list(results[0].to_row().keys())
        ),
        summary=summarize(results),
        accuracy_plotdata=accuracy_plotdata(results),
    )
    report = dict(
        schema_version=1,
        reducebench_version=version(),
        metric_definitions=metric_definitions,
        extensions=dict(
            reducers=["none"],
            note="reducer 'none' (classification on scaled raw features) is a baseline added for comparison",
        ),
        config=config.to_dict() if config is not None else None,
        cells=[r.to_dict() for r in results],
    )

    paths = {}
    try:
        mkdir(out_dir)
        for k, table in tables.items():
            paths[k] = os.path.join(out_dir, f"{k}.csv")
            _format_floats(table).write(paths[k], format="ascii.csv", overwrite=True)
        paths["report"] = os.path.join(out_dir, "report.json")
        with open(paths["report"], "w", encoding="utf-8") as f:
            json.dump(report, f, indent=1)
    except OSError as e:
        raise IoError(f"couldn't write reports into {out_dir}: {e}") from e
    return paths


def print_summary(results, speaker=None):
    """
    Print a compact table of mean scores for each cell type.
    """
    lines = [f"{'dataset':>22} {'reducer':>12} {'clf':>4} {'acc':>7} {'F':>7} {'G':>7}"]
    for (dataset, reducer, classifier), group in _groups(
        results, ["dataset", "reducer", "classifier"]
    ).items():
        means = [np.mean([getattr(r.metrics, m) for r in group]) for m in _metric_names]
        lines.append(
            f"{dataset:>22} {reducer:>12} {classifier:>4} "
            + " ".join(f"{m:7.4f}" for m in means)
        )
    text = "\n".join(lines)
    if speaker is None:
        print(text)
    else:
        speaker._speak(text)
    return text
