"""
The benchmark pipeline: for every dataset, repetition, and reducer,
split the data, scale it, reduce it, and score every classifier.
"""

from ..imports import *
from ..datasets import SplitSpec, stratified_split, fit_scaler, apply_scaler
from ..reducers import (
    train_autoencoder,
    reduce_with_autoencoder,
    fit_nca,
    transform,
    NcaModel,
    initial_projection,
)
from ..classifiers import train_knn, train_enn, train_svm_multiclass
from ..metrics import evaluate_predictions
from .config import RunConfig, reducer_names, classifier_names
from concurrent.futures import ThreadPoolExecutor

__all__ = [
    "CellResult",
    "ReducedSplit",
    "PresentClassModel",
    "reduce_split",
    "train_classifier",
    "score_classifier",
    "BenchmarkRunner",
    "run_pipeline",
    "check_reduced_widths",
]


class CellResult:
    """
    The outcome of one (dataset, reducer, classifier, repetition) cell.
    """

    def __init__(
        self,
        dataset,
        reducer,
        classifier,
        repetition,
        seed,
        metrics,
        timings=None,
        d_original=None,
        d_reduced=None,
        n_train=None,
        n_test=None,
        train_classes=None,
    ):
        self.dataset = dataset
        self.reducer = reducer
        self.classifier = classifier
        self.repetition = repetition
        self.seed = seed
        self.metrics = metrics
        self.timings = dict(timings or {})
        self.d_original = d_original
        self.d_reduced = d_reduced
        self.n_train = n_train
        self.n_test = n_test
        self.train_classes = train_classes

    def __repr__(self):
        return (
            f"<CellResult {self.dataset}/{self.reducer}/{self.classifier} "
            f"seed={self.seed} accuracy={self.metrics.accuracy:.4f}>"
        )

    @property
    def key(self):
        return (self.dataset, self.reducer, self.classifier)

    def to_row(self):
        """The columns written to results.csv."""
        return dict(
            dataset=self.dataset,
            reducer=self.reducer,
            classifier=self.classifier,
            seed=self.seed,
            accuracy=self.metrics.accuracy,
            f_measure=self.metrics.f_measure,
            g_mean=self.metrics.g_mean,
        )

    def to_dict(self):
        """Everything about this cell, for report.json."""
        d = dict(
            dataset=self.dataset,
            reducer=self.reducer,
            classifier=self.classifier,
            repetition=self.repetition,
            seed=self.seed,
            d_original=self.d_original,
            d_reduced=self.d_reduced,
            n_train=self.n_train,
            n_test=self.n_test,
            train_classes=self.train_classes,
            timings=self.timings,
        )
        d.update(self.metrics.to_dict())
        return d


@dataclass
class ReducedSplit:
    """
    One dataset after splitting, scaling, and reducing.
    """

    train: object
    test: object
    reducer: str
    seed: int
    model: object = None
    timings: dict = field(default_factory=dict)


def reduce_split(dataset, reducer, seed, config=RunConfig()):
    """
    Split, scale, and reduce one dataset with one seed.

    The scaler and the reducer only ever see the training rows;
    the test rows are pushed through whatever was fit on them.

    Parameters
    ----------
    dataset : Dataset
        The data to process.
    reducer : str
        One of "none", "autoencoder", "nca".
    seed : int
        Seeds the split and the reducer.
    config : RunConfig
        Provides the split fraction and the reducer hyperparameters.

    Returns
    -------
    reduced : ReducedSplit
    """
    if reducer not in reducer_names:
        raise ConfigError(f"unknown reducer {reducer!r} (allowed: {reducer_names})")
    timings = {}

    start = time.perf_counter()
    spec = SplitSpec(
        train_fraction=config.train_fraction, seed=seed, stratified=config.stratified
    )
    train_indices, test_indices = stratified_split(dataset, spec)
    train, test = dataset.subset(train_indices), dataset.subset(test_indices)
    timings["split"] = time.perf_counter() - start

    start = time.perf_counter()
    scaler = fit_scaler(train.features)
    X_train = apply_scaler(scaler, train.features)
    X_test = apply_scaler(scaler, test.features)
    timings["scale"] = time.perf_counter() - start

    start = time.perf_counter()
    target = half_dimension(dataset.d)
    if reducer == "autoencoder":
        model = train_autoencoder(
            X_train, target, replace(config.autoencoder, seed=seed)
        )
        X_train = reduce_with_autoencoder(model, X_train)
        X_test = reduce_with_autoencoder(model, X_test)
    elif reducer == "nca":
        nca_config = replace(config.nca, p=target, seed=seed)
        if len(np.unique(train.labels)) < 2:
            # with one class, every projection scores f(A) = n
            A = initial_projection(target, dataset.d, nca_config)
            model = NcaModel(A, objective_trace=[float(train.n)], converged=True)
        else:
            model = fit_nca(X_train, train.labels, nca_config)
        X_train = transform(model, X_train)
        X_test = transform(model, X_test)
    else:
        model = None
    timings["reduce"] = time.perf_counter() - start

    return ReducedSplit(
        train=train.with_features(X_train),
        test=test.with_features(X_test),
        reducer=reducer,
        seed=seed,
        model=model,
        timings=timings,
    )


class PresentClassModel:
    """
    A classifier trained on only the classes that turned up in its
    training rows, answering with indices from the full label space.

    An unstratified split can leave a class entirely in the test rows;
    that class is then never predicted, but it still counts in the metrics.
    """

    def __init__(self, model, classes):
        self.model = model
        self.classes = np.asarray(classes, dtype=int)

    def __repr__(self):
        return f"<PresentClassModel classes={list(self.classes)} {self.model}>"

    def predict(self, X):
        X = np.array(X, dtype=float, ndmin=2)
        if self.model is None:
            return np.full(len(X), self.classes[0], dtype=int)
        return self.classes[self.model.predict(X)]


def train_classifier(classifier, features, labels, n_classes, config=RunConfig()):
    """
    Train one of the three classifiers on (already reduced) features.

    When some of the n_classes have no training rows, the classifier is
    trained on the classes that are present and wrapped in a
    PresentClassModel; with only one class present, that class is
    always predicted.
    """
    if classifier not in classifier_names:
        raise ConfigError(
            f"unknown classifier {classifier!r} (allowed: {classifier_names})"
        )
    labels = np.asarray(labels, dtype=int)
    present = np.unique(labels)
    if len(present) < n_classes:
        if len(present) == 1:
            return PresentClassModel(None, present)
        dense = np.searchsorted(present, labels)
        model = _train_dense(classifier, features, dense, len(present), config)
        return PresentClassModel(model, present)
    return _train_dense(classifier, features, labels, n_classes, config)


def _train_dense(classifier, features, labels, n_classes, config):
    if classifier == "knn":
        return train_knn(features, labels, k=config.knn_k, n_classes=n_classes)
    elif classifier == "enn":
        return train_enn(features, labels, k=config.enn_k, n_classes=n_classes)
    return train_svm_multiclass(features, labels, config.svm, n_classes=n_classes)


def score_classifier(classifier, train, test_features, test_labels, config=RunConfig()):
    """
    Train a classifier on a Dataset and score it on held-out rows
    (whose labels use the training set's class indices).

    Returns
    -------
    metrics : MetricsReport
    timings : dict
    """
    timings = {}
    start = time.perf_counter()
    model = train_classifier(
        classifier, train.features, train.labels, train.n_classes, config
    )
    timings["train"] = time.perf_counter() - start

    start = time.perf_counter()
    predictions = model.predict(test_features)
    timings["predict"] = time.perf_counter() - start
    return evaluate_predictions(test_labels, predictions, train.n_classes), timings


class BenchmarkRunner(Talker):
    """
    Run every cell of a benchmark, possibly on several threads.
    """

    def __init__(self, config, threads=None, mute=True):
        """
        Parameters
        ----------
        config : RunConfig
            What to run.
        threads : int
            How many blocks to run at once. None falls back on the
            config, then on $REDUCEBENCH_THREADS, then on the CPU count.
        mute : bool
            Should progress messages be hidden?
        """
        self.config = config.validate(require_datasets=False)
        self.threads = threads or config.threads or threads_from_environment()
        self._mute = mute

    def _run_block(self, dataset, reducer, repetition):
        """Everything that shares one reduced split: all classifiers."""
        seed = self.config.base_seed + repetition
        try:
            reduced = reduce_split(dataset, reducer, seed, self.config)
        except ReduceBenchError as e:
            raise PipelineError(e, dataset=dataset.name, reducer=reducer, seed=seed) from e

        results = []
        for classifier in self.config.classifiers:
            try:
                metrics, timings = score_classifier(
                    classifier,
                    reduced.train,
                    reduced.test.features,
                    reduced.test.labels,
                    self.config,
                )
            except ReduceBenchError as e:
                raise PipelineError(
                    e,
                    dataset=dataset.name,
                    reducer=reducer,
                    classifier=classifier,
                    seed=seed,
                ) from e
            timings = dict(reduced.timings, **timings)
            results.append(
                CellResult(
                    dataset=dataset.name,
                    reducer=reducer,
                    classifier=classifier,
                    repetition=repetition,
                    seed=seed,
                    metrics=metrics,
                    timings=timings,
                    d_original=dataset.d,
                    d_reduced=reduced.train.d,
                    n_train=reduced.train.n,
                    n_test=reduced.test.n,
                    train_classes=len(np.unique(reduced.train.labels)),
                )
            )
        return results

    def run(self, datasets=None):
        """
        Run the whole benchmark.

        Parameters
        ----------
        datasets : list of Dataset
            Already-loaded datasets (by default, each one in the
            config is loaded from its CSV file).

        Returns
        -------
        results : list of CellResult
            Ordered by dataset, reducer, classifier, then repetition,
            no matter how many threads did the work.
        """
        if datasets is None:
            self.config.validate()
            datasets = []
            for d in self.config.datasets:
                try:
                    datasets.append(d.load())
                except ReduceBenchError as e:
                    raise PipelineError(e, dataset=d.name) from e

        blocks = [
            (dataset, reducer, repetition)
            for dataset in datasets
            for reducer in self.config.reducers
            for repetition in range(self.config.repetitions)
        ]
        self._speak(
            f"running {len(blocks)} blocks x {len(self.config.classifiers)} classifiers"
            f" on {self.threads} thread(s)"
        )

        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                outputs = list(
                    tqdm(
                        executor.map(lambda b: self._run_block(*b), blocks),
                        total=len(blocks),
                        **self._progress_kw,
                    )
                )
        else:
            outputs = [
                self._run_block(*b) for b in tqdm(blocks, **self._progress_kw)
            ]

        results = [r for block in outputs for r in block]
        dataset_order = {d.name: i for i, d in enumerate(datasets)}
        reducer_order = {r: i for i, r in enumerate(self.config.reducers)}
        classifier_order = {c: i for i, c in enumerate(self.config.classifiers)}
        results.sort(
            key=lambda r: (
                dataset_order[r.dataset],
                reducer_order[r.reducer],
                classifier_order[r.classifier],
                r.repetition,
            )
        )
        check_reduced_widths(results)
        return results


def check_reduced_widths(results):
    """
    Make sure every reduced cell has exactly ceil(d / 2) features
    (and unreduced cells still have d).
    """
    for r in results:
        expected = r.d_original if r.reducer == "none" else half_dimension(r.d_original)
        if r.d_reduced != expected:
            raise DimensionMismatch(
                f"{r.dataset}/{r.reducer} produced {r.d_reduced} features,"
                f" expected {expected}"
            )
    return True


def run_pipeline(config, threads=None, datasets=None, mute=True):
    """
    Run a benchmark, returning one CellResult per cell.

    Parameters
    ----------
    config : RunConfig
        What to run.
    threads : int
        How many blocks to run in parallel (see BenchmarkRunner).
    datasets : list of Dataset
        Pre-loaded datasets to use instead of the config's files.
    mute : bool
        Should progress be hidden?
    """
    return BenchmarkRunner(config, threads=threads, mute=mute).run(datasets)
