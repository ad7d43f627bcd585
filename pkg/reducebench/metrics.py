"""
Confusion matrices and the summary scores reported for every
benchmark cell: accuracy, macro-averaged F-measure, and G-mean.

Multi-class F-measure is the unweighted mean of per-class F1 scores;
G-mean is the geometric mean of per-class recalls. A class that is
never predicted and never correct gets F1 = 0 (0/0 -> 0), and a class
with no true samples is left out of the G-mean entirely.
"""

from .imports import *

__all__ = [
    "ConfusionMatrix",
    "MetricsReport",
    "confusion",
    "accuracy",
    "precision_recall",
    "macro_f_measure",
    "g_mean",
    "evaluate_predictions",
    "metric_definitions",
]

metric_definitions = dict(
    accuracy="trace / total of the confusion matrix",
    f_measure="macro-averaged F1: mean over classes of 2PR/(P+R), with 0/0 -> 0",
    g_mean="geometric mean of per-class recalls, over classes with at least one true sample",
)


class ConfusionMatrix:
    """
    Counts of (true class, predicted class) pairs:
    rows are true classes, columns are predicted classes.
    """

    def __init__(self, counts):
        self.counts = np.array(counts, dtype=int, ndmin=2)
        if self.counts.shape[0] != self.counts.shape[1]:
            raise DimensionMismatch("a confusion matrix must be square")
        if np.any(self.counts < 0):
            raise ValueError("confusion counts can't be negative")
        self.counts.setflags(write=False)

    def __repr__(self):
        return f"<ConfusionMatrix {self.n_classes} classes, {self.total} samples>"

    @property
    def n_classes(self):
        return self.counts.shape[0]

    @property
    def total(self):
        return int(self.counts.sum())

    def _require_samples(self):
        if self.total == 0:
            raise EmptyMatrix("no samples were evaluated")


def confusion(true_labels, predicted_labels, n_classes):
    """
    Tally true and predicted class indices into a confusion matrix.

    Parameters
    ----------
    true_labels : array-like
        The correct class of each sample.
    predicted_labels : array-like
        The predicted class of each sample.
    n_classes : int
        C, the number of classes.

    Returns
    -------
    cm : ConfusionMatrix
    """
    true_labels = np.asarray(true_labels, dtype=int).ravel()
    predicted_labels = np.asarray(predicted_labels, dtype=int).ravel()
    if len(true_labels) != len(predicted_labels):
        raise LengthMismatch(
            f"{len(true_labels)} true labels but {len(predicted_labels)} predictions"
        )
    for labels in [true_labels, predicted_labels]:
        if np.any(labels < 0) or np.any(labels >= n_classes):
            raise LabelOutOfRange(f"labels must lie in [0, {n_classes})")
    counts = np.zeros((n_classes, n_classes), dtype=int)
    np.add.at(counts, (true_labels, predicted_labels), 1)
    return ConfusionMatrix(counts)


def accuracy(cm):
    """The fraction of samples on the diagonal."""
    cm._require_samples()
    return float(np.trace(cm.counts) / cm.total)


def precision_recall(cm):
    """
    Per-class precision (diagonal / column sum) and recall
    (diagonal / row sum), with 0/0 -> 0.
    """
    diagonal = np.diag(cm.counts).astype(float)
    predicted = cm.counts.sum(axis=0)
    actual = cm.counts.sum(axis=1)
    precision = np.divide(
        diagonal, predicted, out=np.zeros_like(diagonal), where=predicted > 0
    )
    recall = np.divide(diagonal, actual, out=np.zeros_like(diagonal), where=actual > 0)
    return precision, recall


def macro_f_measure(cm):
    """The mean over classes of each class's F1 score."""
    cm._require_samples()
    precision, recall = precision_recall(cm)
    denominator = precision + recall
    f = np.divide(
        2 * precision * recall,
        denominator,
        out=np.zeros_like(denominator),
        where=denominator > 0,
    )
    return float(np.mean(f))


def g_mean(cm):
    """
    The geometric mean of per-class recalls, (prod_j recall_j)^(1/C'),
    over the C' classes that have at least one true sample.
    """
    cm._require_samples()
    _, recall = precision_recall(cm)
    present = cm.counts.sum(axis=1) > 0
    recall = recall[present]
    if np.any(recall == 0):
        return 0.0
    return float(np.prod(recall) ** (1 / len(recall)))


class MetricsReport:
    """
    Every score for one set of predictions.
    """

    def __init__(self, cm):
        self.confusion = cm
        self.accuracy = accuracy(cm)
        self.f_measure = macro_f_measure(cm)
        self.g_mean = g_mean(cm)
        self.per_class_precision, self.per_class_recall = precision_recall(cm)

    def __repr__(self):
        return (
            f"<MetricsReport accuracy={self.accuracy:.4f} "
            f"F={self.f_measure:.4f} G={self.g_mean:.4f}>"
        )

    def to_dict(self):
        return dict(
            accuracy=self.accuracy,
            f_measure=self.f_measure,
            g_mean=self.g_mean,
            per_class_precision=self.per_class_precision.tolist(),
            per_class_recall=self.per_class_recall.tolist(),
            confusion=self.confusion.counts.tolist(),
        )


def evaluate_predictions(true_labels, predicted_labels, n_classes):
    """Build the full MetricsReport for a set of predictions."""
    return MetricsReport(confusion(true_labels, predicted_labels, n_classes))
