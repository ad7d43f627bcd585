"""
The k-nearest-neighbors classifier.
"""

from ..imports import *
from ..records import register_record, check_record
from .distances import squared_distances, neighbor_order

__all__ = ["KnnModel", "train_knn", "knn_predict"]


@register_record("knn")
class KnnModel:
    """
    A k-nearest-neighbors model is just its training data and k.
    """

    def __init__(self, train_features, train_labels, k=5, n_classes=None):
        """
        Parameters
        ----------
        train_features : array-like
            An (n x d) matrix.
        train_labels : array-like
            Class indices, one per training row.
        k : int
            How many neighbors vote (k <= n).
        n_classes : int
            How many classes there are (defaults to max label + 1).
        """
        self.train_features = np.array(train_features, dtype=float, ndmin=2)
        self.train_labels = np.array(train_labels, dtype=int)
        self.k = int(k)
        self.n_classes = int(
            n_classes if n_classes is not None else self.train_labels.max() + 1
        )
        for a in [self.train_features, self.train_labels]:
            a.setflags(write=False)
        if len(self.train_features) != len(self.train_labels):
            raise LengthMismatch("one label is needed per training row")
        if self.k < 1 or self.k > len(self.train_labels):
            raise KTooLarge(
                f"k = {self.k} must be between 1 and the {len(self.train_labels)} training samples"
            )

    def __repr__(self):
        return f"<KnnModel k={self.k}, {len(self.train_labels)} training samples>"

    @property
    def d(self):
        return self.train_features.shape[1]

    def predict_proba(self, X):
        """
        Neighbor-vote class probabilities for every row of X.

        Returns
        -------
        probabilities : numpy.ndarray
            An (n x C) matrix; each entry is a multiple of 1/k.
        """
        X = np.asarray(X, dtype=float)
        check_width(X, self.d)
        nearest = neighbor_order(squared_distances(X, self.train_features))[:, : self.k]
        votes = np.zeros((len(X), self.n_classes))
        for r, neighbors in enumerate(nearest):
            votes[r] = np.bincount(self.train_labels[neighbors], minlength=self.n_classes)
        return votes / self.k

    def predict(self, X):
        """
        The most probable class for every row of X (ties go to the lower class).
        """
        return np.argmax(self.predict_proba(X), axis=1)

    def to_record(self):
        return dict(
            kind=self.record_kind,
            version=1,
            k=self.k,
            n_classes=self.n_classes,
            train_features=self.train_features.tolist(),
            train_labels=self.train_labels.tolist(),
        )

    @classmethod
    def from_record(cls, record):
        check_record(record, cls.record_kind)
        return cls(
            record["train_features"],
            record["train_labels"],
            k=record["k"],
            n_classes=record["n_classes"],
        )


def train_knn(features, labels, k=5, n_classes=None):
    """Store the training data for k-nearest-neighbors classification."""
    return KnnModel(features, labels, k=k, n_classes=n_classes)


def knn_predict(model, x):
    """
    Classify one vector by a vote of its k nearest training points.

    Distances are Euclidean, ties in distance go to the lower training
    index, and ties in probability go to the lower class index.

    Parameters
    ----------
    model : KnnModel
    x : array-like
        A vector as wide as the training data.

    Returns
    -------
    predicted : int
        The winning class index.
    probabilities : numpy.ndarray
        P(class = j | x) = (neighbors in class j) / k, for every class j.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DimensionMismatch("knn_predict expects a single vector")
    probabilities = model.predict_proba(x[np.newaxis, :])[0]
    return int(np.argmax(probabilities)), probabilities
