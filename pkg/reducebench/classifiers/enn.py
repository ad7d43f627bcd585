"""
The extended nearest-neighbors (ENN) classifier.

Where k-nearest-neighbors only asks "who are the query's neighbors?",
ENN also asks "who would count the query among *their* neighbors?".
It tentatively gives the query every possible label, and keeps the
label under which the whole training set looks most self-consistent
(the largest summed class-wise coherence statistic).
"""

from ..imports import *
from ..records import register_record, check_record
from .distances import squared_distances, neighbor_order

__all__ = [
    "EnnModel",
    "train_enn",
    "enn_class_statistic",
    "enn_predict_direct",
    "enn_predict_incremental",
]


def _check_k(k, n):
    if k < 1 or k >= n:
        raise KTooLarge(f"k = {k} must be at least 1 and smaller than n = {n}")


def _nearest(distances, k):
    """Each row's k nearest candidates, skipping itself (the diagonal)."""
    distances = np.array(distances, copy=True)
    np.fill_diagonal(distances, np.inf)
    return neighbor_order(distances)[:, :k]


def _same_class_counts(labels, nearest, n_classes):
    """
    For each class i, how many (y in class i, r <= k) pairs have
    y's r-th nearest neighbor also in class i?
    """
    same = (labels[nearest] == labels[:, np.newaxis]).sum(axis=1)
    return np.bincount(labels, weights=same, minlength=n_classes).round().astype(int)


def _coherence(same_counts, class_counts, k):
    """
    The summed statistics sum_i T_i = sum_i same_counts_i / (n_i k),
    skipping any class with no members.
    """
    present = class_counts > 0
    return float(np.sum(same_counts[present] / (class_counts[present] * k)))


def enn_class_statistic(features, labels, k, class_index):
    """
    The class-wise statistic T_i: the fraction of the k nearest
    neighbors of class-i samples that are also in class i.

    T_i = 1 / (n_i k) sum_{y in class i} sum_{r=1..k} I_r(y),

    where I_r(y) is 1 when y's r-th nearest neighbor (never y itself,
    ties going to the lower sample index) shares y's class.

    Parameters
    ----------
    features : array-like
        An (n x d) matrix.
    labels : array-like
        Class indices, one per row.
    k : int
        How many neighbors to look at, 1 <= k < n.
    class_index : int
        Which class's statistic to compute.

    Returns
    -------
    T : float
        A value in [0, 1].
    """
    features = np.asarray(features, dtype=float)
    labels = np.asarray(labels, dtype=int)
    _check_k(k, len(labels))
    n_members = np.sum(labels == class_index)
    if n_members == 0:
        raise EmptyClass(f"class {class_index} has no samples")
    n_classes = max(labels.max(), class_index) + 1
    nearest = _nearest(squared_distances(features, features), k)
    same = _same_class_counts(labels, nearest, n_classes)
    return same[class_index] / (n_members * k)


@register_record("enn")
class EnnModel:
    """
    An ENN model: the training data, k, and the neighbor bookkeeping
    needed to score a query without rebuilding every statistic.

    Attributes
    ----------
    class_counts : numpy.ndarray
        n_i, the number of training samples in each class.
    statistics : numpy.ndarray
        T_i for each class, over the training data alone.
    kth_distance : numpy.ndarray
        Each training point's squared distance to its k-th neighbor.
    kth_same : numpy.ndarray
        Whether each training point's k-th neighbor shares its class.
    """

    def __init__(self, train_features, train_labels, k=5, n_classes=None):
        self.train_features = np.array(train_features, dtype=float, ndmin=2)
        self.train_labels = np.array(train_labels, dtype=int)
        self.k = int(k)
        self.n_classes = int(
            n_classes if n_classes is not None else self.train_labels.max() + 1
        )
        n = len(self.train_labels)
        if len(self.train_features) != n:
            raise LengthMismatch("one label is needed per training row")
        _check_k(self.k, n)

        self.class_counts = np.bincount(self.train_labels, minlength=self.n_classes)
        if np.any(self.class_counts == 0):
            raise EmptyClass("every class needs at least one training sample")

        self._distances = squared_distances(self.train_features, self.train_features)
        nearest = _nearest(self._distances, self.k)
        kth = nearest[:, -1]
        self.kth_distance = self._distances[np.arange(n), kth]
        self.kth_same = self.train_labels[kth] == self.train_labels
        self.same_counts = _same_class_counts(self.train_labels, nearest, self.n_classes)
        self.statistics = self.same_counts / (self.class_counts * self.k)

    def __repr__(self):
        return f"<EnnModel k={self.k}, {len(self.train_labels)} training samples>"

    @property
    def d(self):
        return self.train_features.shape[1]

    def predict(self, X, rule="incremental"):
        """
        Classify every row of X.

        Parameters
        ----------
        X : array-like
            An (n x d) matrix.
        rule : str
            'incremental' (fast) or 'direct' (full recomputation);
            both always give the same answer.
        """
        predict_one = dict(
            incremental=enn_predict_incremental, direct=enn_predict_direct
        )[rule]
        return np.array([predict_one(self, x) for x in np.asarray(X, dtype=float)], dtype=int)

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


def train_enn(features, labels, k=5, n_classes=None):
    """Build an ENN model (precomputing every training point's neighbors)."""
    return EnnModel(features, labels, k=k, n_classes=n_classes)


def _query_distances(model, z):
    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise DimensionMismatch("ENN prediction expects a single vector")
    check_width(z, model.d)
    return squared_distances(z[np.newaxis, :], model.train_features)[0]


def enn_predict_direct(model, z):
    """
    Classify z by brute force.

    For each candidate class j, add z (labeled j) to the training set,
    recompute every class statistic T_i^j over the augmented set (with
    class j one member larger), and keep the j maximizing sum_i T_i^j.
    Ties go to the lower class index.
    """
    dz = _query_distances(model, z)
    n, k = len(model.train_labels), model.k

    augmented = np.empty((n + 1, n + 1))
    augmented[:n, :n] = model._distances
    augmented[:n, n] = dz
    augmented[n, :n] = dz
    nearest = _nearest(augmented, k)

    scores = np.zeros(model.n_classes)
    for j in range(model.n_classes):
        labels = np.append(model.train_labels, j)
        same = _same_class_counts(labels, nearest, model.n_classes)
        counts = np.bincount(labels, minlength=model.n_classes)
        scores[j] = _coherence(same, counts, k)
    return int(np.argmax(scores))


def enn_predict_incremental(model, z):
    """
    Classify z with the same decision as `enn_predict_direct`, without
    rebuilding the statistics.

    Inserting z changes only two kinds of neighbor relations:

    - z's own k nearest training points, which count toward class j
      when z is tentatively labeled j;
    - training points y for which z lands strictly closer than their
      current k-th neighbor (ties favor the existing training point).
      z pushes that k-th neighbor out of y's list, so y's same-class
      count changes by [j == class(y)] - [k-th neighbor shares y's class].
    """
    dz = _query_distances(model, z)
    labels, k, C = model.train_labels, model.k, model.n_classes

    entered = dz < model.kth_distance
    entered_per_class = np.bincount(labels[entered], minlength=C)
    lost_per_class = np.bincount(labels[entered & model.kth_same], minlength=C)
    neighbors_of_z = np.bincount(labels[neighbor_order(dz)[:k]], minlength=C)

    scores = np.zeros(C)
    for j in range(C):
        same = model.same_counts - lost_per_class
        same[j] += entered_per_class[j] + neighbors_of_z[j]
        counts = model.class_counts.copy()
        counts[j] += 1
        scores[j] = _coherence(same, counts, k)
    return int(np.argmax(scores))
