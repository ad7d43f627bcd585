"""
Deterministic, seeded train/test splitting.
"""

from ..imports import *

__all__ = ["SplitSpec", "stratified_split", "count_test_samples"]


@dataclass(frozen=True)
class SplitSpec:
    """
    How to divide a dataset into training and test partitions.

    Attributes
    ----------
    train_fraction : float
        The fraction of samples used for training, in (0, 1).
    seed : int
        An unsigned 64-bit integer seeding the shuffle.
    stratified : bool
        Split each class separately, so every class shows up in both partitions?
    """

    train_fraction: float = 0.9
    seed: int = 0
    stratified: bool = True

    def validate(self):
        if not (0 < self.train_fraction < 1):
            raise ConfigError(
                f"train_fraction must be in (0, 1), got {self.train_fraction}"
            )
        if not (0 <= int(self.seed) < 2**64):
            raise ConfigError(f"seed must be an unsigned 64-bit integer")
        return self


def count_test_samples(count, train_fraction):
    """
    How many of `count` samples go to the test set?

    The test share is count x (1 - train_fraction), rounded half-up,
    and never less than one when there are at least two samples.
    """
    n_test = int(math.floor(count * (1 - train_fraction) + 0.5))
    if count >= 2:
        n_test = min(max(n_test, 1), count - 1)
    return n_test


def stratified_split(dataset, spec=SplitSpec()):
    """
    Split a dataset into training and test indices.

    A PCG64 generator seeded with `spec.seed` drives a Fisher-Yates
    shuffle (see `reducebench.imports.fisher_yates`). In stratified
    mode, each class (in class-index order) has its ascending list
    of sample indices shuffled, and the first `count_test_samples`
    entries go to the test set. Without stratification, all indices
    are shuffled at once. The same seed always gives the same split.

    Parameters
    ----------
    dataset : Dataset
        The data to split.
    spec : SplitSpec
        The fraction, seed, and stratification choice.

    Returns
    -------
    train : numpy.ndarray
        Sorted training indices.
    test : numpy.ndarray
        Sorted test indices (disjoint from train; together they cover
        every sample).
    """
    spec.validate()
    rng = make_rng(spec.seed)
    labels = np.asarray(dataset.labels)

    if spec.stratified:
        counts = np.bincount(labels, minlength=dataset.n_classes)
        for c, count in enumerate(counts):
            if count < 2:
                raise ClassTooSmall(c, int(count))
        test = []
        for c in range(dataset.n_classes):
            members = np.flatnonzero(labels == c)
            shuffled = fisher_yates(members, rng)
            test.extend(shuffled[: count_test_samples(len(members), spec.train_fraction)])
    else:
        shuffled = fisher_yates(np.arange(len(labels)), rng)
        test = shuffled[: count_test_samples(len(labels), spec.train_fraction)]

    test = np.sort(np.asarray(test, dtype=int))
    is_test = np.zeros(len(labels), dtype=bool)
    is_test[test] = True
    train = np.flatnonzero(is_test == False)
    return train, test
