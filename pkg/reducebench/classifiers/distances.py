from ..imports import *

__all__ = ["euclidean_distance", "squared_distances", "neighbor_order"]


def euclidean_distance(c, c_prime):
    """
    The Euclidean distance sqrt(sum_t (c_t - c'_t)^2) between two vectors.
    """
    c = np.asarray(c, dtype=float)
    c_prime = np.asarray(c_prime, dtype=float)
    if c.shape != c_prime.shape:
        raise DimensionMismatch(f"can't compare shapes {c.shape} and {c_prime.shape}")
    return float(np.sqrt(np.sum((c - c_prime) ** 2)))


def squared_distances(A, B):
    """
    All pairwise squared Euclidean distances between the rows of A and B.

    Every neighbor-based method goes through this one function, so that
    the same pair of points always gets bit-identical distances (which
    keeps tie-breaking consistent between code paths).

    Returns
    -------
    distances : numpy.ndarray
        An (len(A) x len(B)) matrix.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape[-1] != B.shape[-1]:
        raise DimensionMismatch(f"widths {A.shape[-1]} and {B.shape[-1]} differ")
    distances = np.empty((len(A), len(B)))
    # one row at a time keeps memory at O(len(B) x d)
    for i, a in enumerate(A):
        distances[i] = np.sum((B - a) ** 2, axis=1)
    return distances


def neighbor_order(distances):
    """
    Sort candidate neighbors nearest-first, breaking distance ties
    in favor of the lower index (a stable sort along the last axis).
    """
    return np.argsort(distances, axis=-1, kind="stable")
