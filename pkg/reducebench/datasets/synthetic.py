from ..imports import *
from .dataset import Dataset

__all__ = ["make_separated_clusters", "make_affine_subspace"]


def make_separated_clusters(
    n_per_class=20, n_features=4, n_classes=2, spread=0.5, separation=10.0, seed=0
):
    """
    Make a toy dataset of tight, far-apart clusters.

    Class c is centered at c * separation along every axis, with
    uniform jitter of half-width `spread`. Any sensible classifier,
    with or without dimensionality reduction, should score perfectly.

    Returns
    -------
    dataset : Dataset
    """
    rng = make_rng(seed)
    features, labels = [], []
    for c in range(n_classes):
        center = np.full(n_features, c * separation)
        jitter = rng.uniform(-spread, spread, size=(n_per_class, n_features))
        features.append(center + jitter)
        labels += [c] * n_per_class
    return Dataset(
        name="separated-clusters",
        features=np.vstack(features),
        labels=labels,
        class_names=[f"cluster{c}" for c in range(n_classes)],
        source="synthetic",
    )


def make_affine_subspace(n=200, d=8, rank=2, seed=0):
    """
    Make points in [0, 1]^d that lie exactly on a rank-dimensional
    affine subspace (through the cube's center).

    Returns
    -------
    X : numpy.ndarray
        An (n x d) matrix.
    """
    rng = make_rng(seed)
    basis = rng.uniform(-1, 1, size=(rank, d))
    basis /= np.abs(basis).sum(axis=0).max()
    coefficients = rng.uniform(-0.5, 0.5, size=(n, rank))
    return 0.5 + coefficients @ basis
