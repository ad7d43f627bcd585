"""
Min-max scaling of features into [0, 1].

Sigmoid autoencoder outputs live in (0, 1), so every reducer
sees features squeezed into that range, with the scaling fit
on training rows only.
"""

from ..imports import *
from ..records import register_record, check_record

__all__ = ["ScalerParams", "fit_scaler", "apply_scaler"]


@register_record("scaler")
class ScalerParams:
    """
    Per-feature minimum and range (max - min) of a training matrix.
    A zero range marks a constant feature.
    """

    def __init__(self, minimum, range):
        self.minimum = np.array(minimum, dtype=float)
        self.range = np.array(range, dtype=float)
        self.minimum.setflags(write=False)
        self.range.setflags(write=False)
        if np.any(self.range < 0):
            raise ValueError("feature ranges must be non-negative")

    def __repr__(self):
        return f"<ScalerParams for {len(self)} features>"

    def __len__(self):
        return len(self.minimum)

    def to_record(self):
        return dict(
            kind=self.record_kind,
            version=1,
            minimum=self.minimum.tolist(),
            range=self.range.tolist(),
        )

    @classmethod
    def from_record(cls, record):
        check_record(record, cls.record_kind)
        return cls(minimum=record["minimum"], range=record["range"])


def fit_scaler(train_features):
    """
    Measure the per-column minimum and range of the training rows.

    Parameters
    ----------
    train_features : array-like
        An (n x d) matrix of training features.

    Returns
    -------
    params : ScalerParams
    """
    X = np.atleast_2d(np.asarray(train_features, dtype=float))
    if X.size == 0:
        raise EmptyDataset("cannot fit a scaler to an empty matrix")
    minimum = X.min(axis=0)
    return ScalerParams(minimum=minimum, range=X.max(axis=0) - minimum)


def apply_scaler(params, features):
    """
    Map features onto [0, 1] with previously fitted scaling.

    Each value becomes (x - min) / range; constant (zero-range)
    features map to 0.5, and anything falling outside [0, 1]
    (as test rows sometimes do) is clamped back inside.

    Parameters
    ----------
    params : ScalerParams
        The fitted scaling.
    features : array-like
        An (n x d) matrix.

    Returns
    -------
    scaled : numpy.ndarray
        An (n x d) matrix with every entry in [0, 1].
    """
    X = np.asarray(features, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("features must be a 2D (n x d) matrix")
    check_width(X, len(params), "features")

    constant = params.range == 0
    safe_range = np.where(constant, 1.0, params.range)
    scaled = (X - params.minimum) / safe_range
    scaled[:, constant] = 0.5
    return np.clip(scaled, 0.0, 1.0)
