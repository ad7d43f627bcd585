"""
A soft-margin support vector machine, trained in the dual by
sequential minimal optimization, plus one-vs-one voting to
handle more than two classes.
"""

from ..imports import *
from ..records import register_record, check_record
from concurrent.futures import ThreadPoolExecutor

__all__ = [
    "SvmConfig",
    "SvmBinaryModel",
    "SvmMulticlassModel",
    "svm_train_binary",
    "svm_decision",
    "svm_predict_multiclass",
    "train_svm_multiclass",
    "kkt_residuals",
    "linear_kernel",
]

kernels = ["linear"]


def linear_kernel(A, B):
    """The Gram matrix of plain dot products between rows of A and B."""
    return np.asarray(A, dtype=float) @ np.asarray(B, dtype=float).T


_kernel_functions = dict(linear=linear_kernel)


@dataclass(frozen=True)
class SvmConfig:
    """
    Settings for the SVM solver.

    Attributes
    ----------
    C : float
        The penalty on slack (larger C = harder margin).
    tol : float
        How closely every KKT condition must hold at the end.
    max_iterations : int
        The most pairwise updates before giving up (with a warning).
    kernel : str
        Only 'linear' for now.
    """

    C: float = 1.0
    tol: float = 1e-3
    max_iterations: int = 100000
    kernel: str = "linear"

    def validate(self):
        if self.C <= 0:
            raise ConfigError("svm C must be positive")
        if self.tol <= 0:
            raise ConfigError("svm tol must be positive")
        if self.max_iterations < 1:
            raise ConfigError("svm max_iterations must be positive")
        if self.kernel not in kernels:
            raise ConfigError(f"svm kernel must be one of {kernels}")
        return self


@register_record("svm-binary")
class SvmBinaryModel:
    """
    A two-class SVM, kept as its support vectors.

    Attributes
    ----------
    support_vectors : numpy.ndarray
        The training points with alpha > 0.
    alphas : numpy.ndarray
        Their dual coefficients, 0 < alpha <= C.
    support_labels : numpy.ndarray
        Their labels, +1 or -1.
    intercept : float
        The bias a in the decision function.
    converged : bool
        Did every KKT condition end up within tol?
    """

    def __init__(
        self,
        support_vectors,
        alphas,
        support_labels,
        intercept,
        C=1.0,
        kernel="linear",
        tol=1e-3,
        converged=True,
        n_iterations=0,
    ):
        self.support_vectors = np.array(support_vectors, dtype=float, ndmin=2)
        self.alphas = np.array(alphas, dtype=float, ndmin=1)
        self.support_labels = np.array(support_labels, dtype=int, ndmin=1)
        self.intercept = float(intercept)
        self.C = float(C)
        self.kernel = kernel
        self.tol = float(tol)
        self.converged = bool(converged)
        self.n_iterations = int(n_iterations)

    def __repr__(self):
        return f"<SvmBinaryModel {len(self.alphas)} support vectors, C={self.C}>"

    @property
    def d(self):
        return self.support_vectors.shape[-1]

    def decision_function(self, X):
        """
        sum_j alpha_j l_j K(k_j, z) + a, for every row z of X.
        """
        if len(self.alphas) == 0:
            raise ModelUntrained("this SVM has no support vectors")
        X = np.asarray(X, dtype=float)
        check_width(X, self.d)
        K = _kernel_functions[self.kernel](X, self.support_vectors)
        return K @ (self.alphas * self.support_labels) + self.intercept

    def weight_vector(self):
        """w = sum_j alpha_j l_j k_j (only meaningful for the linear kernel)."""
        return (self.alphas * self.support_labels) @ self.support_vectors

    def margin(self):
        """The margin M = 2 / ||w||."""
        return 2 / np.linalg.norm(self.weight_vector())

    def to_record(self):
        return dict(
            kind=self.record_kind,
            version=1,
            kernel=self.kernel,
            C=self.C,
            tol=self.tol,
            intercept=self.intercept,
            converged=self.converged,
            n_iterations=self.n_iterations,
            support_vectors=self.support_vectors.tolist(),
            alphas=self.alphas.tolist(),
            support_labels=self.support_labels.tolist(),
        )

    @classmethod
    def from_record(cls, record):
        check_record(record, cls.record_kind)
        return cls(
            record["support_vectors"],
            record["alphas"],
            record["support_labels"],
            record["intercept"],
            C=record["C"],
            kernel=record["kernel"],
            tol=record["tol"],
            converged=record["converged"],
            n_iterations=record["n_iterations"],
        )


def _intercept(alphas, labels, gradient, C):
    """
    The bias from the final dual state: averaged over free support
    vectors if there are any, or else the midpoint of the interval
    the bounded ones allow.
    """
    yG = labels * gradient
    free = (alphas > 0) & (alphas < C)
    if np.any(free):
        rho = np.mean(yG[free])
    else:
        at_upper, at_lower = alphas >= C, alphas <= 0
        upper_side = (at_upper & (labels < 0)) | (at_lower & (labels > 0))
        lower_side = (at_upper & (labels > 0)) | (at_lower & (labels < 0))
        ub = np.min(yG[upper_side]) if np.any(upper_side) else np.inf
        lb = np.max(yG[lower_side]) if np.any(lower_side) else -np.inf
        if np.isinf(ub):
            rho = lb
        elif np.isinf(lb):
            rho = ub
        else:
            rho = (ub + lb) / 2
    return -rho


def svm_train_binary(features, labels, C=1.0, tol=1e-3, max_iterations=100000, kernel="linear"):
    """
    Train a soft-margin SVM on +1/-1 labels.

    The dual problem (minimize 1/2 a^T Q a - sum(a) over 0 <= a <= C
    with sum(a l) = 0, Q_ij = l_i l_j K_ij) is solved two coefficients
    at a time, always picking the pair that violates the KKT conditions
    the most, until the largest violation is below tol.

    Parameters
    ----------
    features : array-like
        An (n x d) training matrix.
    labels : array-like
        +1 or -1 for each row (both must appear).
    C : float
        The slack penalty.
    tol : float
        The KKT tolerance.
    max_iterations : int
        Give up (returning the best iterate, with a ConvergenceWarning
        and converged=False) after this many pair updates.
    kernel : str
        'linear'.

    Returns
    -------
    model : SvmBinaryModel
        With `training_alphas` (every dual coefficient, in training-row
        order) attached for KKT checking.
    """
    SvmConfig(C=C, tol=tol, max_iterations=max_iterations, kernel=kernel).validate()
    X = np.asarray(features, dtype=float)
    y = np.asarray(labels, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("features must be a 2D (n x d) matrix")
    if len(X) != len(y):
        raise LengthMismatch("one label is needed per training row")
    if np.all(np.isin(y, [-1, 1])) == False:
        raise LabelOutOfRange("binary SVM labels must be +1 or -1")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise SingleClass("binary SVM training needs both +1 and -1 labels")

    K = _kernel_functions[kernel](X, X)
    Q = y[:, np.newaxis] * y[np.newaxis, :] * K
    alphas = np.zeros(len(y))
    gradient = -np.ones(len(y))

    # the selection gap bounds every KKT residual; halving it leaves
    # room for the rounding in recomputed decision values
    stopping_gap = tol / 2
    converged = False
    for iteration in range(max_iterations):
        can_rise = ((alphas < C) & (y > 0)) | ((alphas > 0) & (y < 0))
        can_fall = ((alphas < C) & (y < 0)) | ((alphas > 0) & (y > 0))
        score = -y * gradient
        i = np.flatnonzero(can_rise)[np.argmax(score[can_rise])]
        j = np.flatnonzero(can_fall)[np.argmin(score[can_fall])]
        gap = score[i] - score[j]
        if gap < stopping_gap:
            converged = True
            break

        curvature = K[i, i] + K[j, j] - 2 * K[i, j]
        if curvature <= 0:
            curvature = 1e-12
        room_i = C - alphas[i] if y[i] > 0 else alphas[i]
        room_j = alphas[j] if y[j] > 0 else C - alphas[j]
        t = min(gap / curvature, room_i, room_j)

        old_i, old_j = alphas[i], alphas[j]
        alphas[i] += y[i] * t
        alphas[j] -= y[j] * t
        if t == room_i:
            alphas[i] = C if y[i] > 0 else 0.0
        if t == room_j:
            alphas[j] = 0.0 if y[j] > 0 else C
        gradient += Q[:, i] * (alphas[i] - old_i) + Q[:, j] * (alphas[j] - old_j)
    else:
        warnings.warn(
            f"SVM solver hit {max_iterations} iterations before the KKT conditions held within {tol}",
            ConvergenceWarning,
        )

    support = alphas > 0
    model = SvmBinaryModel(
        support_vectors=X[support],
        alphas=alphas[support],
        support_labels=y[support].astype(int),
        intercept=_intercept(alphas, y, gradient, C),
        C=C,
        kernel=kernel,
        tol=tol,
        converged=converged,
        n_iterations=iteration + 1,
    )
    model.training_alphas = alphas
    return model


def svm_decision(model, z):
    """
    The decision value sum_j alpha_j l_j (k_j . z) + a for one vector.
    Its sign gives the class: positive (or zero) means +1.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise DimensionMismatch("svm_decision expects a single vector")
    return float(model.decision_function(z[np.newaxis, :])[0])


def kkt_residuals(features, labels, alphas, intercept, C, kernel="linear"):
    """
    How badly does each training point violate its KKT condition?

    With r_i = l_i f(k_i) - 1: points with alpha = 0 need r_i >= 0,
    free points (0 < alpha < C) need r_i = 0, and points at alpha = C
    need r_i <= 0. The residual is the size of the violation (0 if none).

    Returns
    -------
    residuals : numpy.ndarray
        One non-negative value per training point.
    """
    X = np.asarray(features, dtype=float)
    y = np.asarray(labels, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    f = _kernel_functions[kernel](X, X) @ (alphas * y) + intercept
    r = y * f - 1
    residuals = np.abs(r)
    residuals[alphas <= 0] = np.maximum(0, -r[alphas <= 0])
    residuals[alphas >= C] = np.maximum(0, r[alphas >= C])
    return residuals


@register_record("svm-multiclass")
class SvmMulticlassModel:
    """
    One binary SVM for every unordered pair of classes (a, b), a < b,
    with class a as +1 and class b as -1.
    """

    def __init__(self, pairwise, n_classes):
        self.pairwise = dict(sorted(pairwise.items()))
        self.n_classes = int(n_classes)
        expected = self.n_classes * (self.n_classes - 1) // 2
        if len(self.pairwise) != expected:
            raise ModelUntrained(
                f"{self.n_classes} classes need {expected} pairwise models, got {len(self.pairwise)}"
            )

    def __repr__(self):
        return f"<SvmMulticlassModel {self.n_classes} classes, {len(self.pairwise)} pairs>"

    def predict(self, X):
        """
        One-vs-one votes for every row of X.

        The class with the most votes wins; ties go to the larger sum of
        |decision value| over the votes won, and then to the lower class.
        """
        X = np.asarray(X, dtype=float)
        votes = np.zeros((len(X), self.n_classes))
        strength = np.zeros((len(X), self.n_classes))
        rows = np.arange(len(X))
        for (a, b), model in self.pairwise.items():
            values = model.decision_function(X)
            winners = np.where(values >= 0, a, b)
            votes[rows, winners] += 1
            strength[rows, winners] += np.abs(values)

        predictions = np.zeros(len(X), dtype=int)
        for r in rows:
            candidates = np.flatnonzero(votes[r] == votes[r].max())
            s = strength[r, candidates]
            predictions[r] = candidates[np.flatnonzero(s == s.max())[0]]
        return predictions

    def to_record(self):
        return dict(
            kind=self.record_kind,
            version=1,
            n_classes=self.n_classes,
            pairs=[
                dict(a=a, b=b, model=model.to_record())
                for (a, b), model in self.pairwise.items()
            ],
        )

    @classmethod
    def from_record(cls, record):
        check_record(record, cls.record_kind)
        pairwise = {
            (p["a"], p["b"]): SvmBinaryModel.from_record(p["model"])
            for p in record["pairs"]
        }
        return cls(pairwise, record["n_classes"])


def train_svm_multiclass(features, labels, config=SvmConfig(), n_classes=None, n_jobs=1):
    """
    Train every pairwise SVM for a multi-class problem.

    The pairwise problems only read shared data, so they can be
    trained on `n_jobs` threads; the result doesn't depend on the order
    they finish in.

    Parameters
    ----------
    features : array-like
        An (n x d) matrix.
    labels : array-like
        Class indices in [0, n_classes).
    config : SvmConfig
        C, tol, iteration cap, and kernel.
    n_classes : int
        Defaults to max label + 1.
    n_jobs : int
        How many pairwise problems to train at once.

    Returns
    -------
    model : SvmMulticlassModel
    """
    config.validate()
    X = np.asarray(features, dtype=float)
    labels = np.asarray(labels, dtype=int)
    n_classes = int(n_classes if n_classes is not None else labels.max() + 1)
    if n_classes < 2:
        raise SingleClass("an SVM needs at least two classes")
    pairs = [(a, b) for a in range(n_classes) for b in range(a + 1, n_classes)]

    def train_pair(pair):
        a, b = pair
        rows = (labels == a) | (labels == b)
        binary = np.where(labels[rows] == a, 1, -1)
        return svm_train_binary(
            X[rows],
            binary,
            C=config.C,
            tol=config.tol,
            max_iterations=config.max_iterations,
            kernel=config.kernel,
        )

    with ThreadPoolExecutor(max_workers=max(int(n_jobs), 1)) as pool:
        models = list(pool.map(train_pair, pairs))
    return SvmMulticlassModel(dict(zip(pairs, models)), n_classes)


def svm_predict_multiclass(model, z):
    """
    Classify one vector by one-vs-one voting (see SvmMulticlassModel.predict).
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise DimensionMismatch("svm_predict_multiclass expects a single vector")
    return int(model.predict(z[np.newaxis, :])[0])
