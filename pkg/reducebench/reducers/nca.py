"""
Neighborhood Components Analysis.

NCA learns a linear projection A (p x m) under which a stochastic
nearest-neighbor rule, where each point picks a neighbor with
probability falling off as exp(-squared projected distance), gets as
many leave-one-out classifications right as possible.
"""

from ..imports import *
from ..records import register_record, check_record
from scipy.special import logsumexp

__all__ = [
    "NcaModel",
    "NcaConfig",
    "projected_distance",
    "neighbor_probabilities",
    "objective",
    "objective_gradient",
    "objective_and_gradient",
    "fit_nca",
    "initial_projection",
    "transform",
    "leave_one_out_accuracy",
]

initializations = ["scaled_identity", "seeded_random"]


@dataclass(frozen=True)
class NcaConfig:
    """
    Settings for fitting NCA by gradient ascent with backtracking.

    Attributes
    ----------
    p : int
        The target dimension (None lets the harness pick ceil(m/2)).
    max_iters : int
        The most gradient steps to take.
    initial_step : float
        The step size tried first on every iteration.
    backtrack_factor : float
        How much to shrink the step each time it fails to improve f(A).
    tolerance : float
        Stop once the relative improvement of a step falls below this.
    seed : int
        Seeds the initialization noise.
    init : str
        'scaled_identity' (the first p rows of the identity, plus noise)
        or 'seeded_random' (standard normal entries divided by sqrt(m)).
    init_noise : float
        Half-width of the uniform noise added to the identity start.
    max_backtracks : int
        The most times one iteration may shrink its step.
    """

    p: int = None
    max_iters: int = 200
    initial_step: float = 1.0
    backtrack_factor: float = 0.5
    tolerance: float = 1e-6
    seed: int = 0
    init: str = "scaled_identity"
    init_noise: float = 1e-3
    max_backtracks: int = 30

    def validate(self):
        if self.p is not None and self.p < 1:
            raise InvalidTargetDim("NCA target dimension p must be positive")
        if self.max_iters < 1:
            raise ConfigError("nca max_iters must be positive")
        if self.initial_step <= 0:
            raise ConfigError("nca initial_step must be positive")
        if not (0 < self.backtrack_factor < 1):
            raise ConfigError("nca backtrack_factor must be in (0, 1)")
        if self.tolerance <= 0:
            raise ConfigError("nca tolerance must be positive")
        if self.init not in initializations:
            raise ConfigError(f"nca init must be one of {initializations}")
        if self.init_noise < 0:
            raise ConfigError("nca init_noise must be non-negative")
        if self.max_backtracks < 0:
            raise ConfigError("nca max_backtracks must be non-negative")
        if not (0 <= int(self.seed) < 2**64):
            raise ConfigError("nca seed must be an unsigned 64-bit integer")
        return self


@register_record("nca")
class NcaModel:
    """
    A learned NCA projection.

    Attributes
    ----------
    A : numpy.ndarray
        The (p x m) projection matrix; Q = A^T A is the learned metric.
    objective_trace : list of float
        f(A) at the start, then after every accepted step (never decreasing).
    converged : bool
        Did the fit stop because steps stopped helping (rather than
        because it ran out of iterations)?
    """

    def __init__(self, A, objective_trace=None, converged=False):
        self.A = np.array(A, dtype=float, ndmin=2)
        self.A.setflags(write=False)
        self.objective_trace = [float(f) for f in (objective_trace or [])]
        self.converged = bool(converged)
        if self.p > self.m:
            raise InvalidTargetDim(f"p = {self.p} exceeds m = {self.m}")
        if np.all(np.isfinite(self.A)) == False:
            raise DegenerateInput("projection matrix has non-finite entries")

    def __repr__(self):
        return f"<NcaModel {self.m}->{self.p}, {self.n_accepted_steps} steps>"

    @property
    def p(self):
        return self.A.shape[0]

    @property
    def m(self):
        return self.A.shape[1]

    @property
    def n_accepted_steps(self):
        return max(len(self.objective_trace) - 1, 0)

    def to_record(self):
        return dict(
            kind=self.record_kind,
            version=1,
            p=self.p,
            m=self.m,
            A=self.A.tolist(),
            objective_trace=self.objective_trace,
            converged=self.converged,
        )

    @classmethod
    def from_record(cls, record):
        check_record(record, cls.record_kind)
        model = cls(record["A"], record["objective_trace"], record["converged"])
        if (model.p, model.m) != (record["p"], record["m"]):
            raise RecordError("NCA record shape doesn't match its stated p and m")
        return model


def _check_inputs(A, X, labels=None):
    A = np.array(A, dtype=float, ndmin=2)
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("X must be a 2D (n x m) matrix")
    check_width(X, A.shape[1], "X")
    if len(X) < 2:
        raise DegenerateInput("neighbor probabilities need at least two points")
    if labels is not None:
        labels = np.asarray(labels)
        if len(labels) != len(X):
            raise DimensionMismatch(f"{len(labels)} labels for {len(X)} points")
    return A, X, labels


def projected_distance(A, x_i, x_j):
    """
    The squared distance between two points after projecting by A,
    (A x_i - A x_j)^T (A x_i - A x_j).
    """
    A = np.array(A, dtype=float, ndmin=2)
    x_i, x_j = np.asarray(x_i, dtype=float), np.asarray(x_j, dtype=float)
    check_width(x_i, A.shape[1], "x_i")
    check_width(x_j, A.shape[1], "x_j")
    difference = A @ (x_i - x_j)
    return float(difference @ difference)


def _probabilities(embedded):
    """
    Softmax over negative squared distances, row by row, with the
    diagonal pinned to zero. Subtracting each row's log-sum-exp keeps
    far-apart points from overflowing or underflowing to 0/0.
    """
    difference = embedded[:, np.newaxis, :] - embedded[np.newaxis, :, :]
    distances = np.sum(difference**2, axis=-1)
    np.fill_diagonal(distances, np.inf)
    return np.exp(-distances - logsumexp(-distances, axis=1)[:, np.newaxis])


def neighbor_probabilities(A, X):
    """
    The probability P_ij that point i picks point j as its neighbor.

    Parameters
    ----------
    A : array-like
        The (p x m) projection.
    X : array-like
        An (n x m) matrix, n >= 2.

    Returns
    -------
    P : numpy.ndarray
        An (n x n) row-stochastic matrix with zeros on the diagonal.
    """
    A, X, _ = _check_inputs(A, X)
    return _probabilities(X @ A.T)


def objective_and_gradient(A, X, labels):
    """
    Evaluate f(A) and its gradient together.

    f(A) = sum_i p_i, with p_i = sum_{j in C_i} P_ij, and the gradient

        df/dA = 2 A sum_i ( p_i sum_k P_ik x_ik x_ik^T - sum_{j in C_i} P_ij x_ij x_ij^T )

    is assembled without forming any of the outer products, by
    collapsing the pair weights into one symmetric (n x n) matrix.

    Returns
    -------
    f : float
    gradient : numpy.ndarray
        A (p x m) matrix.
    """
    A, X, labels = _check_inputs(A, X, labels)
    embedded = X @ A.T
    P = _probabilities(embedded)
    same_class = labels[:, np.newaxis] == labels[np.newaxis, :]

    masked = P * same_class
    p = masked.sum(axis=1, keepdims=True)
    f = float(p.sum())

    # sum_ij W_ij x_ij x_ij^T = X^T (diag(rowsum + colsum) - W - W^T) X,
    # and every row of W = p_i P_ij - [j in C_i] P_ij sums to zero
    weights = p * P - masked
    laplacian = -(weights + weights.T)
    np.fill_diagonal(laplacian, weights.sum(axis=0))
    gradient = 2 * A @ (X.T @ laplacian @ X)
    return f, gradient


def objective(A, X, labels):
    """
    The expected number of points classified correctly by the
    stochastic leave-one-out neighbor rule, f(A) = sum_i sum_{j in C_i} P_ij.
    """
    A, X, labels = _check_inputs(A, X, labels)
    P = _probabilities(X @ A.T)
    same_class = labels[:, np.newaxis] == labels[np.newaxis, :]
    return float(np.sum(P * same_class))


def objective_gradient(A, X, labels):
    """
    The gradient df/dA, a (p x m) matrix.
    """
    return objective_and_gradient(A, X, labels)[1]


def initial_projection(p, m, config):
    """The starting (p x m) projection chosen by config.init, seeded by config.seed."""
    rng = make_rng(config.seed)
    if config.init == "scaled_identity":
        A = np.eye(m)[:p]
        if config.init_noise > 0:
            A = A + rng.uniform(-config.init_noise, config.init_noise, size=(p, m))
        return A
    return rng.standard_normal((p, m)) / np.sqrt(m)


class NcaFitter(Talker):
    """
    Gradient ascent on f(A), with a backtracking line search.
    """

    def __init__(self, config=NcaConfig(), mute=True):
        self.config = config.validate()
        self._mute = mute

    def fit(self, X_train, labels):
        X = np.asarray(X_train, dtype=float)
        labels = np.asarray(labels)
        if X.ndim != 2:
            raise DimensionMismatch("training data must be a 2D (n x m) matrix")
        n, m = X.shape
        if n < 2:
            raise DegenerateInput("NCA needs at least two training points")
        if len(np.unique(labels)) < 2:
            raise SingleClass("NCA needs at least two classes")
        p = m if self.config.p is None else self.config.p
        if not (1 <= p <= m):
            raise InvalidTargetDim(f"target dimension p = {p} must be in [1, {m}]")

        config = self.config
        A = initial_projection(p, m, config)
        f, gradient = objective_and_gradient(A, X, labels)
        trace = [f]
        converged = False

        for iteration in range(config.max_iters):
            # shrink the step until f(A) actually increases
            step = config.initial_step
            for attempt in range(config.max_backtracks + 1):
                candidate = A + step * gradient
                f_candidate, gradient_candidate = objective_and_gradient(
                    candidate, X, labels
                )
                if np.isfinite(f_candidate) and f_candidate > f:
                    break
                step *= config.backtrack_factor
            else:
                converged = True
                break

            improvement = (f_candidate - f) / max(abs(f), np.finfo(float).tiny)
            if improvement < config.tolerance:
                converged = True
                break

            A, f, gradient = candidate, f_candidate, gradient_candidate
            trace.append(f)

        if converged == False:
            warnings.warn(
                f"NCA stopped after {config.max_iters} iterations without converging",
                ConvergenceWarning,
            )
        self._speak(f"f(A) went from {trace[0]:.5g} to {trace[-1]:.5g} in {len(trace) - 1} steps")
        return NcaModel(A, trace, converged)


def fit_nca(X_train, labels, config=NcaConfig(), mute=True):
    """
    Learn an NCA projection from labeled training data.

    Starting from A_0, repeat A <- A + step * df/dA, halving (by
    `backtrack_factor`) the step until f increases; stop after
    `max_iters` iterations, or once no step improves f by at least
    `tolerance` relative to its current value.

    Parameters
    ----------
    X_train : array-like
        An (n x m) matrix.
    labels : array-like
        One class label per row (at least two distinct classes).
    config : NcaConfig
        Target dimension, step settings, initialization, seed.
    mute : bool
        Silence progress messages?

    Returns
    -------
    model : NcaModel
    """
    return NcaFitter(config, mute=mute).fit(X_train, labels)


def transform(model, X):
    """
    Project every row of X by A, giving an (n x p) matrix.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("X must be a 2D (n x m) matrix")
    check_width(X, model.m, "X")
    return X @ model.A.T


def leave_one_out_accuracy(X, labels):
    """
    Brute-force leave-one-out 1-nearest-neighbor accuracy
    (ties go to the lower index).
    """
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels)
    difference = X[:, np.newaxis, :] - X[np.newaxis, :, :]
    distances = np.sum(difference**2, axis=-1)
    np.fill_diagonal(distances, np.inf)
    nearest = np.argmin(distances, axis=1)
    return float(np.mean(labels[nearest] == labels))
