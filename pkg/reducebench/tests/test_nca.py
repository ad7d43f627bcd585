from .setup_tests import *

from reducebench.imports import *
from reducebench.reducers import *
from reducebench.datasets import make_separated_clusters


def test_projected_distance():
    assert projected_distance(np.eye(2), [1, 2], [1, 2]) == 0
    assert np.isclose(projected_distance(np.eye(2), [0, 0], [3, 4]), 25)
    assert projected_distance(np.zeros((1, 2)), [0, 0], [3, 4]) == 0
    with pytest.raises(DimensionMismatch):
        projected_distance(np.eye(2), [0, 0, 0], [3, 4])


def test_neighbor_probabilities():
    """
    Do the probabilities match hand calculations?
    """
    X = np.array([[0.0], [1.0], [2.0]])
    P = neighbor_probabilities([[1.0]], X)
    expected = np.exp(-1) / (np.exp(-1) + np.exp(-4))
    assert np.isclose(P[0, 1], expected)
    assert np.isclose(P[0, 1], 0.95257, atol=1e-5)
    assert np.isclose(P[0, 2], 0.04743, atol=1e-5)
    assert np.isclose(P[1, 0], 0.5) and np.isclose(P[1, 2], 0.5)
    assert np.all(np.diag(P) == 0)

    rng = make_rng(1)
    P = neighbor_probabilities(rng.normal(size=(2, 3)), rng.normal(size=(2, 3)))
    assert np.isclose(P[0, 1], 1) and np.isclose(P[1, 0], 1)

    with pytest.raises(DegenerateInput):
        neighbor_probabilities(np.eye(2), np.zeros((1, 2)))
    with pytest.raises(DimensionMismatch):
        neighbor_probabilities(np.eye(2), np.zeros((4, 3)))


def test_probabilities_are_stable():
    """
    Are the rows stochastic, even for enormous distances?
    """
    rng = make_rng(2)
    for _ in range(100):
        n, m = rng.integers(2, 11), rng.integers(1, 5)
        p = rng.integers(1, m + 1)
        X = rng.uniform(size=(n, m)) * 10 ** rng.uniform(-2, 2)
        A = rng.normal(size=(p, m))
        P = neighbor_probabilities(A, X)
        assert np.all(np.isfinite(P))
        assert np.all(np.abs(P.sum(axis=1) - 1) <= 1e-12)
        assert np.all(np.diag(P) == 0)

    # squared projected distances of order 1e4
    X = np.array([[0.0], [100.0], [-100.0], [0.5]])
    P = neighbor_probabilities([[1.0]], X)
    assert np.all(np.abs(P.sum(axis=1) - 1) <= 1e-12)
    assert P[1, 3] == 1 and P[1, 2] == 0


def test_objective():
    """
    Does f(A) match the easy cases?
    """
    rng = make_rng(3)
    X = rng.normal(size=(6, 2))
    assert np.isclose(objective(np.eye(2), X, [0] * 6), 6)
    assert objective(np.eye(2), X, np.arange(6)) == 0

    f = objective([[1.0]], [[0.0], [1.0], [2.0]], ["a", "a", "b"])
    expected = np.exp(-1) / (np.exp(-1) + np.exp(-4)) + 0.5
    assert np.isclose(f, expected)
    assert np.isclose(f, 1.45257, atol=1e-5)

    for _ in range(5):
        f = objective(rng.normal(size=(2, 2)), X, rng.integers(0, 3, size=6))
        assert 0 <= f <= 6


def test_gradient():
    """
    Does the analytic gradient agree with central finite differences?
    """
    rng = make_rng(4)
    step = 1e-5
    for _ in range(50):
        n, m = rng.integers(2, 9), rng.integers(1, 5)
        p = rng.integers(1, min(m, 3) + 1)
        X = rng.uniform(size=(n, m))
        labels = rng.integers(0, 3, size=n)
        A = rng.normal(size=(p, m))
        f, gradient = objective_and_gradient(A, X, labels)
        assert np.isclose(f, objective(A, X, labels))
        assert np.array_equal(gradient, objective_gradient(A, X, labels))

        numeric = np.zeros_like(A)
        for index in np.ndindex(A.shape):
            up, down = A.copy(), A.copy()
            up[index] += step
            down[index] -= step
            numeric[index] = (objective(up, X, labels) - objective(down, X, labels)) / (
                2 * step
            )
        assert np.allclose(gradient, numeric, rtol=1e-4, atol=1e-8)

    # zero at A = 0, and for a constant objective
    X = rng.normal(size=(5, 2))
    assert np.all(objective_gradient(np.zeros((1, 2)), X, np.arange(5) % 2) == 0)
    g = objective_gradient(rng.normal(size=(2, 2)), X[:2], [0, 0])
    assert np.allclose(g, 0)


def test_fit_separated_clusters():
    """
    On well-separated clusters, does a 1D projection keep every
    leave-one-out neighbor in the right class?
    """
    d = make_separated_clusters(n_per_class=10, n_features=2)
    model = fit_nca(d.features, d.labels, NcaConfig(p=1, max_iters=50))
    assert model.p == 1 and model.m == 2
    assert model.objective_trace[-1] >= model.objective_trace[0]

    projected = transform(model, d.features)
    assert projected.shape == (20, 1)
    raw = leave_one_out_accuracy(d.features, d.labels)
    assert leave_one_out_accuracy(projected, d.labels) >= raw


def test_fit_trace_never_drops():
    rng = make_rng(10)
    X = rng.normal(size=(30, 3))
    labels = (X[:, 0] + 0.5 * rng.normal(size=30) > 0).astype(int)
    model = fit_nca(X, labels, NcaConfig(p=2, max_iters=30))
    trace = model.objective_trace
    assert len(trace) == model.n_accepted_steps + 1
    assert all(b >= a for a, b in zip(trace[:-1], trace[1:]))
    assert trace[-1] >= objective(model.A, X, labels) - 1e-9


def test_fit_stops_when_nothing_helps():
    X = make_rng(5).normal(size=(10, 3))
    labels = np.arange(10) % 2
    config = NcaConfig(p=3, init_noise=0.0, tolerance=1e300)
    model = fit_nca(X, labels, config)
    assert model.n_accepted_steps == 0
    assert model.converged
    assert np.array_equal(model.A, np.eye(3))
    assert np.isclose(model.objective_trace[0], objective(np.eye(3), X, labels))


def test_fit_is_deterministic():
    X = make_rng(6).normal(size=(12, 3))
    labels = np.arange(12) % 3
    for init in ["scaled_identity", "seeded_random"]:
        config = NcaConfig(p=2, max_iters=10, init=init, seed=9)
        a = fit_nca(X, labels, config)
        b = fit_nca(X, labels, config)
        assert np.array_equal(a.A, b.A)
        assert a.objective_trace == b.objective_trace


def test_fit_warns_without_converging():
    X = make_rng(7).normal(size=(12, 3))
    labels = np.arange(12) % 2
    with pytest.warns(ConvergenceWarning):
        model = fit_nca(X, labels, NcaConfig(p=2, max_iters=1, tolerance=1e-300))
    assert model.converged == False


def test_fit_errors():
    X = make_rng(8).normal(size=(6, 3))
    with pytest.raises(SingleClass):
        fit_nca(X, [1] * 6)
    with pytest.raises(InvalidTargetDim):
        fit_nca(X, np.arange(6) % 2, NcaConfig(p=4))
    with pytest.raises(InvalidTargetDim):
        fit_nca(X, np.arange(6) % 2, NcaConfig(p=0))
    with pytest.raises(ConfigError):
        fit_nca(X, np.arange(6) % 2, NcaConfig(init="pca"))


def test_transform():
    X = make_rng(9).normal(size=(5, 4))
    assert np.array_equal(transform(NcaModel(np.eye(4)), X), X)
    assert np.all(transform(NcaModel(np.zeros((2, 4))), X) == 0)
    with pytest.raises(DimensionMismatch):
        transform(NcaModel(np.eye(3)), X)
    with pytest.raises(InvalidTargetDim):
        NcaModel(np.zeros((3, 2)))


if __name__ == "__main__":  # pragma: no cover
    outputs = {k.split("_")[-1]: v() for k, v in locals().items() if "test_" in k}
