from .setup_tests import *

from reducebench.imports import *
from reducebench.classifiers import *


def test_euclidean_distance():
    assert euclidean_distance([1, 2], [1, 2]) == 0
    assert euclidean_distance([0, 0], [3, 4]) == 5
    rng = make_rng(0)
    a, b = rng.normal(size=5), rng.normal(size=5)
    assert euclidean_distance(a, b) == euclidean_distance(b, a)
    with pytest.raises(DimensionMismatch):
        euclidean_distance([0, 0], [0, 0, 0])


def test_knn_examples():
    """
    Do the hand-checkable KNN cases come out right?
    """
    # circles (0) at 1 and 2, squares (1) at 1.5, 3, and 3.5
    X = np.array([[1.0], [1.5], [2.0], [3.0], [3.5]])
    y = [0, 1, 0, 1, 1]
    assert knn_predict(train_knn(X, y, k=3), [0.0])[0] == 0
    assert knn_predict(train_knn(X, y, k=5), [0.0])[0] == 1

    X = np.arange(5.0)[:, None]
    y = [0, 0, 1, 1, 1]
    label, probabilities = knn_predict(train_knn(X, y, k=3), [1.6])
    assert label == 1
    assert np.allclose(probabilities, [1 / 3, 2 / 3])

    label, probabilities = knn_predict(train_knn(X, y, k=1), [3.0])
    assert label == 1
    assert np.all(probabilities == [0, 1])

    with pytest.raises(DimensionMismatch):
        knn_predict(train_knn(X, y, k=1), [3.0, 1.0])
    with pytest.raises(KTooLarge):
        train_knn(X, y, k=6)
    with pytest.raises(KTooLarge):
        train_knn(X, y, k=0)


def test_knn_ties():
    """
    Are distance ties resolved by training index, and probability ties by class?
    """
    # both neighbors sit 1 away; the lower index (class 1) wins
    model = train_knn([[1.0], [-1.0]], [1, 0], k=1)
    assert knn_predict(model, [0.0])[0] == 1

    # a 1-1 vote goes to the lower class
    model = train_knn([[1.0], [-1.0]], [1, 0], k=2)
    label, probabilities = knn_predict(model, [0.0])
    assert label == 0 and np.allclose(probabilities, [0.5, 0.5])


def brute_force_knn(X, y, k, n_classes, x):
    """Sort every training point by (distance, index) and vote."""
    distances = [(float(np.sum((row - x) ** 2)), i) for i, row in enumerate(X)]
    nearest = [i for _, i in sorted(distances)[:k]]
    votes = np.bincount(np.asarray(y)[nearest], minlength=n_classes)
    return int(np.argmax(votes)), votes / k


def test_knn_oracle():
    """
    Does KNN agree with a brute-force full sort on random queries,
    including ones on an integer grid where distances tie?
    """
    rng = make_rng(1)
    for trial in range(20):
        n_classes = int(rng.integers(2, 4))
        n = int(rng.integers(n_classes, 15))
        d = int(rng.integers(1, 3))
        X = rng.integers(0, 4, size=(n, d)).astype(float)
        y = np.concatenate([np.arange(n_classes), rng.integers(0, n_classes, n - n_classes)])
        k = int(rng.integers(1, n + 1))
        model = train_knn(X, y, k=k, n_classes=n_classes)
        queries = np.vstack(
            [rng.integers(0, 4, size=(25, d)).astype(float), rng.uniform(0, 3, size=(25, d))]
        )
        probabilities = model.predict_proba(queries)
        predictions = model.predict(queries)
        for q, x in enumerate(queries):
            expected_label, expected_probabilities = brute_force_knn(X, y, k, n_classes, x)
            assert predictions[q] == expected_label
            assert np.allclose(probabilities[q], expected_probabilities)
            assert np.isclose(probabilities[q].sum(), 1)


def test_enn_statistic():
    X = np.array([[0.0], [1.0], [10.0], [11.0]])
    assert enn_class_statistic(X, [0, 0, 1, 1], 1, 0) == 1
    assert enn_class_statistic(X, [0, 0, 1, 1], 1, 1) == 1

    interleaved = np.arange(4.0)[:, None]
    assert enn_class_statistic(interleaved, [0, 1, 0, 1], 1, 0) == 0
    assert enn_class_statistic(interleaved, [0, 1, 0, 1], 1, 1) == 0

    with pytest.raises(KTooLarge):
        enn_class_statistic(X, [0, 0, 1, 1], 4, 0)
    with pytest.raises(EmptyClass):
        enn_class_statistic(X, [0, 0, 1, 1], 1, 2)


def test_enn_examples():
    X = np.array([[0.0], [1.0], [10.0], [11.0]])
    model = train_enn(X, [0, 0, 1, 1], k=1)
    assert list(model.statistics) == [1, 1]
    assert model.class_counts.sum() == 4
    for predict in [enn_predict_direct, enn_predict_incremental]:
        assert predict(model, [0.5]) == 0
        assert predict(model, [10.5]) == 1
        # exactly halfway between the classes
        assert predict(model, [5.5]) == 0
        assert predict(model, [0.5]) == predict(model, [0.5])
    with pytest.raises(DimensionMismatch):
        enn_predict_direct(model, [0.5, 1.0])
    with pytest.raises(KTooLarge):
        train_enn(X, [0, 0, 1, 1], k=4)


def test_enn_incremental_matches_direct():
    """
    Does the incremental rule always make the same decision as
    recomputing every statistic from scratch?
    """
    rng = make_rng(2)
    for n in range(4, 11):
        for d in [1, 2]:
            for n_classes in [2, 3]:
                for k in [1, 2, 3]:
                    if k >= n or n_classes > n:
                        continue
                    for dataset in range(20):
                        # integer grids make plenty of distance ties
                        X = rng.integers(0, 4, size=(n, d)).astype(float)
                        y = np.concatenate(
                            [np.arange(n_classes), rng.integers(0, n_classes, n - n_classes)]
                        )
                        model = train_enn(X, y, k=k, n_classes=n_classes)
                        queries = np.vstack(
                            [
                                rng.integers(0, 4, size=(50, d)).astype(float),
                                rng.uniform(-1, 4, size=(50, d)),
                            ]
                        )
                        direct = model.predict(queries, rule="direct")
                        incremental = model.predict(queries, rule="incremental")
                        assert np.array_equal(direct, incremental)


def test_svm_symmetric_pair():
    model = svm_train_binary([[-1.0], [1.0]], [-1, 1], C=1000)
    assert abs(model.intercept) < 1e-6
    assert np.isclose(model.weight_vector()[0], 1, atol=1e-4)
    assert np.isclose(model.margin(), 2, atol=1e-4)
    assert np.isclose(svm_decision(model, [0.0]), 0, atol=1e-6)
    assert np.isclose(svm_decision(model, [1.0]), 1, atol=1e-4)
    assert svm_decision(model, [0.3]) > 0 and svm_decision(model, [-0.3]) < 0
    with pytest.raises(DimensionMismatch):
        svm_decision(model, [0.0, 1.0])


def test_svm_xor():
    X = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    y = np.array([1, 1, -1, -1])
    model = svm_train_binary(X, y, C=1.0)
    predicted = np.where(model.decision_function(X) >= 0, 1, -1)
    assert np.mean(predicted == y) <= 0.75


def test_svm_separable_kkt():
    """
    On separable data with a large C, do we get zero training error,
    and does every KKT condition hold?
    """
    rng = make_rng(3)
    for trial in range(20):
        direction = rng.normal(size=2)
        direction /= np.linalg.norm(direction)
        X = rng.uniform(-3, 3, size=(30, 2))
        side = X @ direction
        keep = np.abs(side) > 0.5
        X, y = X[keep], np.where(side[keep] > 0, 1, -1)
        if len(np.unique(y)) < 2:
            continue
        model = svm_train_binary(X, y, C=1e3, tol=1e-3)
        assert model.converged
        predicted = np.where(model.decision_function(X) >= 0, 1, -1)
        assert np.all(predicted == y)

        alphas = model.training_alphas
        assert np.all(alphas >= 0) and np.all(alphas <= 1e3)
        assert abs(np.sum(alphas * y)) < 1e-8
        residuals = kkt_residuals(X, y, alphas, model.intercept, 1e3)
        assert np.all(residuals < 1e-3)


def test_svm_permutation():
    """
    Does shuffling the training rows leave decisions (nearly) unchanged?
    """
    rng = make_rng(4)
    X = np.vstack([rng.normal(size=(15, 2)) - 2, rng.normal(size=(15, 2)) + 2])
    y = np.array([-1] * 15 + [1] * 15)
    order = rng.permutation(30)
    a = svm_train_binary(X, y, C=1.0, tol=1e-8)
    b = svm_train_binary(X[order], y[order], C=1.0, tol=1e-8)
    queries = rng.normal(size=(10, 2)) * 3
    assert np.allclose(a.decision_function(queries), b.decision_function(queries), atol=1e-2)


def test_svm_errors():
    with pytest.raises(SingleClass):
        svm_train_binary([[0.0], [1.0]], [1, 1])
    with pytest.raises(LabelOutOfRange):
        svm_train_binary([[0.0], [1.0]], [0, 1])
    with pytest.raises(ConfigError):
        svm_train_binary([[0.0], [1.0]], [-1, 1], C=0)
    with pytest.raises(ModelUntrained):
        SvmBinaryModel(np.zeros((0, 1)), [], [], 0.0).decision_function([[0.0]])
    with pytest.warns(ConvergenceWarning):
        model = svm_train_binary(
            make_rng(5).normal(size=(20, 2)), [1, -1] * 10, max_iterations=1
        )
    assert model.converged == False


def test_svm_multiclass():
    """
    Do one-vs-one votes pick the right class?
    """
    rng = make_rng(6)
    X = np.concatenate([c * 10 + rng.uniform(-1, 1, 10) for c in range(3)])[:, None]
    y = np.repeat([0, 1, 2], 10)
    model = train_svm_multiclass(X, y, SvmConfig(), n_jobs=2)
    assert len(model.pairwise) == 3
    assert svm_predict_multiclass(model, [10.2]) == 1
    assert list(model.predict([[0.0], [10.0], [20.0]])) == [0, 1, 2]

    # threads don't change anything
    serial = train_svm_multiclass(X, y, SvmConfig(), n_jobs=1)
    queries = rng.uniform(-5, 25, size=(20, 1))
    assert np.array_equal(serial.predict(queries), model.predict(queries))

    # two classes reduce to the binary decision
    X2, y2 = X[:20], y[:20]
    two = train_svm_multiclass(X2, y2)
    binary = two.pairwise[(0, 1)]
    expected = np.where(binary.decision_function(queries) >= 0, 0, 1)
    assert np.array_equal(two.predict(queries), expected)

    # a query exactly halfway between symmetric classes goes to class 0
    symmetric = train_svm_multiclass([[-1.0], [1.0]], [0, 1], SvmConfig(C=1000))
    assert svm_predict_multiclass(symmetric, [0.0]) == 0



def constant_svm(value):
    """A binary SVM whose decision value is `value` everywhere."""
    return SvmBinaryModel([[0.0]], [0.0], [1], intercept=value)


def test_svm_multiclass_ties():
    """
    When every class wins the same number of votes, equally strongly,
    does the lowest class win?
    """
    # a cyclic tournament: 0 beats 1, 1 beats 2, 2 beats 0
    pairwise = {(0, 1): constant_svm(1.0), (1, 2): constant_svm(1.0), (0, 2): constant_svm(-1.0)}
    model = SvmMulticlassModel(pairwise, 3)
    assert svm_predict_multiclass(model, [0.3]) == 0

    # five classes, each beating the next two (mod 5), two votes apiece
    pairwise = {}
    for a in range(5):
        for b in range(a + 1, 5):
            pairwise[(a, b)] = constant_svm(1.0 if (b - a) % 5 in (1, 2) else -1.0)
    model = SvmMulticlassModel(pairwise, 5)
    assert list(model.predict([[-2.0], [0.0], [7.0]])) == [0, 0, 0]

    # the same tournament run backwards
    pairwise = {k: constant_svm(-v.intercept) for k, v in pairwise.items()}
    assert SvmMulticlassModel(pairwise, 5).predict([[1.0]])[0] == 0

    # equal votes but unequal strength: the stronger class wins
    pairwise = {(0, 1): constant_svm(1.0), (1, 2): constant_svm(1.0), (0, 2): constant_svm(-3.0)}
    assert svm_predict_multiclass(SvmMulticlassModel(pairwise, 3), [0.0]) == 2

    # zero decisions everywhere send every vote to the lower class
    pairwise = {(a, b): constant_svm(0.0) for a in range(4) for b in range(a + 1, 4)}
    assert svm_predict_multiclass(SvmMulticlassModel(pairwise, 4), [0.0]) == 0


if __name__ == "__main__":  # pragma: no cover
    outputs = {k.split("_")[-1]: v() for k, v in locals().items() if "test_" in k}
