from .setup_tests import *

from reducebench.imports import *
from reducebench.records import *
from reducebench.datasets import fit_scaler, make_separated_clusters
from reducebench.reducers import *
from reducebench.classifiers import *


def test_round_trips(tmp_path):
    """
    Does every model come back from JSON bit-for-bit?
    """
    d = make_separated_clusters(n_per_class=6, n_features=3, n_classes=3)
    X, y = d.features / 10, d.labels
    models = [
        fit_scaler(d.features),
        train_autoencoder(X, 2, AeTrainConfig(epochs=3)),
        fit_nca(X, y, NcaConfig(p=2, max_iters=5)),
        train_knn(X, y, k=3),
        train_enn(X, y, k=3),
        train_svm_multiclass(X, y),
    ]
    queries = make_rng(1).uniform(size=(5, 3))
    for model in models:
        path = save_record(model, str(tmp_path / f"{model.record_kind}.json"))
        back = load_record(path)
        assert type(back) == type(model)
        assert back.to_record() == model.to_record()

    ae, nca, knn, enn, svm = [load_record(str(tmp_path / f"{m.record_kind}.json")) for m in models[1:]]
    assert np.array_equal(reduce_with_autoencoder(ae, queries), reduce_with_autoencoder(models[1], queries))
    assert np.array_equal(transform(nca, queries), transform(models[2], queries))
    assert np.array_equal(knn.predict(queries), models[3].predict(queries))
    assert np.array_equal(enn.predict(queries), models[4].predict(queries))
    assert np.array_equal(svm.predict(queries), models[5].predict(queries))


def test_bad_records(tmp_path):
    model = NcaModel(np.eye(2))
    record = model.to_record()
    with pytest.raises(RecordError):
        KnnModel.from_record(record)
    with pytest.raises(RecordError):
        NcaModel.from_record(dict(record, version=99))

    path = str(tmp_path / "mystery.json")
    with open(path, "w") as f:
        json.dump(dict(kind="mystery"), f)
    with pytest.raises(RecordError):
        load_record(path)
