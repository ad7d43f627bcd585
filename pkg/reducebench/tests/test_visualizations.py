from .setup_tests import *

from reducebench.imports import *
from reducebench.reducers import *
from reducebench.harness import CellResult
from reducebench.metrics import evaluate_predictions
from reducebench.visualizations import *


def test_accuracy_bars():
    results = [
        CellResult(d, r, c, 0, 0, evaluate_predictions([0, 1], [0, 1], 2))
        for d in ["Seeds", "Ionosphere"]
        for r in ["autoencoder", "nca"]
        for c in ["knn", "enn", "svm"]
    ]
    ax = plot_accuracy_bars(results, "nca")
    assert ax.get_title() == "reducer = nca"
    assert len(ax.patches) == 2 * 3
    plt.close("all")

    with pytest.raises(ConfigError):
        plot_accuracy_bars(results, "none")


def test_loss_traces():
    X = make_rng(0).uniform(size=(10, 4))
    labels = np.arange(10) % 2
    fig, ax = plt.subplots(1, 2)
    plot_loss_trace(train_autoencoder(X, 2, AeTrainConfig(epochs=4)), ax=ax[0])
    plot_loss_trace(fit_nca(X, labels, NcaConfig(p=2, max_iters=3)), ax=ax[1])
    assert len(ax[0].lines[0].get_xdata()) == 4
    plt.close("all")

    with pytest.raises(ConfigError):
        plot_loss_trace(object())
