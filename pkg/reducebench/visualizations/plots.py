"""
Quick-look plots of benchmark results and reducer training.
"""

from ..imports import *

__all__ = ["plot_accuracy_bars", "plot_loss_trace"]

classifier_colors = dict(knn="cornflowerblue", enn="darkorange", svm="seagreen")


def plot_accuracy_bars(results, reducer, ax=None, **kw):
    """
    Draw grouped bars of mean accuracy for one reducer,
    one group per dataset and one bar per classifier.

    Parameters
    ----------
    results : list of CellResult
        Benchmark results (other reducers are ignored).
    reducer : str
        Which reducer's results to show.
    ax : matplotlib.axes.Axes
        Where to draw (a new figure is made if None).
    **kw : dict
        Passed on to ax.bar.

    Returns
    -------
    ax : matplotlib.axes.Axes
    """
    chosen = [r for r in results if r.reducer == reducer]
    if len(chosen) == 0:
        raise ConfigError(f"no results for reducer {reducer!r}")
    datasets = list(dict.fromkeys(r.dataset for r in chosen))
    classifiers = list(dict.fromkeys(r.classifier for r in chosen))

    if ax is None:
        fig, ax = plt.subplots(1, 1, figsize=(max(4, 1.2 * len(datasets) + 2), 4))
    width = 0.8 / len(classifiers)
    x = np.arange(len(datasets))
    for i, c in enumerate(classifiers):
        means, stds = [], []
        for d in datasets:
            acc = [r.metrics.accuracy for r in chosen if r.dataset == d and r.classifier == c]
            means.append(np.mean(acc) if acc else np.nan)
            stds.append(np.std(acc) if acc else np.nan)
        ax.bar(
            x + (i - (len(classifiers) - 1) / 2) * width,
            means,
            width=width,
            yerr=stds,
            label=c.upper(),
            color=classifier_colors.get(c),
            **kw,
        )
    ax.set_xticks(x)
    ax.set_xticklabels(datasets, rotation=45, ha="right")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("Accuracy")
    ax.set_title(f"reducer = {reducer}")
    ax.legend(frameon=False)
    return ax


def plot_loss_trace(model, ax=None, **kw):
    """
    Plot how a reducer's training objective changed.

    An AutoencoderModel shows its reconstruction loss per epoch;
    an NcaModel shows its objective at each accepted step.
    """
    if hasattr(model, "loss_trace"):
        trace, ylabel, xlabel = model.loss_trace, "Reconstruction Error", "Epoch"
    elif hasattr(model, "objective_trace"):
        trace, ylabel, xlabel = model.objective_trace, "NCA Objective", "Accepted Step"
    else:
        raise ConfigError(f"{model} has no training trace to plot")
    if len(trace) == 0:
        raise EmptyDataset("the training trace is empty")

    if ax is None:
        fig, ax = plt.subplots(1, 1, figsize=(5, 3.5))
    ax.plot(np.arange(len(trace)), trace, **kw)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    return ax
