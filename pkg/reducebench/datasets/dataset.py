"""
Labeled feature matrices, and the tools to read them from
(and write them back to) UCI-style CSV files.
"""

from ..imports import *

__all__ = ["Dataset", "load_csv", "write_csv"]


def _frozen(array, dtype):
    """Return a read-only copy of an array."""
    a = np.array(array, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


class Dataset:
    """
    A labeled feature matrix, with its class dictionary.

    Datasets are immutable after construction: the `features` and
    `labels` arrays are read-only, so they can be shared freely
    between threads running different cells of a benchmark.
    """

    def __init__(
        self, name, features, labels, class_names, d_original=None, source=None
    ):
        """
        Initialize a Dataset.

        Parameters
        ----------
        name : str
            A short identifier, used in report files.
        features : array-like
            A (n samples x d features) real matrix.
        labels : array-like
            Integer class indices, one per sample, in [0, C).
        class_names : list of str
            The original label strings, ordered by class index.
        d_original : int
            The width of the data as it came from disk (defaults to d).
        source : str
            Where the data came from, for provenance.
        """
        self.name = str(name)
        self.features = _frozen(features, float)
        self.labels = _frozen(labels, int)
        self.class_names = [str(c) for c in class_names]
        self.d_original = int(d_original or self.features.shape[-1])
        self.source = source

        if self.features.ndim != 2:
            raise DimensionMismatch("features must be a 2D (n x d) matrix")
        if len(self.features) != len(self.labels):
            raise LengthMismatch(
                f"{len(self.features)} feature rows but {len(self.labels)} labels"
            )
        if len(self.labels) == 0:
            raise EmptyDataset(f"dataset {self.name!r} has no samples")
        if np.any(self.labels < 0) or np.any(self.labels >= self.n_classes):
            raise LabelOutOfRange("labels must lie in [0, number of classes)")
        if np.any(self.class_counts() == 0):
            raise EmptyClass("every class must occur at least once")
        if np.all(np.isfinite(self.features)) == False:
            row, column = np.argwhere(np.isfinite(self.features) == False)[0]
            raise DegenerateInput(
                f"feature {self.features[row, column]} at row {row}, column {column}"
                " isn't finite"
            )

    def __repr__(self):
        return (
            f"<Dataset {self.name!r}: {self.n} samples, "
            f"{self.d} features, {self.n_classes} classes>"
        )

    def __len__(self):
        return self.n

    @property
    def n(self):
        return self.features.shape[0]

    @property
    def d(self):
        return self.features.shape[1]

    @property
    def n_classes(self):
        return len(self.class_names)

    def class_counts(self):
        """How many samples fall in each class?"""
        return np.bincount(self.labels, minlength=self.n_classes)

    def encode_labels(self, strings):
        """
        Convert original label strings into class indices.
        """
        lookup = {c: i for i, c in enumerate(self.class_names)}
        try:
            return np.array([lookup[str(s)] for s in strings], dtype=int)
        except KeyError as e:
            raise LabelOutOfRange(f"unknown label {e.args[0]!r}")

    def decode_labels(self, indices):
        """
        Convert class indices back into the original label strings.
        """
        indices = np.asarray(indices, dtype=int)
        if np.any(indices < 0) or np.any(indices >= self.n_classes):
            raise LabelOutOfRange("class index outside [0, number of classes)")
        return [self.class_names[i] for i in indices]

    def subset(self, indices, name=None):
        """
        Create a new Dataset from some rows of this one.

        The class dictionary is kept whole, so class indices mean the
        same thing in the subset as they do here.
        """
        indices = np.asarray(indices, dtype=int)
        new = object.__new__(Dataset)
        new.name = name or self.name
        new.features = _frozen(self.features[indices], float)
        new.labels = _frozen(self.labels[indices], int)
        new.class_names = list(self.class_names)
        new.d_original = self.d_original
        new.source = self.source
        return new

    def with_features(self, features, name=None):
        """
        Create a new Dataset with the same labels but different features
        (for example, after scaling or dimensionality reduction).
        """
        new = self.subset(np.arange(self.n), name=name)
        if len(features) != self.n:
            raise LengthMismatch("replacement features must keep the row count")
        new.features = _frozen(features, float)
        return new


def _data_line_numbers(lines):
    """
    Which (1-based) lines of a file actually hold table rows?
    Blank lines and #-comments are skipped.
    """
    return [
        i + 1
        for i, line in enumerate(lines)
        if line.strip() and not line.lstrip().startswith("#")
    ]


def _find_ragged_line(lines, line_numbers, delimiter):
    """
    Locate the first row whose field count differs from the first row's.
    """
    counts = [len(lines[i - 1].split(delimiter)) for i in line_numbers]
    for i, c in zip(line_numbers, counts):
        if c != counts[0]:
            return i
    return line_numbers[0]


def load_csv(
    path, label_column=-1, header=False, name=None, delimiter=",", min_classes=2
):
    """
    Load a UCI-style CSV file into a Dataset.

    Labels are encoded to dense integers in order of first appearance.
    Rows with missing values are rejected (never imputed), and so are
    feature cells that can't be read as finite real numbers.

    Parameters
    ----------
    path : str
        The CSV file (UTF-8, comma-separated).
    label_column : int, str
        Which column holds the labels; an integer position (negative
        counts from the end, default -1 = last column), or a column
        name if the file has a header row.
    header : bool
        Does the first row hold column names?
    name : str
        An identifier for the dataset (defaults to the file's stem).
    delimiter : str
        The field separator.
    min_classes : int
        Refuse files with fewer distinct labels than this. Held-out
        test files may legitimately hold a single class.

    Returns
    -------
    dataset : Dataset
    """
    path = str(path)
    if os.path.exists(path) == False:
        raise DatasetFileNotFound(path)
    name = name or os.path.splitext(os.path.basename(path))[0]

    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    table_lines = _data_line_numbers(lines)
    line_numbers = table_lines[1:] if header else table_lines
    if len(line_numbers) == 0:
        raise EmptyDataset(f"{path} contains no data rows")

    # read every cell as text, so we can complain cell-by-cell
    read_kw = dict(
        format="csv" if header else "no_header",
        delimiter=delimiter,
        guess=False,
        fast_reader=False,
        converters={"*": [ascii.convert_numpy(str)]},
    )
    try:
        table = ascii.read([lines[i - 1] for i in table_lines], **read_kw)
    except InconsistentTableError as e:
        bad = _find_ragged_line(lines, line_numbers, delimiter)
        raise MalformedRow(bad, "wrong number of fields") from e

    colnames = table.colnames
    if isinstance(label_column, str):
        if label_column not in colnames:
            raise MalformedRow(
                1, f"label column {label_column!r} is not among {colnames}"
            )
        j_label = colnames.index(label_column)
    else:
        j_label = int(label_column) % len(colnames)
    feature_columns = [j for j in range(len(colnames)) if j != j_label]
    if len(feature_columns) == 0:
        raise MalformedRow(line_numbers[0], "no feature columns")

    def check_missing(j):
        mask = np.ma.getmaskarray(table[colnames[j]])
        if np.any(mask):
            row = int(np.flatnonzero(mask)[0])
            raise MalformedRow(
                line_numbers[row], f"missing value in column {j + 1}"
            )

    # pull out the labels
    check_missing(j_label)
    raw_labels = [str(x).strip() for x in table[colnames[j_label]]]
    class_names = list(dict.fromkeys(raw_labels))
    lookup = {c: i for i, c in enumerate(class_names)}
    labels = np.array([lookup[x] for x in raw_labels], dtype=int)

    # pull out the features, column by column
    features = np.zeros((len(table), len(feature_columns)))
    for k, j in enumerate(feature_columns):
        check_missing(j)
        text = np.array(table[colnames[j]], dtype=str)
        try:
            features[:, k] = text.astype(float)
        except ValueError:
            # find the exact cell that broke
            for row, value in enumerate(text):
                try:
                    float(value)
                except ValueError:
                    raise NonNumericFeature(line_numbers[row], j + 1, value)
        finite = np.isfinite(features[:, k])
        if np.all(finite) == False:
            row = int(np.flatnonzero(finite == False)[0])
            raise MalformedRow(
                line_numbers[row], f"non-finite value in column {j + 1}"
            )

    if len(class_names) < min_classes:
        raise SingleClassDataset(
            f"{path} has only one class ({class_names[0]!r}); nothing to classify"
        )

    return Dataset(
        name=name,
        features=features,
        labels=labels,
        class_names=class_names,
        d_original=features.shape[1],
        source=path,
    )


def write_csv(dataset, path):
    """
    Write a Dataset to a CSV file, features first and label last,
    with a header row (x1, x2, ..., label).

    Parameters
    ----------
    dataset : Dataset
        The data to write.
    path : str
        Where the CSV file should go.
    """
    table = Table()
    for i in range(dataset.d):
        table[f"x{i+1}"] = dataset.features[:, i]
    table["label"] = dataset.decode_labels(dataset.labels)
    table.write(path, format="ascii.csv", overwrite=True)
    return path
