"""
The exceptions and warnings raised anywhere in reducebench.

Every error is a ReduceBenchError (which is itself a ValueError),
so callers can catch the whole family at once, and structured
details (line numbers, class indices, ...) ride along as attributes.
"""

__all__ = [
    "ReduceBenchError",
    "DatasetFileNotFound",
    "MalformedRow",
    "NonNumericFeature",
    "EmptyDataset",
    "SingleClass",
    "SingleClassDataset",
    "DimensionMismatch",
    "ClassTooSmall",
    "InvalidCodeDim",
    "NonFiniteLoss",
    "DegenerateInput",
    "InvalidTargetDim",
    "KTooLarge",
    "EmptyClass",
    "ModelUntrained",
    "LengthMismatch",
    "LabelOutOfRange",
    "EmptyMatrix",
    "ConfigError",
    "RecordError",
    "IoError",
    "PipelineError",
    "ConvergenceWarning",
    "check_width",
]


class ReduceBenchError(ValueError):
    pass


class DatasetFileNotFound(ReduceBenchError, FileNotFoundError):
    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"dataset file not found: {self.path}")


class MalformedRow(ReduceBenchError):
    def __init__(self, line, reason="malformed row"):
        self.line = line
        super().__init__(f"{reason} (line {line})")


class NonNumericFeature(ReduceBenchError):
    def __init__(self, line, column, value=None):
        self.line = line
        self.column = column
        self.value = value
        super().__init__(
            f"non-numeric feature {value!r} at line {line}, column {column}"
        )


class EmptyDataset(ReduceBenchError):
    pass


class SingleClass(ReduceBenchError):
    pass


class SingleClassDataset(SingleClass):
    pass


class DimensionMismatch(ReduceBenchError):
    pass


class ClassTooSmall(ReduceBenchError):
    def __init__(self, class_index, count):
        self.class_index = class_index
        self.count = count
        super().__init__(
            f"class {class_index} has only {count} sample(s); stratified splits need at least 2"
        )


class InvalidCodeDim(ReduceBenchError):
    pass


class NonFiniteLoss(ReduceBenchError):
    def __init__(self, epoch):
        self.epoch = epoch
        super().__init__(
            f"reconstruction error became non-finite at epoch {epoch}; try a smaller learning rate"
        )


class DegenerateInput(ReduceBenchError):
    pass


class InvalidTargetDim(ReduceBenchError):
    pass


class KTooLarge(ReduceBenchError):
    pass


class EmptyClass(ReduceBenchError):
    pass


class ModelUntrained(ReduceBenchError):
    pass


class LengthMismatch(ReduceBenchError):
    pass


class LabelOutOfRange(ReduceBenchError):
    pass


class EmptyMatrix(ReduceBenchError):
    pass


class ConfigError(ReduceBenchError):
    pass


class RecordError(ReduceBenchError):
    pass


class IoError(ReduceBenchError, OSError):
    pass


class PipelineError(ReduceBenchError):
    """
    A module error, annotated with the cell it happened in.
    """

    def __init__(self, original, dataset=None, reducer=None, classifier=None, seed=None):
        self.original = original
        self.dataset = dataset
        self.reducer = reducer
        self.classifier = classifier
        self.seed = seed
        where = ", ".join(
            f"{k}={v}"
            for k, v in dict(
                dataset=dataset, reducer=reducer, classifier=classifier, seed=seed
            ).items()
            if v is not None
        )
        super().__init__(f"{type(original).__name__}: {original} [{where}]")


class ConvergenceWarning(UserWarning):
    pass


def check_width(array, width, what="input"):
    """
    Raise DimensionMismatch unless the last axis of `array` has `width` entries.
    """
    actual = array.shape[-1] if array.ndim > 0 else 0
    if actual != width:
        raise DimensionMismatch(f"{what} has width {actual}, expected {width}")
