"""
Versioned JSON records for trained models.

Each model class defines `to_record()` and a `from_record()` classmethod,
and registers itself here by kind, so that `load_record` can rebuild
whatever was saved. Arrays are stored as nested lists of Python
floats; JSON writes floats with their shortest round-tripping repr,
so parameters come back bit-for-bit.
"""

from .imports import *

__all__ = ["register_record", "save_record", "load_record", "check_record"]

RECORD_VERSION = 1

_registry = {}


def register_record(kind):
    """
    Class decorator registering a model class under a record `kind`.
    """

    def decorator(cls):
        cls.record_kind = kind
        _registry[kind] = cls
        return cls

    return decorator


def check_record(record, kind):
    """
    Make sure a record dictionary has the expected kind and version.
    """
    if record.get("kind") != kind:
        raise RecordError(f"expected a {kind!r} record, got {record.get('kind')!r}")
    if record.get("version") != RECORD_VERSION:
        raise RecordError(
            f"unsupported {kind} record version {record.get('version')!r}"
        )


def save_record(model, path):
    """
    Write a model's record to a JSON file.

    Parameters
    ----------
    model : object
        Anything with a `to_record()` method.
    path : str
        Where the JSON should go.
    """
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model.to_record(), f, indent=1)
    return path


def load_record(path):
    """
    Rebuild a model from a JSON record written by `save_record`.
    """
    with open(path, "r", encoding="utf-8") as f:
        record = json.load(f)
    try:
        cls = _registry[record["kind"]]
    except (KeyError, TypeError):
        raise RecordError(f"{path} does not hold a known model record")
    return cls.from_record(record)
