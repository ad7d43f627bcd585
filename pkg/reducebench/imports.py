# imports that are needed by many reducebench subsections
import os, sys, time, json, warnings, copy, glob, math
from dataclasses import dataclass, field, asdict, replace, fields
from tqdm import tqdm

# (possibly different on Mac, Linux, Windows, even for Python versions 3.8-3.12)
try:
    from importlib.resources import files
except (ModuleNotFoundError, AttributeError, ImportError):
    from importlib_resources import files

from .version import import_name

code_directory = files(import_name)
data_directory = code_directory / "data"

import numpy as np, matplotlib.pyplot as plt

from astropy.io import ascii
from astropy.table import Table, Column, vstack
from astropy.io.ascii import InconsistentTableError

# some general custom utilities
from .talker import Talker
from .errors import *


def mkdir(path):
    """A mkdir that doesn't complain if the directory already exists."""
    os.makedirs(path, exist_ok=True)


def make_rng(seed):
    """
    Create the seeded generator that all randomness flows from.

    Every random draw in reducebench comes from a numpy PCG64
    bit generator, so "same seed, same numbers" holds on any
    platform running the same numpy release.

    Parameters
    ----------
    seed : int
        A non-negative integer, less than 2**64.

    Returns
    -------
    rng : numpy.random.Generator
    """
    seed = int(seed)
    if seed < 0 or seed >= 2**64:
        raise ConfigError(f"seeds must be unsigned 64-bit integers, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def fisher_yates(values, rng):
    """
    Shuffle a copy of `values` with a plain Fisher-Yates pass.

    For i from len-1 down to 1, draw j uniformly from [0, i]
    with `rng.integers(0, i + 1)` and swap entries i and j.
    Written out explicitly (rather than `rng.permutation`) so the
    order of draws is pinned down in the documentation.
    """
    shuffled = np.array(values, copy=True)
    for i in range(len(shuffled) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        shuffled[i], shuffled[j] = shuffled[j], shuffled[i]
    return shuffled


def half_dimension(d):
    """The reduced width used everywhere: ceil(d / 2)."""
    return int(math.ceil(d / 2))


def threads_from_environment():
    """
    How many cells may run at once?

    Reads REDUCEBENCH_THREADS; 0, unset, or unparseable means
    "use every available core".
    """
    try:
        threads = int(os.getenv("REDUCEBENCH_THREADS", "0"))
    except ValueError:
        threads = 0
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads
