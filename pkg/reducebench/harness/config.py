"""
Run configurations: which datasets, which reducers and classifiers,
how many seeded repetitions, and every algorithm's hyperparameters.

Configs are JSON documents (YAML works too, since JSON is a subset
of it) with a `schema_version` field. For example:

    {
      "schema_version": 1,
      "datasets": [{"name": "Seeds", "path": "seeds.csv", "label_column": -1}],
      "reducers": ["autoencoder", "nca"],
      "classifiers": ["knn", "enn", "svm"],
      "repetitions": 10,
      "base_seed": 0,
      "autoencoder": {"epochs": 500, "learning_rate": 0.05},
      "nca": {"max_iters": 200},
      "knn": {"k": 5},
      "enn": {"k": 5},
      "svm": {"C": 1.0, "tol": 0.001}
    }
"""

from ..imports import *
from ..reducers import AeTrainConfig, NcaConfig
from ..classifiers import SvmConfig
from ..datasets import load_csv
import yaml

__all__ = [
    "DatasetDescription",
    "RunConfig",
    "load_config",
    "template_config_path",
    "check_datasets",
    "reducer_names",
    "classifier_names",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1
reducer_names = ["none", "autoencoder", "nca"]
classifier_names = ["knn", "enn", "svm"]


@dataclass(frozen=True)
class DatasetDescription:
    """
    Where to find one dataset, and how to read it.
    """

    name: str
    path: str
    label_column: object = -1
    header: bool = False

    def load(self):
        """Load this dataset from its CSV file."""
        return load_csv(
            self.path, label_column=self.label_column, header=self.header, name=self.name
        )


def _block(cls, values, key, exclude=()):
    """Build a hyperparameter dataclass from a config block, rejecting unknown keys."""
    values = dict(values or {})
    allowed = [f.name for f in fields(cls) if f.name not in exclude]
    for k in values:
        if k not in allowed:
            raise ConfigError(f"unknown key {key}.{k} (allowed: {allowed})")
    try:
        return cls(**values)
    except TypeError as e:
        raise ConfigError(f"bad {key} block: {e}")


@dataclass(frozen=True)
class RunConfig:
    """
    Everything needed to run the benchmark pipeline.

    Repetition r uses the seed base_seed + r, for its split and for
    seeding whichever reducer it fits.
    """

    datasets: tuple = ()
    reducers: tuple = ("autoencoder", "nca")
    classifiers: tuple = ("knn", "enn", "svm")
    repetitions: int = 10
    base_seed: int = 0
    train_fraction: float = 0.9
    stratified: bool = True
    autoencoder: AeTrainConfig = AeTrainConfig()
    nca: NcaConfig = NcaConfig()
    knn_k: int = 5
    enn_k: int = 5
    svm: SvmConfig = SvmConfig()
    output_directory: str = "reducebench-results"
    threads: int = 0
    schema_version: int = SCHEMA_VERSION

    def validate(self, require_datasets=True):
        """
        Raise a ConfigError for the first problem found.

        Pass require_datasets=False for configs whose datasets
        are supplied in memory rather than from files.
        """
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError(
                f"schema_version {self.schema_version} isn't supported (expected {SCHEMA_VERSION})"
            )
        if require_datasets and len(self.datasets) == 0:
            raise ConfigError("datasets: at least one dataset is required")
        names = [d.name for d in self.datasets]
        if len(set(names)) != len(names):
            raise ConfigError(f"datasets: names must be unique, got {names}")
        for d in self.datasets:
            if not d.path:
                raise ConfigError(f"datasets: {d.name!r} has no path yet")
        for key, chosen, allowed in [
            ("reducers", self.reducers, reducer_names),
            ("classifiers", self.classifiers, classifier_names),
        ]:
            if len(chosen) == 0:
                raise ConfigError(f"{key}: choose at least one of {allowed}")
            for x in chosen:
                if x not in allowed:
                    raise ConfigError(f"{key}: unknown choice {x!r} (allowed: {allowed})")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be positive")
        if not (0 <= self.base_seed and self.base_seed + self.repetitions <= 2**64):
            raise ConfigError("base_seed + repetition must stay an unsigned 64-bit integer")
        if not (0 < self.train_fraction < 1):
            raise ConfigError("train_fraction must be in (0, 1)")
        for key, k in [("knn.k", self.knn_k), ("enn.k", self.enn_k)]:
            if k < 1:
                raise ConfigError(f"{key} must be positive")
        if self.nca.p is not None:
            raise ConfigError("nca.p is set by the harness (ceil(d / 2)); leave it out")
        if self.threads < 0:
            raise ConfigError("threads must be non-negative (0 = auto)")
        self.autoencoder.validate()
        self.nca.validate()
        self.svm.validate()
        return self

    def repetition_seeds(self):
        """The seed used by each repetition."""
        return [self.base_seed + r for r in range(self.repetitions)]

    @classmethod
    def from_dict(cls, values, base_directory=None):
        """
        Build (and validate) a RunConfig from a parsed config document.

        Parameters
        ----------
        values : dict
            The parsed JSON.
        base_directory : str
            Relative dataset paths are taken relative to this
            (usually the directory holding the config file).
        """
        if not isinstance(values, dict):
            raise ConfigError("a config must be a JSON object")
        values = dict(values)
        allowed = [
            "schema_version",
            "datasets",
            "reducers",
            "classifiers",
            "repetitions",
            "base_seed",
            "train_fraction",
            "stratified",
            "output_directory",
            "threads",
            "autoencoder",
            "nca",
            "knn",
            "enn",
            "svm",
        ]
        for k in values:
            if k not in allowed:
                raise ConfigError(f"unknown key {k!r} (allowed: {allowed})")

        datasets = []
        for i, d in enumerate(values.pop("datasets", []) or []):
            d = _block(DatasetDescription, d, f"datasets[{i}]")
            path = d.path
            if path and base_directory and os.path.isabs(path) == False:
                path = os.path.join(base_directory, path)
            datasets.append(replace(d, path=path))

        kw = dict(datasets=tuple(datasets))
        for k in ["reducers", "classifiers"]:
            if k in values:
                kw[k] = tuple(values.pop(k))
        kw["autoencoder"] = _block(AeTrainConfig, values.pop("autoencoder", None), "autoencoder")
        kw["nca"] = _block(NcaConfig, values.pop("nca", None), "nca", exclude=["p"])
        kw["svm"] = _block(SvmConfig, values.pop("svm", None), "svm")
        for k in ["knn", "enn"]:
            block = values.pop(k, None) or {}
            for key in block:
                if key != "k":
                    raise ConfigError(f"unknown key {k}.{key} (allowed: ['k'])")
            if "k" in block:
                kw[f"{k}_k"] = int(block["k"])
        kw.update(values)
        try:
            return cls(**kw).validate()
        except TypeError as e:
            raise ConfigError(f"a config value has the wrong type: {e}")

    def to_dict(self):
        """The config as a JSON-ready dictionary (as echoed in report.json)."""
        return dict(
            schema_version=self.schema_version,
            datasets=[asdict(d) for d in self.datasets],
            reducers=list(self.reducers),
            classifiers=list(self.classifiers),
            repetitions=self.repetitions,
            base_seed=self.base_seed,
            train_fraction=self.train_fraction,
            stratified=self.stratified,
            output_directory=self.output_directory,
            threads=self.threads,
            autoencoder=asdict(self.autoencoder),
            nca={k: v for k, v in asdict(self.nca).items() if k != "p"},
            knn=dict(k=self.knn_k),
            enn=dict(k=self.enn_k),
            svm=asdict(self.svm),
        )


def load_config(path):
    """
    Read a RunConfig from a JSON (or YAML) file.
    """
    path = str(path)
    if os.path.exists(path) == False:
        raise ConfigError(f"config file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            values = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"{path} is not valid JSON/YAML: {e}")
    return RunConfig.from_dict(values, base_directory=os.path.dirname(os.path.abspath(path)))


def template_config_path():
    """
    The path of the shipped template listing the nine UCI datasets
    (with their paths left blank, to be filled in after downloading).
    """
    return str(data_directory / "uci-nine.json")


def check_datasets(config):
    """
    Load every dataset a config mentions, raising the first problem found.

    Returns
    -------
    datasets : list of Dataset
    """
    return [d.load() for d in config.datasets]
