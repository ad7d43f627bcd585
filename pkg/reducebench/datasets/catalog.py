"""
The nine UCI datasets the benchmark was designed around.

Nothing here downloads anything: these descriptions only fill in the
config template, so users know which files to fetch by hand and
how wide each one should be.
"""

__all__ = ["UCI_DATASETS"]

# name : (samples, features, classes, notes)
UCI_DATASETS = {
    "CNAE9": dict(n=1080, d=856, classes=9, notes="label is the first column"),
    "Movement_libras": dict(n=360, d=90, classes=15, notes="label is the last column"),
    "Pima-indians-diabetes": dict(n=768, d=8, classes=2, notes=""),
    "Parkinsons": dict(
        n=195, d=22, classes=2, notes="drop the 'name' column; label is 'status'"
    ),
    "Knowledge": dict(
        n=403, d=5, classes=4, notes="User Knowledge Modeling; label is 'UNS'"
    ),
    "Segmentation": dict(n=2310, d=19, classes=7, notes="label is the first column"),
    "Seeds": dict(n=210, d=7, classes=3, notes="whitespace-separated upstream"),
    "Mammographic_masses": dict(
        n=961, d=5, classes=2, notes="rows with '?' are rejected, not imputed"
    ),
    "Ionosphere": dict(n=351, d=34, classes=2, notes=""),
}
