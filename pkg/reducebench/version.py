__version__ = "0.1.0"


def version():
    return __version__


# find and replace these if building another package off this one!
pypi_name = "reducebench"
import_name = "reducebench"
