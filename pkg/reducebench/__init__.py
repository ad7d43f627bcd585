from .datasets import *
from .reducers import *
from .classifiers import *
from .metrics import *
from .harness import *
from .visualizations import *
from .records import *
from .imports import np, plt, data_directory
from .version import __version__, version
