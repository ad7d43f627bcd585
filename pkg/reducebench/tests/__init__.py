from .test_imports import *
from .test_datasets import *
from .test_autoencoder import *
from .test_nca import *
from .test_classifiers import *
from .test_metrics import *
from .test_records import *
from .test_harness import *
from .test_visualizations import *
