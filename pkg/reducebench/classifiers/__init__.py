from .distances import *
from .knn import *
from .enn import *
from .svm import *
