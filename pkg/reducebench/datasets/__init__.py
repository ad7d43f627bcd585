from .dataset import *
from .scaling import *
from .splitting import *
from .catalog import *
from .synthetic import *
