from .config import *
from .pipeline import *
from .reports import *
from .cli import *
