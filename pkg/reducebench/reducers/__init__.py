from .autoencoder import *
from .nca import *
