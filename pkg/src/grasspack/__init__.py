"""Packings of subspaces in Grassmannian spaces."""

from . import binocular, bounds, catalog, clifford, errors, gpack, kernels, optimizer
from .bounds import certify, orthoplex_bound, simplex_bound
from .core import *  # noqa: F401,F403
from .errors import GrassError
from .optimizer import OptimizerConfig, OptimizeResult, optimize

__version__ = "0.1.0"
