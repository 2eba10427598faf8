"""Flexible cubic vertex-transitive graphs of girth 2l and their certificates."""

from ._backend import name as backend

__version__ = "0.1.0"

__all__ = ["backend", "__version__"]
