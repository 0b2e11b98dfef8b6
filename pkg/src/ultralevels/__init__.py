"""Levels of the Omega function, lazy set descriptors and ultrafilter bases
for tilde-divisibility experiments."""

from ._backend import NAME as BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
