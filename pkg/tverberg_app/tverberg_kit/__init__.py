"""Exact Tverberg / van Kampen-Flores toolkit.

Importing the package pulls in only the exact core; the finders, the
reduction and the document layer live in their subpackages.
"""
from tverberg_kit.core import *  # noqa: F401,F403
from tverberg_kit.core import __all__ as _core_all

__version__ = "0.1.0"

__all__ = list(_core_all) + ["__version__"]
