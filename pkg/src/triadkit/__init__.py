"""Headless MVC pattern toolkit: six triad blueprints on an audited bus."""

from .mvc_core import *  # noqa: F401,F403
from .mvc_core import __all__ as _core_all

__version__ = "0.1.0"
__all__ = list(_core_all) + ["__version__"]
