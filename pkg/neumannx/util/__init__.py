"""Contains utility functions and classes."""

from .util import *
from .util import __all__ as _util_all
from .workers import *
from .workers import __all__ as _util_workers

__all__ = _util_all + _util_workers
del _util_all, _util_workers

_patch_mod_all("neumannx.util")  # noqa
