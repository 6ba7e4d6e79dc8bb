"""Common type definitions."""
import pathlib
from typing import Callable, Union

import numpy as np
import numpy.typing as npt

__all__ = [
    "ComplexLike",
    "ArrayLike",
    "types_path_like",
    "RealFunction",
    "ComplexFunction",
]

ComplexLike = Union[complex, float, int, np.complexfloating, np.floating]
"""Scalar types accepted wherever a `ComplexValue` is expected."""

ArrayLike = npt.ArrayLike

types_path_like = Union[str, pathlib.Path]
"""types defining a path to a file/directory and can be passed to `open`."""

RealFunction = Callable[[float], float]
ComplexFunction = Callable[[float], complex]
