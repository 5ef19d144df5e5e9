#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Finite-dimensional points: coercion, validation and the `pointmethod` decorator
"""

import functools
import inspect
from typing import Optional, Sequence, Union

import numpy as np
import wrapt

from cftw.core.errors import DimensionError

Vector = np.ndarray

VectorLike = Union[Vector, Sequence[float]]


def as_vector(coords: VectorLike, dim: Optional[int] = None, name: str = "x") -> Vector:
    """
    Coerce `coords` to a finite float64 vector (of dimension `dim` if given)
    """

    x = np.asarray(coords, dtype=np.float64)

    if x.ndim != 1 or x.size < 1:
        raise DimensionError(f"`{name}` must be a non-empty 1-D vector, got shape {x.shape}")

    if dim is not None and x.size != dim:
        raise DimensionError(f"`{name}` has dimension {x.size}, expected {dim}")

    if not np.all(np.isfinite(x)):
        raise ValueError(f"`{name}` has non-finite entries: {x}")

    return x


def as_points(coords, dim: Optional[int] = None, name: str = "points") -> np.ndarray:
    """
    Coerce to a (k, n) float64 array of finite points
    """

    points = np.asarray(coords, dtype=np.float64)

    if points.ndim != 2 or points.shape[1] < 1:
        raise DimensionError(f"`{name}` must have shape (k, n), got {points.shape}")

    if dim is not None and points.shape[1] != dim:
        raise DimensionError(f"`{name}` has dimension {points.shape[1]}, expected {dim}")

    if not np.all(np.isfinite(points)):
        raise ValueError(f"`{name}` has non-finite entries")

    return points


@functools.lru_cache(maxsize=None)
def _parameter_names(func) -> tuple:
    return tuple(inspect.signature(func).parameters)


def pointmethod(*names: str):
    """
    Decorator for operations `op(instance, ...)`: coerce the arguments listed in
    `names` to vectors of `instance.dim`
    """

    @wrapt.decorator
    def wrapper(wrapped, instance, args, kwargs):  # pylint: disable=unused-argument
        assert len(args) > 0, f"`{wrapped.__name__}` expects the problem as first argument"

        dim = args[0].dim
        parameters = _parameter_names(wrapped)
        args = list(args)

        for name in names:
            position = parameters.index(name)
            if position < len(args):
                args[position] = as_vector(args[position], dim=dim, name=name)
            elif name in kwargs:
                kwargs[name] = as_vector(kwargs[name], dim=dim, name=name)

        return wrapped(*args, **kwargs)

    return wrapper
