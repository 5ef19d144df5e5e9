#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Base interface to closed convex constraint sets
"""

from abc import ABCMeta, abstractmethod
from typing import Optional, Union

import numpy as np

from cftw.core.errors import DimensionError, InfeasiblePointError
from cftw.core.vector import Vector, as_points, as_vector
from cftw.utils import StrEnum

MEMBERSHIP_TOL = 1e-9


class ConstraintTypes(StrEnum):
    """
    Catalog of constraint sets
    """

    FREE = "free"
    BALL = "ball"
    BOX = "box"
    HALFSPACE = "halfspace"
    HYPERPLANE = "hyperplane"
    ORTHANT = "orthant"
    SIMPLEX = "simplex"


class BaseConstraintSet(metaclass=ABCMeta):
    """
    Nonempty closed convex set C with exact projection and normal cone geometry
    """

    type: ConstraintTypes

    def __init__(self, dim: int):
        if int(dim) < 1:
            raise ValueError(f"Dimension must be a positive integer, got {dim}")
        self._dim = int(dim)

    @property
    def dim(self) -> int:
        """
        Ambient dimension
        """
        return self._dim

    @property
    def name(self) -> str:
        """
        Shortcut to class name
        """
        return self.__class__.__name__

    @abstractmethod
    def _project(self, points: np.ndarray) -> np.ndarray:
        """
        Project each row of a (k, n) array
        """

    @abstractmethod
    def _normal_cone_distance(self, x: Vector, v: Vector, tol: float) -> float:
        """
        dist(v, N(x, C)) for a feasible x
        """

    @abstractmethod
    def params(self) -> dict:
        """
        JSON-ready parameters (without type and dimension)
        """

    @classmethod
    @abstractmethod
    def from_params(cls, dim: int, params: dict) -> "BaseConstraintSet":
        """
        Inverse of `params`
        """

    def project(self, x) -> np.ndarray:
        """
        Pi_C(x) for a point (n,) or for each row of a (k, n) array
        """

        array = np.asarray(x, dtype=np.float64)

        if array.ndim == 1:
            return self._project(as_vector(array, dim=self.dim)[None, :])[0]

        return self._project(as_points(array, dim=self.dim))

    def distance(self, x) -> Union[float, np.ndarray]:
        """
        Distance to C of a point, or of each row
        """

        array = np.asarray(x, dtype=np.float64)
        distances = np.linalg.norm(array - self.project(array), axis=-1)

        return float(distances) if array.ndim == 1 else distances

    def contains(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        """
        x in C up to `tol` (finite stand-in for the indicator I_C)
        """
        return bool(self.distance(as_vector(x, dim=self.dim)) <= tol)

    def feasible_mask(self, points, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
        """
        Row-wise membership of a (k, n) array
        """
        return self.distance(as_points(points, dim=self.dim)) <= tol

    def normal_cone_distance(self, x, v, tol: float = MEMBERSHIP_TOL) -> float:
        """
        Euclidean distance from `v` to the normal cone N(x, C)
        """

        x = as_vector(x, dim=self.dim, name="x")
        v = as_vector(v, dim=self.dim, name="v")

        if not self.contains(x, tol):
            raise InfeasiblePointError(
                f"Normal cone of {self.name} requested at a point {self.distance(x):.3g} away from it"
            )

        return float(self._normal_cone_distance(x, v, tol))

    def sample(
        self,
        rng: np.random.Generator,
        count: int,
        center,
        radius: float = 1.0,
    ) -> np.ndarray:
        """
        Feasible points: projections of Gaussian draws around `center`
        """

        center = as_vector(center, dim=self.dim, name="center")
        draws = center + radius * rng.standard_normal((count, self.dim))

        return self._project(draws)

    def extreme_points(self, x: Optional[Vector] = None) -> np.ndarray:
        """
        Feasible points along the extreme directions of C seen from `x`
        """
        return np.empty((0, self.dim))

    def to_dict(self) -> dict:
        """
        Serialize (instance document `constraint` block)
        """
        return {"type": str(self.type), **self.params()}

    def _check_dim(self, array: np.ndarray, name: str):
        if array.shape != (self.dim,):
            raise DimensionError(f"`{name}` must have dimension {self.dim}, got {array.shape}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BaseConstraintSet)
            and self.dim == other.dim
            and self.to_dict() == other.to_dict()
        )

    def __hash__(self):
        return hash((self.dim, str(self.to_dict())))

    def __repr__(self) -> str:
        return f"{self.name}(dim={self.dim}, {self.params()})"


def ray_distance(v: Vector, direction: Vector) -> float:
    """
    Distance from v to the ray {t * direction, t >= 0}
    """

    t = max(0.0, float(v @ direction) / float(direction @ direction))

    return float(np.linalg.norm(v - t * direction))
