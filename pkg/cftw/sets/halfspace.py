#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Halfspaces and hyperplanes
"""

import numpy as np

from cftw.core.vector import as_vector
from cftw.sets.base import BaseConstraintSet, ConstraintTypes, ray_distance


class Halfspace(BaseConstraintSet):
    """
    C = {x : <normal, x> <= offset}
    """

    type = ConstraintTypes.HALFSPACE

    def __init__(self, normal, offset: float):
        normal = as_vector(normal, name="normal")
        super().__init__(dim=normal.size)

        if not np.linalg.norm(normal) > 0:
            raise ValueError("Normal vector must be nonzero")

        offset = float(offset)
        if not np.isfinite(offset):
            raise ValueError(f"Offset must be finite, got {offset}")

        self.normal = normal
        self.offset = offset
        self._normal_sq = float(normal @ normal)

    def _violation(self, points: np.ndarray) -> np.ndarray:
        return points @ self.normal - self.offset

    def _project(self, points: np.ndarray) -> np.ndarray:
        excess = np.maximum(self._violation(points), 0.0) / self._normal_sq
        return points - np.outer(excess, self.normal)

    def _normal_cone_distance(self, x, v, tol):
        if self._violation(x[None, :])[0] < -tol * np.sqrt(self._normal_sq):
            return np.linalg.norm(v)
        return ray_distance(v, self.normal)

    def params(self) -> dict:
        return {"normal": self.normal.tolist(), "offset": self.offset}

    @classmethod
    def from_params(cls, dim: int, params: dict) -> "Halfspace":
        halfspace = cls(normal=params["normal"], offset=params["offset"])
        assert halfspace.dim == dim, f"Normal has dimension {halfspace.dim}, expected {dim}"
        return halfspace


class Hyperplane(Halfspace):
    """
    C = {x : <normal, x> = offset}
    """

    type = ConstraintTypes.HYPERPLANE

    def _project(self, points: np.ndarray) -> np.ndarray:
        excess = self._violation(points) / self._normal_sq
        return points - np.outer(excess, self.normal)

    def _normal_cone_distance(self, x, v, tol):
        # N = span{normal}
        along = float(v @ self.normal) / self._normal_sq
        return np.linalg.norm(v - along * self.normal)
