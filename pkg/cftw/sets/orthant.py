#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Nonnegative orthant
"""

import numpy as np

from cftw.sets.base import BaseConstraintSet, ConstraintTypes


class NonnegativeOrthant(BaseConstraintSet):
    """
    C = {x : x >= 0}
    """

    type = ConstraintTypes.ORTHANT

    def _project(self, points: np.ndarray) -> np.ndarray:
        return np.maximum(points, 0.0)

    def _normal_cone_distance(self, x, v, tol):
        residual = v.copy()
        active = x <= tol
        # N_i = (-inf, 0] on active coordinates, {0} elsewhere
        residual[active] = np.maximum(v[active], 0.0)
        return np.linalg.norm(residual)

    def extreme_points(self, x=None) -> np.ndarray:
        base = np.zeros(self.dim) if x is None else self.project(x)
        reach = 1.0 + np.linalg.norm(base)
        faces = np.repeat(base[None, :], self.dim, axis=0)
        faces[np.arange(self.dim), np.arange(self.dim)] = 0.0
        rays = base + reach * np.eye(self.dim)
        return np.vstack([faces, rays])

    def params(self) -> dict:
        return {}

    @classmethod
    def from_params(cls, dim: int, params: dict) -> "NonnegativeOrthant":
        return cls(dim=dim)
