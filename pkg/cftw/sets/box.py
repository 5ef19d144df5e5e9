#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Axis-aligned box
"""

import numpy as np

from cftw.core.vector import as_vector
from cftw.sets.base import BaseConstraintSet, ConstraintTypes


class Box(BaseConstraintSet):
    """
    C = {x : lower <= x <= upper} (componentwise)
    """

    type = ConstraintTypes.BOX

    def __init__(self, lower, upper):
        lower = as_vector(lower, name="lower")
        super().__init__(dim=lower.size)
        upper = as_vector(upper, name="upper")
        self._check_dim(upper, "upper")

        if np.any(lower > upper):
            raise ValueError(f"Box bounds must satisfy lower <= upper, got {lower} > {upper}")

        self.lower = lower
        self.upper = upper

    def _project(self, points: np.ndarray) -> np.ndarray:
        return np.clip(points, self.lower, self.upper)

    def _normal_cone_distance(self, x, v, tol):
        at_lower = x - self.lower <= tol
        at_upper = self.upper - x <= tol

        residual = v.copy()
        # N_i = (-inf, 0] at a lower bound, [0, inf) at an upper bound, R at both
        residual[at_lower] = np.maximum(v[at_lower], 0.0)
        residual[at_upper] = np.minimum(v[at_upper], 0.0)
        residual[at_lower & at_upper] = 0.0

        return np.linalg.norm(residual)

    def extreme_points(self, x=None) -> np.ndarray:
        base = (self.lower + self.upper) / 2 if x is None else self.project(x)
        points = []
        for i in range(self.dim):
            for bound in (self.lower[i], self.upper[i]):
                point = base.copy()
                point[i] = bound
                points.append(point)
        return np.asarray(points)

    def params(self) -> dict:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist()}

    @classmethod
    def from_params(cls, dim: int, params: dict) -> "Box":
        box = cls(lower=params["lower"], upper=params["upper"])
        assert box.dim == dim, f"Box bounds have dimension {box.dim}, expected {dim}"
        return box
