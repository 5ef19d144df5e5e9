#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Closed Euclidean ball
"""

import numpy as np

from cftw.core.vector import as_vector
from cftw.sets.base import BaseConstraintSet, ConstraintTypes, ray_distance


class Ball(BaseConstraintSet):
    """
    C = {x : ||x - center|| <= radius}
    """

    type = ConstraintTypes.BALL

    def __init__(self, center, radius: float):
        center = as_vector(center, name="center")
        super().__init__(dim=center.size)

        radius = float(radius)
        if not np.isfinite(radius) or radius <= 0:
            raise ValueError(f"Ball radius must be positive, got {radius}")

        self.center = center
        self.radius = radius

    def _project(self, points: np.ndarray) -> np.ndarray:
        offsets = points - self.center
        norms = np.linalg.norm(offsets, axis=1)
        scale = np.ones_like(norms)
        outside = norms > self.radius
        scale[outside] = self.radius / norms[outside]
        return self.center + offsets * scale[:, None]

    def _normal_cone_distance(self, x, v, tol):
        offset = x - self.center
        if abs(np.linalg.norm(offset) - self.radius) > tol:
            return np.linalg.norm(v)
        # boundary: outward radial ray
        return ray_distance(v, offset)

    def extreme_points(self, x=None) -> np.ndarray:
        axes = self.radius * np.eye(self.dim)
        return np.vstack([self.center + axes, self.center - axes])

    def params(self) -> dict:
        return {"center": self.center.tolist(), "radius": self.radius}

    @classmethod
    def from_params(cls, dim: int, params: dict) -> "Ball":
        ball = cls(center=params["center"], radius=params["radius"])
        assert ball.dim == dim, f"Ball center has dimension {ball.dim}, expected {dim}"
        return ball
