#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Scaled probability simplex
"""

import numpy as np

from cftw.sets.base import BaseConstraintSet, ConstraintTypes


class Simplex(BaseConstraintSet):
    """
    C = {x : x >= 0, sum(x) = scale}
    """

    type = ConstraintTypes.SIMPLEX

    def __init__(self, dim: int, scale: float = 1.0):
        super().__init__(dim=dim)

        scale = float(scale)
        if not np.isfinite(scale) or scale <= 0:
            raise ValueError(f"Simplex scale must be positive, got {scale}")

        self.scale = scale

    def _project(self, points: np.ndarray) -> np.ndarray:
        # sort-based threshold
        descending = np.sort(points, axis=1)[:, ::-1]
        cssv = np.cumsum(descending, axis=1) - self.scale
        ind = np.arange(1, self.dim + 1)
        rho = np.count_nonzero(descending - cssv / ind > 0, axis=1)
        theta = cssv[np.arange(points.shape[0]), rho - 1] / rho
        return np.maximum(points - theta[:, None], 0.0)

    def _normal_cone_distance(self, x, v, tol):
        # N(x) = {mu * 1 - nu : nu >= 0 supported on the zero coordinates of x}.
        # For fixed mu the distance is explicit; the optimal mu averages v over the
        # positive support plus the zero coordinates with v_i > mu, i.e. a prefix
        # of the zero coordinates sorted by v.
        zero = x <= tol
        positive = v[~zero]
        candidates = np.sort(v[zero])[::-1]

        best = np.inf
        for k in range(candidates.size + 1):
            free = np.concatenate([positive, candidates[:k]])
            if free.size == 0:
                continue
            mu = free.mean()
            value = np.sum((positive - mu) ** 2) + np.sum(np.maximum(candidates - mu, 0.0) ** 2)
            best = min(best, value)

        return np.sqrt(best)

    def extreme_points(self, x=None) -> np.ndarray:
        return self.scale * np.eye(self.dim)

    def params(self) -> dict:
        return {"scale": self.scale}

    @classmethod
    def from_params(cls, dim: int, params: dict) -> "Simplex":
        return cls(dim=dim, scale=params.get("scale", 1.0))
