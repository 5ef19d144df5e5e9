#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Unconstrained problem: C is the whole space
"""

import numpy as np

from cftw.sets.base import BaseConstraintSet, ConstraintTypes


class FreeSet(BaseConstraintSet):
    """
    C = R^n, N(x, C) = {0}
    """

    type = ConstraintTypes.FREE

    def _project(self, points: np.ndarray) -> np.ndarray:
        return points.copy()

    def _normal_cone_distance(self, x, v, tol):
        return np.linalg.norm(v)

    def params(self) -> dict:
        return {}

    @classmethod
    def from_params(cls, dim: int, params: dict) -> "FreeSet":
        return cls(dim=dim)
