#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Problem data: anchors and weights, constrained instances, solver tolerances
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np
from loguru import logger

from cftw.core.errors import DimensionError
from cftw.core.vector import as_points
from cftw.utils import AbstractConfig

if TYPE_CHECKING:
    from cftw.sets.base import BaseConstraintSet

COLLINEAR_TOL = 1e-10


def check_collinear(anchors, tol: float = COLLINEAR_TOL) -> bool:
    """
    True iff all a_i - a_1 lie (up to relative residual `tol`) on one line.

    The longest difference vector is the first direction; any difference whose
    component orthogonal to it exceeds `tol` times that length spans a second one.
    """

    points = as_points(anchors, name="anchors")

    assert points.shape[0] >= 2, "Need at least two anchors"

    differences = points[1:] - points[0]
    lengths = np.linalg.norm(differences, axis=1)
    scale = lengths.max()

    if scale == 0.0:
        return True

    direction = differences[lengths.argmax()] / scale
    residuals = differences - np.outer(differences @ direction, direction)

    return bool(np.linalg.norm(residuals, axis=1).max() <= tol * scale)


def _freeze(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class AnchorSet:
    """Anchors a_1..a_m (rows) with positive weights w_1..w_m"""

    anchors: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        anchors = as_points(self.anchors, name="anchors")
        weights = np.asarray(self.weights, dtype=np.float64)

        if weights.ndim != 1 or weights.size != anchors.shape[0]:
            raise DimensionError(
                f"Got {anchors.shape[0]} anchors but {weights.size} weights"
            )

        if anchors.shape[0] < 2:
            raise ValueError("The location problem needs at least two anchors")

        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise ValueError(f"Weights must be finite and positive, got {weights}")

        if np.unique(anchors, axis=0).shape[0] != anchors.shape[0]:
            raise ValueError("Anchors must be pairwise distinct: use `AnchorSet.create`")

        object.__setattr__(self, "anchors", _freeze(anchors))
        object.__setattr__(self, "weights", _freeze(weights))

    @classmethod
    def create(cls, anchors: Sequence, weights: Sequence) -> "AnchorSet":
        """
        Build an anchor set merging coincident anchors (their weights are summed,
        which leaves the objective unchanged)
        """

        anchors = as_points(anchors, name="anchors")
        weights = np.asarray(weights, dtype=np.float64)

        if weights.ndim != 1 or weights.size != anchors.shape[0]:
            raise DimensionError(
                f"Got {anchors.shape[0]} anchors but {weights.size} weights"
            )

        unique, first, inverse = np.unique(
            anchors, axis=0, return_index=True, return_inverse=True
        )
        inverse = np.asarray(inverse).reshape(-1)

        if unique.shape[0] == anchors.shape[0]:
            return cls(anchors=anchors, weights=weights)

        # keep first-occurrence order
        order = np.argsort(first)
        rank = np.empty_like(order)
        rank[order] = np.arange(order.size)
        merged_weights = np.zeros(unique.shape[0])
        np.add.at(merged_weights, rank[inverse], weights)

        logger.debug(
            "Merged {} coincident anchors ({} -> {})",
            anchors.shape[0] - unique.shape[0],
            anchors.shape[0],
            unique.shape[0],
        )

        return cls(anchors=unique[order], weights=merged_weights)

    @property
    def dim(self) -> int:
        return self.anchors.shape[1]

    def __len__(self) -> int:
        return self.anchors.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AnchorSet)
            and np.array_equal(self.anchors, other.anchors)
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """
    Constrained location problem: minimize sum_i w_i ||x - a_i|| over x in C
    """

    anchor_set: AnchorSet
    constraint: "BaseConstraintSet"
    collinear: bool = field(init=False)

    def __post_init__(self):
        if self.constraint.dim != self.anchor_set.dim:
            raise DimensionError(
                f"Constraint has dimension {self.constraint.dim}, anchors have {self.anchor_set.dim}"
            )
        object.__setattr__(self, "collinear", check_collinear(self.anchor_set.anchors))

    @classmethod
    def create(
        cls, anchors: Sequence, weights: Sequence, constraint: "BaseConstraintSet"
    ) -> "ProblemInstance":
        """
        Shortcut from raw anchors and weights
        """
        return cls(anchor_set=AnchorSet.create(anchors, weights), constraint=constraint)

    def with_anchors(self, anchors: np.ndarray) -> "ProblemInstance":
        """
        Same weights and constraint, different anchor positions
        """
        return type(self).create(anchors, self.weights, self.constraint)

    @property
    def anchors(self) -> np.ndarray:
        return self.anchor_set.anchors

    @property
    def weights(self) -> np.ndarray:
        return self.anchor_set.weights

    @property
    def dim(self) -> int:
        return self.anchor_set.dim

    @property
    def m(self) -> int:
        return len(self.anchor_set)

    def weighted_mean(self) -> np.ndarray:
        """
        Weighted centroid of the anchors
        """
        return self.weights @ self.anchors / self.weights.sum()

    def nearest_anchor(self, x: np.ndarray) -> tuple[int, float]:
        """
        Index of and distance to the anchor closest to `x`
        """
        distances = np.linalg.norm(self.anchors - x, axis=1)
        j = int(distances.argmin())
        return j, float(distances[j])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProblemInstance)
            and self.anchor_set == other.anchor_set
            and self.constraint == other.constraint
        )


class Tolerances(AbstractConfig):
    """
    Solver tolerances
    """

    epsilon: float = 1e-8
    eta_anchor: float = 1e-12
    max_iter: int = 10000
    delta_escape: float = 1e-6
    snap_radius: float = 1e-6

    def __init__(
        self,
        epsilon: Optional[float] = None,
        eta_anchor: Optional[float] = None,
        max_iter: Optional[int] = None,
        delta_escape: Optional[float] = None,
        snap_radius: Optional[float] = None,
    ):
        self._set(
            epsilon=None if epsilon is None else float(epsilon),
            eta_anchor=None if eta_anchor is None else float(eta_anchor),
            max_iter=None if max_iter is None else int(max_iter),
            delta_escape=None if delta_escape is None else float(delta_escape),
            snap_radius=None if snap_radius is None else float(snap_radius),
        )

    def sanity_check(self):
        for key in ["epsilon", "eta_anchor", "delta_escape", "snap_radius"]:
            value = getattr(self, key)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"Tolerance `{key}` must be positive, got {value}")

        if self.max_iter < 1:
            raise ValueError(f"`max_iter` must be a positive integer, got {self.max_iter}")
