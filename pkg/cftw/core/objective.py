#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Objective, Weiszfeld map and the quantities used by its convergence analysis
"""

import numpy as np

from cftw.core.data import ProblemInstance
from cftw.core.errors import AnchorProximityError, CollinearInstanceError
from cftw.core.vector import Vector, as_points, pointmethod

ETA_ANCHOR = 1e-12


def _distances(instance: ProblemInstance, x: Vector) -> np.ndarray:
    return np.linalg.norm(instance.anchors - x, axis=1)


def _checked_distances(instance: ProblemInstance, x: Vector, eta_anchor: float) -> np.ndarray:
    distances = _distances(instance, x)
    j = int(distances.argmin())
    if distances[j] < eta_anchor:
        raise AnchorProximityError(
            f"Point lies {distances[j]:.3g} from anchor {j} (eta_anchor={eta_anchor:.3g})"
        )
    return distances


@pointmethod("x")
def evaluate_objective(instance: ProblemInstance, x: Vector) -> float:
    """
    f(x) = sum_i w_i ||x - a_i||. The constraint is ignored: feasibility is
    reported separately.
    """
    return float(instance.weights @ _distances(instance, x))


def evaluate_objective_batch(instance: ProblemInstance, points) -> np.ndarray:
    """
    f at each row of a (k, n) array
    """

    points = as_points(points, dim=instance.dim)
    distances = np.linalg.norm(points[:, None, :] - instance.anchors[None, :, :], axis=2)

    return distances @ instance.weights


@pointmethod("x")
def weiszfeld_map(instance: ProblemInstance, x: Vector, eta_anchor: float = ETA_ANCHOR) -> Vector:
    """
    T(x): the weighted mean of the anchors with weights w_i / ||x - a_i||, or
    a_j itself when x is within `eta_anchor` of a_j
    """

    distances = _distances(instance, x)
    j = int(distances.argmin())

    if distances[j] < eta_anchor:
        return instance.anchors[j].copy()

    coefficients = instance.weights / distances

    return coefficients @ instance.anchors / coefficients.sum()


@pointmethod("x")
def lipschitz_weight(instance: ProblemInstance, x: Vector, eta_anchor: float = ETA_ANCHOR) -> float:
    """
    L(x) = sum_i w_i / ||x - a_i||
    """

    distances = _checked_distances(instance, x, eta_anchor)

    return float((instance.weights / distances).sum())


@pointmethod("x", "x_ref")
def auxiliary_value(
    instance: ProblemInstance, x: Vector, x_ref: Vector, eta_anchor: float = ETA_ANCHOR
) -> float:
    """
    Quadratic surrogate h(x, x_ref) = sum_i w_i ||x - a_i||^2 / ||x_ref - a_i||.

    h(x_ref, x_ref) = f(x_ref) and h(x, x_ref) >= 2 f(x) - f(x_ref).
    """

    reference = _checked_distances(instance, x_ref, eta_anchor)
    squared = np.sum((instance.anchors - x) ** 2, axis=1)

    return float(instance.weights @ (squared / reference))


def anchor_resultant(instance: ProblemInstance, j: int) -> Vector:
    """
    R_j = sum_{i != j} w_i (a_j - a_i) / ||a_j - a_i||: the gradient at a_j of
    all objective terms but the j-th
    """

    if not 0 <= j < instance.m:
        raise IndexError(f"Anchor index {j} out of range for {instance.m} anchors")

    differences = np.delete(instance.anchors[j] - instance.anchors, j, axis=0)
    weights = np.delete(instance.weights, j)
    units = differences / np.linalg.norm(differences, axis=1)[:, None]

    return weights @ units


def collinear_median(instance: ProblemInstance) -> int:
    """
    Index of the weighted-median anchor along the common line of collinear
    anchors: it minimizes the unconstrained objective.
    """

    if not instance.collinear:
        raise CollinearInstanceError("Anchors are not collinear: no line median")

    differences = instance.anchors - instance.anchors[0]
    lengths = np.linalg.norm(differences, axis=1)
    direction = differences[lengths.argmax()] / lengths.max()

    order = np.argsort(differences @ direction, kind="stable")
    cumulative = np.cumsum(instance.weights[order])
    position = int(np.searchsorted(cumulative, 0.5 * cumulative[-1]))

    return int(order[position])
