#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Independent reference solvers: projected subgradient descent and 2-D grid search.
Used to validate the Weiszfeld iteration, never by it.
"""

import multiprocessing as mp
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from cftw.core import (ETA_ANCHOR, DimensionError, ProblemInstance, Vector,
                       anchor_resultant, evaluate_objective,
                       evaluate_objective_batch, pointmethod)
from cftw.solvers.weiszfeld import SolveResult, SolveStatus
from cftw.utils import AbstractConfig, chunkize_list


class OracleConfig(AbstractConfig):
    """
    Oracle parameters
    """

    step_scale: float = 0.5
    iterations: int = 20000
    # ((x_lo, x_hi), (y_lo, y_hi)); derived from the anchors if absent
    bounds: Optional[tuple] = None
    resolution: int = 401
    zooms: int = 3
    seed: int = 0

    def __init__(
        self,
        step_scale: Optional[float] = None,
        iterations: Optional[int] = None,
        bounds: Optional[Sequence] = None,
        resolution: Optional[int] = None,
        zooms: Optional[int] = None,
        seed: Optional[int] = None,
    ):
        self._set(
            step_scale=None if step_scale is None else float(step_scale),
            iterations=None if iterations is None else int(iterations),
            bounds=None if bounds is None else tuple(tuple(float(b) for b in axis) for axis in bounds),
            resolution=None if resolution is None else int(resolution),
            zooms=None if zooms is None else int(zooms),
            seed=None if seed is None else int(seed),
        )

    def sanity_check(self):
        if not self.step_scale > 0:
            raise ValueError(f"`step_scale` must be positive, got {self.step_scale}")

        if self.iterations < 1:
            raise ValueError(f"`iterations` must be positive, got {self.iterations}")

        if self.resolution < 3:
            raise ValueError(f"`resolution` must be at least 3, got {self.resolution}")

        if self.zooms < 0:
            raise ValueError(f"`zooms` must be nonnegative, got {self.zooms}")

        if self.bounds is not None:
            for lower, upper in self.bounds:
                if not lower < upper:
                    raise ValueError(f"Invalid grid bounds: {self.bounds}")


@pointmethod("x")
def subgradient_of_f(instance: ProblemInstance, x: Vector, eta_anchor: float = ETA_ANCHOR) -> Vector:
    """
    Element of the subdifferential of f at x: the gradient off the anchors,
    the minimal-norm element R_j * max(0, 1 - w_j / ||R_j||) of R_j + w_j B(0, 1)
    at anchor a_j
    """

    differences = x - instance.anchors
    distances = np.linalg.norm(differences, axis=1)
    j = int(distances.argmin())

    if distances[j] < eta_anchor:
        resultant = anchor_resultant(instance, j)
        norm = float(np.linalg.norm(resultant))
        weight = float(instance.weights[j])
        return resultant * max(0.0, 1.0 - weight / norm) if norm > 0 else np.zeros(instance.dim)

    return (instance.weights / distances) @ differences


def projected_subgradient(
    instance: ProblemInstance, cfg: Optional[OracleConfig] = None, eta_anchor: float = ETA_ANCHOR
) -> SolveResult:
    """
    Diminishing-step projected subgradient method y_{k+1} = Pi_C(y_k - c / sqrt(k + 1) g_k)
    with best-iterate tracking. Feasible anchors are candidates as well.
    """

    cfg = OracleConfig() if cfg is None else cfg
    constraint = instance.constraint
    rng = np.random.default_rng(cfg.seed)

    spread = float(np.ptp(instance.anchors, axis=0).max())
    y = constraint.project(instance.weighted_mean() + 1e-3 * spread * rng.standard_normal(instance.dim))

    best_x, best_f = y, evaluate_objective(instance, y)

    feasible = constraint.feasible_mask(instance.anchors)
    if feasible.any():
        candidates = instance.anchors[feasible]
        values = evaluate_objective_batch(instance, candidates)
        i = int(values.argmin())
        if values[i] < best_f:
            best_x, best_f = candidates[i].copy(), float(values[i])

    iterations = 0
    for k in range(cfg.iterations):
        g = subgradient_of_f(instance, y, eta_anchor=eta_anchor)
        if not np.any(g):
            break
        iterations += 1
        y = constraint.project(y - cfg.step_scale / np.sqrt(k + 1) * g)
        value = evaluate_objective(instance, y)
        if value < best_f:
            best_x, best_f = y, value

    logger.debug("Subgradient oracle: f={:.12g} after {} iterations", best_f, iterations)

    return SolveResult(
        x_final=best_x,
        objective=best_f,
        status=SolveStatus.MAX_ITERATIONS,
        iterations=iterations,
    )


def _default_bounds(instance: ProblemInstance) -> np.ndarray:
    # the minimizer lies in Pi_C(co A): cover the anchors and their projections
    points = np.vstack([instance.anchors, instance.constraint.project(instance.anchors)])
    lower, upper = points.min(axis=0), points.max(axis=0)
    pad = 0.1 * max(float((upper - lower).max()), 1.0)
    return np.stack([lower - pad, upper + pad], axis=1)


def _best_in_rows(args: tuple) -> tuple[float, float, float]:
    """
    Worker: best projected grid point over the rows `xs` x `ys`
    """

    instance, xs, ys = args

    px, py = np.meshgrid(np.asarray(xs), ys, indexing="ij")
    points = instance.constraint.project(np.column_stack([px.ravel(), py.ravel()]))
    values = evaluate_objective_batch(instance, points)

    # min value, ties by lexicographic point order
    i = np.lexsort((points[:, 1], points[:, 0], values))[0]

    return float(values[i]), float(points[i, 0]), float(points[i, 1])


def _search_window(instance: ProblemInstance, window: np.ndarray, resolution: int, cores: int):
    xs = np.linspace(window[0, 0], window[0, 1], resolution)
    ys = np.linspace(window[1, 0], window[1, 1], resolution)

    if cores > 1:
        tasks = [(instance, chunk, ys) for chunk in chunkize_list(list(xs), min(cores, resolution))]
        with mp.Pool(cores) as pool:
            results = pool.map(_best_in_rows, tasks)
    else:
        results = [_best_in_rows((instance, xs, ys))]

    return min(results)


def grid_search_2d(instance: ProblemInstance, cfg: Optional[OracleConfig] = None, cores: int = 1) -> Vector:
    """
    Exhaustive search over a 2-D grid, then `zooms` refinements (10x each) around
    the best point. Grid points are projected onto C so that lower-dimensional
    sets are covered too.
    """

    if instance.dim != 2:
        raise DimensionError(f"Grid search is 2-D only, got dimension {instance.dim}")

    cfg = OracleConfig() if cfg is None else cfg

    window = np.asarray(cfg.bounds, dtype=np.float64) if cfg.bounds is not None else _default_bounds(instance)

    value, x, y = _search_window(instance, window, cfg.resolution, cores)

    for zoom in range(cfg.zooms):
        half = (window[:, 1] - window[:, 0]) / 20
        center = np.array([x, y])
        window = np.stack([center - half, center + half], axis=1)
        value, x, y = _search_window(instance, window, cfg.resolution, cores)
        logger.debug("Grid zoom {}: f={:.12g} at ({:.9g}, {:.9g})", zoom + 1, value, x, y)

    return np.array([x, y])


def final_pitch(instance: ProblemInstance, cfg: Optional[OracleConfig] = None) -> float:
    """
    Grid spacing (largest axis) of the last zoom level of `grid_search_2d`
    """

    cfg = OracleConfig() if cfg is None else cfg
    window = np.asarray(cfg.bounds, dtype=np.float64) if cfg.bounds is not None else _default_bounds(instance)
    span = float((window[:, 1] - window[:, 0]).max())

    return span / (cfg.resolution - 1) / 10**cfg.zooms
