#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Projected Weiszfeld iteration x_{k+1} = Pi_C(T(x_k))
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd
from loguru import logger

from cftw.analysis.certify import anchor_optimality, screen_anchors
from cftw.core import (ETA_ANCHOR, AnchorProximityError, EscapeFailureError,
                       InfeasiblePointError, ProblemInstance, Tolerances,
                       Vector, anchor_resultant, as_vector, collinear_median,
                       evaluate_objective, pointmethod, weiszfeld_map)
from cftw.sets import ConstraintTypes
from cftw.utils import StrEnum

MAX_HALVINGS = 60

TRACE_COLUMNS = ["iter", "f", "step_norm", "residual"]


class SolveStatus(StrEnum):
    """
    How a solve ended
    """

    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    ANCHOR_OPTIMAL = "anchor_optimal"
    COLLINEAR_REFUSED = "collinear_refused"


@dataclass(frozen=True)
class TraceRecord:
    """One iteration x_k -> x_{k+1}"""

    iter: int
    objective: float
    step_norm: float
    fixed_point_residual: float
    escaped: bool = False


@dataclass
class SolveResult:
    """Output of a solve"""

    x_final: Vector
    objective: float
    status: SolveStatus
    iterations: int
    trace: list[TraceRecord] = field(default_factory=list)
    # iterates x_0..x_K: trace[k] describes path[k] -> path[k + 1]
    path: Optional[np.ndarray] = None
    anchor_index: Optional[int] = None

    def trace_frame(self) -> pd.DataFrame:
        """
        Trace as a table (`iter,f,step_norm,residual`)
        """
        return pd.DataFrame(
            [(r.iter, r.objective, r.step_norm, r.fixed_point_residual) for r in self.trace],
            columns=TRACE_COLUMNS,
        )


def _projected_map(instance: ProblemInstance, x: Vector, eta_anchor: float) -> Vector:
    return instance.constraint.project(weiszfeld_map(instance, x, eta_anchor=eta_anchor))


@pointmethod("x")
def step(instance: ProblemInstance, x: Vector, eta_anchor: float = ETA_ANCHOR) -> Vector:
    """
    One projected Weiszfeld step Pi_C(T(x)) from a non-anchor point
    """

    j, distance = instance.nearest_anchor(x)
    if distance < eta_anchor:
        raise AnchorProximityError(f"Cannot step from anchor {j}: certify it or escape")

    return _projected_map(instance, x, eta_anchor)


def _escape(instance: ProblemInstance, j: int, delta: float) -> Vector:
    anchor = instance.anchors[j]
    resultant = anchor_resultant(instance, j)
    direction = -resultant / np.linalg.norm(resultant)
    threshold = evaluate_objective(instance, anchor)

    t = delta
    for _ in range(MAX_HALVINGS + 1):
        candidate = instance.constraint.project(anchor + t * direction)
        if evaluate_objective(instance, candidate) < threshold:
            logger.debug("Escaped anchor {} with step {:.3g}", j, t)
            return candidate
        t /= 2

    raise EscapeFailureError(
        f"Anchor {j} is not optimal but no descent was found after {MAX_HALVINGS} halvings"
    )


def anchor_escape(instance: ProblemInstance, j: int, tol: Optional[Tolerances] = None) -> Vector:
    """
    Feasible point with lower objective than a non-optimal anchor a_j: project
    a_j - t R_j / ||R_j|| onto C, halving t from `delta_escape` until f decreases
    """

    tol = Tolerances() if tol is None else tol

    if anchor_optimality(instance, j).optimal:
        raise ValueError(f"Anchor {j} is optimal: nothing to escape from")

    return _escape(instance, j, tol.delta_escape)


def _anchor_result(
    instance: ProblemInstance, j: int, trace: list[TraceRecord], path: list[Vector]
) -> SolveResult:
    anchor = instance.anchors[j].copy()
    return SolveResult(
        x_final=anchor,
        objective=evaluate_objective(instance, anchor),
        status=SolveStatus.ANCHOR_OPTIMAL,
        iterations=len(trace),
        trace=trace,
        path=np.asarray(path),
        anchor_index=j,
    )


def solve(
    instance: ProblemInstance,
    tol: Optional[Tolerances] = None,
    x0: Optional[Vector] = None,
    allow_collinear: bool = False,
    precheck_anchors: bool = False,
) -> SolveResult:
    """
    Run the projected Weiszfeld iteration until ||x_k - x_{k+1}|| <= epsilon or
    `max_iter` steps.

    Iterates that hit an anchor are certified there: an optimal anchor ends the
    solve, a non-optimal one is escaped by a short descent step.
    """

    tol = Tolerances() if tol is None else tol
    constraint = instance.constraint

    if x0 is None:
        x = constraint.project(instance.weighted_mean())
    else:
        x = as_vector(x0, dim=instance.dim, name="x0")
        if not constraint.contains(x):
            raise InfeasiblePointError(
                f"Starting point is {constraint.distance(x):.3g} away from the constraint set"
            )

    if instance.collinear and not allow_collinear:
        logger.warning("Anchors are collinear: the solution may not be unique, refusing to solve")
        return SolveResult(
            x_final=x,
            objective=evaluate_objective(instance, x),
            status=SolveStatus.COLLINEAR_REFUSED,
            iterations=0,
            path=x[None, :],
        )

    if instance.collinear and constraint.type == ConstraintTypes.FREE:
        j = collinear_median(instance)
        if anchor_optimality(instance, j).optimal:
            logger.debug("Collinear anchors: weighted line median is anchor {}", j)
            return _anchor_result(instance, j, trace=[], path=[x])

    if precheck_anchors:
        certificate = screen_anchors(instance)
        if certificate is not None:
            return _anchor_result(instance, certificate.anchor_index, trace=[], path=[x])

    trace: list[TraceRecord] = []
    path: list[Vector] = [x]
    objective = evaluate_objective(instance, x)
    status = SolveStatus.MAX_ITERATIONS

    for k in range(tol.max_iter):
        j, distance = instance.nearest_anchor(x)
        escaped = distance < tol.eta_anchor

        if escaped:
            if anchor_optimality(instance, j).optimal:
                logger.debug("Iterate {} reached optimal anchor {}", k, j)
                return _anchor_result(instance, j, trace, path)
            x_next = _escape(instance, j, tol.delta_escape)
            residual = float(np.linalg.norm(_projected_map(instance, x, tol.eta_anchor) - x))
        else:
            x_next = _projected_map(instance, x, tol.eta_anchor)
            residual = float(np.linalg.norm(x_next - x))

        step_norm = float(np.linalg.norm(x - x_next))
        trace.append(TraceRecord(k, objective, step_norm, residual, escaped))

        x = x_next
        objective = evaluate_objective(instance, x)
        path.append(x)

        if not escaped and step_norm <= tol.epsilon:
            status = SolveStatus.CONVERGED
            break

    if status == SolveStatus.MAX_ITERATIONS:
        logger.warning("No convergence after {} iterations (last step {:.3g})", tol.max_iter, trace[-1].step_norm)

    # iterates approach an optimal anchor only linearly: snap to it if certified
    j, distance = instance.nearest_anchor(x)
    if distance <= tol.snap_radius and anchor_optimality(instance, j).optimal:
        if evaluate_objective(instance, instance.anchors[j]) <= objective + 1e-12 * (1.0 + objective):
            logger.debug("Snapped final iterate to optimal anchor {}", j)
            return _anchor_result(instance, j, trace, path)

    logger.info("Solve: status={} iterations={} f={:.12g}", status, len(trace), objective)

    return SolveResult(
        x_final=x,
        objective=objective,
        status=status,
        iterations=len(trace),
        trace=trace,
        path=np.asarray(path),
    )
