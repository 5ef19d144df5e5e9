#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Dependence of the problem on its anchors.

The optimal value function m(a) = min_{x in C} f(x; a) and the solution map
M(a) = argmin are taken over the product space of the m anchors. Off anchor
solutions m is differentiable with blocks -w_i (M(a) - a_i) / ||M(a) - a_i||.
"""

import multiprocessing as mp
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from cftw.core import (AnchorSolutionError, CollinearInstanceError,
                       DimensionError, ProblemInstance, Tolerances, Vector)
from cftw.solvers.weiszfeld import SolveResult, solve
from cftw.utils import StrEnum

STABILITY_EPSILON = 1e-12

FINITE_DIFFERENCE_STEP = 1e-5

REPORT_COLUMNS = ["delta", "dir", "dM", "dm", "flag"]


class PerturbationFlags(StrEnum):
    """
    Why a perturbed instance was skipped
    """

    COLLINEAR = "collinear"
    COINCIDENT = "coincident"


@dataclass(frozen=True, eq=False)
class PerturbationSpec:
    """
    Perturbations a' = a + delta * direction.

    Joint directions have m * n entries and move all anchors at once. Per-anchor
    directions have n entries and move each anchor in turn.
    """

    deltas: tuple
    directions: np.ndarray
    per_anchor: bool = False

    def __post_init__(self):
        deltas = tuple(float(d) for d in self.deltas)

        assert len(deltas) > 0, "Need at least one delta"

        positive = deltas[:-1] if deltas[-1] == 0.0 else deltas
        if any(d <= 0 or not np.isfinite(d) for d in positive):
            raise ValueError(f"Deltas must be positive (a trailing 0 is allowed), got {deltas}")
        if any(a <= b for a, b in zip(deltas, deltas[1:])):
            raise ValueError(f"Deltas must be strictly decreasing, got {deltas}")

        directions = np.array(self.directions, dtype=np.float64)
        if directions.ndim != 2 or directions.shape[0] < 1:
            raise DimensionError(f"Directions must have shape (k, d), got {directions.shape}")

        norms = np.linalg.norm(directions, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError(f"Directions must have unit norm, got norms {norms}")

        directions.flags.writeable = False
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "directions", directions)

    @classmethod
    def random(
        cls,
        instance: ProblemInstance,
        deltas: Sequence[float],
        count: int,
        seed: int = 0,
        per_anchor: bool = False,
    ) -> "PerturbationSpec":
        """
        `count` directions drawn uniformly from the unit sphere
        """

        size = instance.dim if per_anchor else instance.m * instance.dim
        draws = np.random.default_rng(seed).standard_normal((count, size))
        draws /= np.linalg.norm(draws, axis=1)[:, None]

        return cls(deltas=tuple(deltas), directions=draws, per_anchor=per_anchor)


@dataclass(frozen=True)
class StabilityRow:
    """Deviation of one perturbed instance"""

    delta: float
    direction: str
    solution_deviation: float
    value_deviation: float
    flag: str = ""

    @property
    def skipped(self) -> bool:
        return self.flag != ""


@dataclass
class StabilityReport:
    """Rows sorted by delta, largest first"""

    rows: list[StabilityRow] = field(default_factory=list)

    @property
    def flagged(self) -> list[StabilityRow]:
        return [r for r in self.rows if r.skipped]

    def to_frame(self) -> pd.DataFrame:
        """
        Report as a table (`delta,dir,dM,dm,flag`)
        """
        return pd.DataFrame(
            [(r.delta, r.direction, r.solution_deviation, r.value_deviation, r.flag) for r in self.rows],
            columns=REPORT_COLUMNS,
        )


def _precise(tol: Optional[Tolerances]) -> Tolerances:
    tol = Tolerances() if tol is None else tol
    return tol.replace(epsilon=STABILITY_EPSILON)


def _precise_solve(instance: ProblemInstance, tol: Optional[Tolerances]) -> SolveResult:
    if instance.collinear:
        raise CollinearInstanceError("Anchors are collinear: the solution map is not single-valued")

    return solve(instance, tol=_precise(tol))


def optimal_value(instance: ProblemInstance, tol: Optional[Tolerances] = None) -> float:
    """
    m(a): optimal value of a high-precision solve
    """
    return _precise_solve(instance, tol).objective


def solution_map(instance: ProblemInstance, tol: Optional[Tolerances] = None) -> Vector:
    """
    M(a): minimizer of a high-precision solve
    """
    return _precise_solve(instance, tol).x_final


def value_subgradient(instance: ProblemInstance, tol: Optional[Tolerances] = None) -> np.ndarray:
    """
    Gradient of m at a as an (m, n) array, block i = -w_i (M(a) - a_i) / ||M(a) - a_i||.
    Undefined (set-valued) when M(a) is an anchor.
    """

    tol = Tolerances() if tol is None else tol
    solution = solution_map(instance, tol)

    differences = solution - instance.anchors
    distances = np.linalg.norm(differences, axis=1)
    j = int(distances.argmin())

    if distances[j] < tol.eta_anchor:
        raise AnchorSolutionError(f"Minimizer is anchor {j}: m is not differentiable there")

    return -(instance.weights / distances)[:, None] * differences


def _solve_perturbed(args: tuple) -> tuple[Optional[Vector], float, str]:
    """
    Worker: high-precision solve of `instance` moved to `anchors`
    """

    instance, anchors, tol = args

    perturbed = instance.with_anchors(anchors)

    if perturbed.m < instance.m:
        return None, np.nan, str(PerturbationFlags.COINCIDENT)

    if perturbed.collinear:
        return None, np.nan, str(PerturbationFlags.COLLINEAR)

    result = solve(perturbed, tol=tol)

    return result.x_final, result.objective, ""


def _solve_all(tasks: list[tuple], cores: int) -> list[tuple]:
    if cores > 1 and len(tasks) > 1:
        with mp.Pool(cores) as pool:
            return pool.map(_solve_perturbed, tasks)
    return [_solve_perturbed(t) for t in tasks]


def finite_difference_check(
    instance: ProblemInstance,
    h: float = FINITE_DIFFERENCE_STEP,
    tol: Optional[Tolerances] = None,
    cores: int = 1,
) -> float:
    """
    Largest deviation between central differences of m and `value_subgradient`
    over all m * n anchor coordinates. Coordinates whose perturbed instances are
    collinear or have coincident anchors are skipped.
    """

    if not h > 0:
        raise ValueError(f"Finite difference step must be positive, got {h}")

    gradient = value_subgradient(instance, tol)
    precise = _precise(tol)

    coordinates = [(i, c) for i in range(instance.m) for c in range(instance.dim)]
    tasks = []
    for i, c in coordinates:
        for sign in (1.0, -1.0):
            anchors = np.array(instance.anchors)
            anchors[i, c] += sign * h
            tasks.append((instance, anchors, precise))

    results = _solve_all(tasks, cores)

    deviation = 0.0
    for n, (i, c) in enumerate(coordinates):
        (_, upper, flag_up), (_, lower, flag_down) = results[2 * n], results[2 * n + 1]
        if flag_up or flag_down:
            logger.warning("Skipping coordinate ({}, {}): {}", i, c, flag_up or flag_down)
            continue
        difference = (upper - lower) / (2 * h)
        deviation = max(deviation, abs(difference - gradient[i, c]))

    logger.debug("Finite differences vs. closed-form gradient: max deviation {:.3g}", deviation)

    return deviation


def continuity_probe(
    instance: ProblemInstance,
    spec: PerturbationSpec,
    tol: Optional[Tolerances] = None,
    cores: int = 1,
) -> StabilityReport:
    """
    Solve perturbed instances and record ||M(a') - M(a)|| and |m(a') - m(a)|
    """

    base = _precise_solve(instance, tol)
    precise = _precise(tol)

    expected = instance.dim if spec.per_anchor else instance.m * instance.dim
    if spec.directions.shape[1] != expected:
        raise DimensionError(
            f"Directions have {spec.directions.shape[1]} entries, expected {expected}"
        )

    labels, deltas, tasks = [], [], []
    for delta in spec.deltas:
        for k, direction in enumerate(spec.directions):
            if spec.per_anchor:
                for i in range(instance.m):
                    anchors = np.array(instance.anchors)
                    anchors[i] += delta * direction
                    labels.append(f"{k}:{i}")
                    deltas.append(delta)
                    tasks.append((instance, anchors, precise))
            else:
                labels.append(str(k))
                deltas.append(delta)
                tasks.append((instance, instance.anchors + delta * direction.reshape(instance.m, instance.dim), precise))

    report = StabilityReport()

    for delta, label, (x, value, flag) in zip(deltas, labels, _solve_all(tasks, cores)):
        if flag:
            logger.warning("Skipping perturbation delta={:.3g} dir={}: {}", delta, label, flag)
            report.rows.append(StabilityRow(delta, label, np.nan, np.nan, flag))
            continue

        report.rows.append(
            StabilityRow(
                delta=delta,
                direction=label,
                solution_deviation=float(np.linalg.norm(x - base.x_final)),
                value_deviation=abs(value - base.objective),
            )
        )

    return report
