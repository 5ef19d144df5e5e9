#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Optimality certificates.

Off the anchors a feasible x is optimal iff it is a fixed point of Pi_C o T, or
equivalently iff <T(x) - x, z - x> <= 0 for every z in C. An anchor a_j is
optimal iff -R_j - u lies in N(a_j, C) for some u with ||u|| <= w_j, i.e. iff
dist(-R_j, N(a_j, C)) <= w_j.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from cftw.core import (ETA_ANCHOR, AnchorProximityError, InfeasiblePointError,
                       ProblemInstance, Vector, anchor_resultant, pointmethod,
                       weiszfeld_map)
from cftw.sets import MEMBERSHIP_TOL
from cftw.utils import StrEnum

ANCHOR_TOL = 1e-9

VI_SAMPLES = 500


class CertificateKinds(StrEnum):
    """
    Which optimality condition was tested
    """

    FIXED_POINT = "fixed_point"
    VARIATIONAL_INEQUALITY = "variational_inequality"
    ANCHOR_CASE = "anchor_case"


class Verdicts(StrEnum):
    """
    Outcome of a certificate
    """

    OPTIMAL = "optimal"
    NOT_OPTIMAL = "not_optimal"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Certificate:
    """Optimality evidence for a candidate point"""

    kind: CertificateKinds
    residual: float
    margin: float
    verdict: Verdicts
    tolerance: float
    anchor_index: Optional[int] = None

    @property
    def optimal(self) -> bool:
        return self.verdict == Verdicts.OPTIMAL

    def to_dict(self) -> dict:
        return {
            "kind": str(self.kind),
            "residual": self.residual,
            "margin": self.margin,
            "verdict": str(self.verdict),
            "tolerance": self.tolerance,
            "anchor_index": self.anchor_index,
        }


def _verdict(residual: float, tol: float) -> Verdicts:
    if not np.isfinite(residual):
        return Verdicts.INCONCLUSIVE
    return Verdicts.OPTIMAL if residual <= tol else Verdicts.NOT_OPTIMAL


def _check_regular_point(
    instance: ProblemInstance, x: Vector, eta_anchor: float, membership_tol: float
):
    if not instance.constraint.contains(x, membership_tol):
        raise InfeasiblePointError(
            f"Point is {instance.constraint.distance(x):.3g} away from the constraint set"
        )

    j, distance = instance.nearest_anchor(x)
    if distance < eta_anchor:
        raise AnchorProximityError(
            f"Point coincides with anchor {j}: use `anchor_optimality` instead"
        )


@pointmethod("x")
def fixed_point_residual(
    instance: ProblemInstance,
    x: Vector,
    eta_anchor: float = ETA_ANCHOR,
    membership_tol: float = MEMBERSHIP_TOL,
) -> float:
    """
    ||Pi_C(T(x)) - x||
    """

    _check_regular_point(instance, x, eta_anchor, membership_tol)

    step = instance.constraint.project(weiszfeld_map(instance, x, eta_anchor=eta_anchor))

    return float(np.linalg.norm(step - x))


@pointmethod("x")
def vi_certificate(
    instance: ProblemInstance,
    x: Vector,
    samples: int = VI_SAMPLES,
    seed: int = 0,
    eta_anchor: float = ETA_ANCHOR,
    membership_tol: float = MEMBERSHIP_TOL,
) -> float:
    """
    max(0, max_z <T(x) - x, z - x>) over sampled feasible z and the extreme
    points of the constraint set
    """

    _check_regular_point(instance, x, eta_anchor, membership_tol)

    constraint = instance.constraint
    rng = np.random.default_rng(seed)
    radius = 1.0 + float(np.linalg.norm(instance.anchors - x, axis=1).max())

    candidates = np.vstack(
        [
            constraint.sample(rng, samples, center=x, radius=radius),
            constraint.extreme_points(x),
        ]
    )
    direction = weiszfeld_map(instance, x, eta_anchor=eta_anchor) - x

    return float(max(0.0, np.max((candidates - x) @ direction)))


def anchor_optimality(
    instance: ProblemInstance,
    j: int,
    tol: float = ANCHOR_TOL,
    membership_tol: float = MEMBERSHIP_TOL,
) -> Certificate:
    """
    Test whether anchor a_j solves the constrained problem
    """

    anchor = instance.anchors[j]
    weight = float(instance.weights[j])
    constraint = instance.constraint

    if not constraint.contains(anchor, membership_tol):
        distance = constraint.distance(anchor)
        return Certificate(
            kind=CertificateKinds.ANCHOR_CASE,
            residual=distance,
            margin=-distance,
            verdict=Verdicts.NOT_OPTIMAL,
            tolerance=tol,
            anchor_index=j,
        )

    resultant = anchor_resultant(instance, j)
    distance = constraint.normal_cone_distance(anchor, -resultant, membership_tol)
    residual = max(0.0, distance - weight)

    certificate = Certificate(
        kind=CertificateKinds.ANCHOR_CASE,
        residual=residual,
        margin=weight - distance,
        verdict=_verdict(residual, tol),
        tolerance=tol,
        anchor_index=j,
    )

    logger.debug("Anchor {}: dist(-R, N) = {:.6g}, w = {:.6g} -> {}", j, distance, weight, certificate.verdict)

    return certificate


def screen_anchors(instance: ProblemInstance, tol: float = ANCHOR_TOL) -> Optional[Certificate]:
    """
    Check every anchor up front: first optimal anchor certificate, if any
    """

    for j in range(instance.m):
        certificate = anchor_optimality(instance, j, tol=tol)
        if certificate.optimal:
            return certificate

    return None


@pointmethod("x")
def certify(
    instance: ProblemInstance,
    x: Vector,
    tol: float,
    kind: CertificateKinds = CertificateKinds.FIXED_POINT,
    samples: int = VI_SAMPLES,
    seed: int = 0,
    eta_anchor: float = ETA_ANCHOR,
    membership_tol: float = MEMBERSHIP_TOL,
    anchor_tol: float = ANCHOR_TOL,
) -> Certificate:
    """
    Certify a feasible point: anchor test at (numerical) anchors, otherwise the
    fixed-point test (or the sampled variational inequality if requested)
    """

    if not instance.constraint.contains(x, membership_tol):
        raise InfeasiblePointError(
            f"Point is {instance.constraint.distance(x):.3g} away from the constraint set"
        )

    j, distance = instance.nearest_anchor(x)
    if distance < eta_anchor:
        return anchor_optimality(instance, j, tol=anchor_tol, membership_tol=membership_tol)

    if kind == CertificateKinds.VARIATIONAL_INEQUALITY:
        residual = vi_certificate(
            instance, x, samples=samples, seed=seed, eta_anchor=eta_anchor, membership_tol=membership_tol
        )
    elif kind == CertificateKinds.FIXED_POINT:
        residual = fixed_point_residual(instance, x, eta_anchor=eta_anchor, membership_tol=membership_tol)
    else:
        raise ValueError(f"Cannot certify a regular point with `{kind}`")

    return Certificate(
        kind=CertificateKinds(kind),
        residual=residual,
        margin=tol - residual,
        verdict=_verdict(residual, tol),
        tolerance=tol,
    )
