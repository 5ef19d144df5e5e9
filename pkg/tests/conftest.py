#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Shared fixtures: benchmark instances and seeded random instances
"""

from typing import Callable

import numpy as np
import pytest

from cftw.core import ProblemInstance
from cftw.resources import Instances
from cftw.sets import (Ball, BaseConstraintSet, Box, ConstraintTypes,
                       FreeSet, Halfspace, Hyperplane, NonnegativeOrthant,
                       Simplex)

VARIANTS = [str(t) for t in ConstraintTypes]


def random_constraint(rng: np.random.Generator, kind: str, dim: int) -> BaseConstraintSet:
    """
    Random member of a catalog variant, roughly overlapping the unit ball
    """

    if kind == ConstraintTypes.FREE:
        return FreeSet(dim=dim)

    if kind == ConstraintTypes.BALL:
        return Ball(center=0.5 * rng.standard_normal(dim), radius=rng.uniform(0.3, 1.5))

    if kind == ConstraintTypes.BOX:
        center = 0.5 * rng.standard_normal(dim)
        half = rng.uniform(0.2, 1.0, size=dim)
        return Box(lower=center - half, upper=center + half)

    if kind == ConstraintTypes.HALFSPACE:
        return Halfspace(normal=rng.standard_normal(dim), offset=rng.uniform(-0.5, 0.5))

    if kind == ConstraintTypes.HYPERPLANE:
        return Hyperplane(normal=rng.standard_normal(dim), offset=rng.uniform(-0.5, 0.5))

    if kind == ConstraintTypes.ORTHANT:
        return NonnegativeOrthant(dim=dim)

    if kind == ConstraintTypes.SIMPLEX:
        return Simplex(dim=dim, scale=rng.uniform(0.5, 2.0))

    raise ValueError(f"Unknown variant {kind}")


def random_instance(
    rng: np.random.Generator, dim: int, kind: str, anchors: tuple = (3, 7)
) -> ProblemInstance:
    """
    Random non-collinear instance: Gaussian anchors, weights in [0.5, 1.5]
    """

    m = int(rng.integers(anchors[0], anchors[1] + 1))
    while True:
        points = rng.standard_normal((m, dim))
        if kind in (ConstraintTypes.ORTHANT, ConstraintTypes.SIMPLEX):
            points = np.abs(points) * 0.5
        instance = ProblemInstance.create(
            points, rng.uniform(0.5, 1.5, size=m), random_constraint(rng, kind, dim)
        )
        if not instance.collinear:
            return instance


def random_suite(count: int, seed: int, dims: tuple = (2, 10)) -> list[ProblemInstance]:
    """
    `count` instances cycling through all variants
    """

    rng = np.random.default_rng(seed)

    return [
        random_instance(rng, dim=int(rng.integers(dims[0], dims[1] + 1)), kind=VARIANTS[i % len(VARIANTS)])
        for i in range(count)
    ]


@pytest.fixture(scope="session")
def equilateral() -> ProblemInstance:
    return Instances.EQUILATERAL.load()


@pytest.fixture(scope="session")
def square_halfspace() -> ProblemInstance:
    return Instances.SQUARE_HALFSPACE.load()


@pytest.fixture(scope="session")
def heavy_anchor() -> ProblemInstance:
    return Instances.HEAVY_ANCHOR.load()


@pytest.fixture(scope="session")
def orthant_corner() -> ProblemInstance:
    return Instances.ORTHANT_CORNER.load()


@pytest.fixture(scope="session")
def make_instance() -> Callable:
    return random_instance


@pytest.fixture(scope="session")
def make_suite() -> Callable:
    return random_suite
