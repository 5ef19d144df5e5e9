#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Constraint sets: projections, membership, normal cones
"""

import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cftw.core import DimensionError, InfeasiblePointError
from cftw.sets import (AutoConstraintSet, Ball, Box, ConstraintTypes,
                       FreeSet, Halfspace, Hyperplane, NonnegativeOrthant,
                       Simplex)
from tests.conftest import VARIANTS, random_constraint


def brute_force_simplex_distance(x: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> float:
    """
    dist(v, N(x, simplex)) minimising over the multiplier mu of sum(x) = scale:
    every subset of the zero coordinates gives a stationary mu, the kinks are at v_i
    """
    zero = np.flatnonzero(x <= tol)
    positive = v[x > tol]

    candidates = list(v)
    for size in range(len(zero) + 1):
        for subset in itertools.combinations(zero, size):
            free = np.concatenate([positive, v[list(subset)]])
            if free.size > 0:
                candidates.append(free.mean())

    best = np.inf
    for mu in candidates:
        residual = v - mu
        residual[zero] = np.maximum(residual[zero], 0.0)
        best = min(best, np.linalg.norm(residual))
    return best


class TestProject:
    def test_ball(self):
        assert_allclose(Ball(center=[0.0, 0.0], radius=1.0).project([2.0, 0.0]), [1.0, 0.0])

    def test_box(self):
        box = Box(lower=[0.0, 0.0], upper=[1.0, 1.0])
        assert_allclose(box.project([2.0, -1.0]), [1.0, 0.0])

    def test_simplex(self):
        assert_allclose(Simplex(dim=3).project([0.5, 0.5, 0.5]), [1 / 3, 1 / 3, 1 / 3], atol=1e-15)

    def test_simplex_scale(self):
        projected = Simplex(dim=3, scale=2.0).project([5.0, 0.0, -1.0])
        assert_allclose(projected, [2.0, 0.0, 0.0])

    def test_halfspace(self):
        halfspace = Halfspace(normal=[0.0, -1.0], offset=-0.5)
        assert_allclose(halfspace.project([0.3, 0.1]), [0.3, 0.5])
        assert_allclose(halfspace.project([0.3, 0.9]), [0.3, 0.9])

    def test_hyperplane(self):
        hyperplane = Hyperplane(normal=[1.0, 1.0], offset=1.0)
        assert_allclose(hyperplane.project([1.0, 1.0]), [0.5, 0.5])

    def test_orthant(self):
        assert_allclose(NonnegativeOrthant(dim=3).project([-1.0, 2.0, 0.0]), [0.0, 2.0, 0.0])

    def test_batch(self):
        ball = Ball(center=[0.0, 0.0], radius=1.0)
        points = np.array([[2.0, 0.0], [0.1, 0.2], [0.0, -3.0]])
        assert_allclose(ball.project(points), [[1.0, 0.0], [0.1, 0.2], [0.0, -1.0]])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            Box(lower=[0.0, 0.0], upper=[1.0, 1.0]).project([0.0, 0.0, 0.0])

    def test_feasible_unchanged(self):
        box = Box(lower=[0.0, 0.0], upper=[1.0, 1.0])
        x = np.array([0.25, 0.75])
        assert np.array_equal(box.project(x), x)


class TestInvalidSets:
    def test_box_bounds(self):
        with pytest.raises(ValueError):
            Box(lower=[1.0, 0.0], upper=[0.0, 1.0])

    def test_ball_radius(self):
        with pytest.raises(ValueError):
            Ball(center=[0.0, 0.0], radius=0.0)

    def test_zero_normal(self):
        with pytest.raises(ValueError):
            Halfspace(normal=[0.0, 0.0], offset=1.0)

    def test_simplex_scale(self):
        with pytest.raises(ValueError):
            Simplex(dim=2, scale=-1.0)


class TestContains:
    def test_halfspace(self):
        halfspace = Halfspace(normal=[0.0, 1.0], offset=1.0)
        assert not halfspace.contains([0.0, 2.0])
        assert halfspace.contains([0.0, 1.0])

    def test_free(self):
        assert FreeSet(dim=2).contains([1e6, -1e6])

    def test_feasible_mask(self):
        orthant = NonnegativeOrthant(dim=2)
        mask = orthant.feasible_mask([[1.0, 1.0], [-1.0, 0.0], [0.0, 0.0]])
        assert mask.tolist() == [True, False, True]


class TestNormalCone:
    def test_halfspace(self):
        halfspace = Halfspace(normal=[0.0, 1.0], offset=0.0)
        assert halfspace.normal_cone_distance([0.0, 0.0], [0.0, 1.0]) == pytest.approx(0.0)
        assert halfspace.normal_cone_distance([0.0, 0.0], [1.0, 0.0]) == pytest.approx(1.0)

    def test_orthant_corner(self):
        assert NonnegativeOrthant(dim=2).normal_cone_distance([0.0, 0.0], [-1.0, -1.0]) == 0.0

    def test_interior(self):
        ball = Ball(center=[0.0, 0.0], radius=1.0)
        assert ball.normal_cone_distance([0.1, 0.1], [3.0, 4.0]) == pytest.approx(5.0)

    def test_ball_boundary(self):
        ball = Ball(center=[0.0, 0.0], radius=1.0)
        assert ball.normal_cone_distance([1.0, 0.0], [2.0, 1.0]) == pytest.approx(1.0)
        assert ball.normal_cone_distance([1.0, 0.0], [-2.0, 1.0]) == pytest.approx(np.sqrt(5))

    def test_hyperplane_span(self):
        hyperplane = Hyperplane(normal=[1.0, 0.0], offset=0.0)
        assert hyperplane.normal_cone_distance([0.0, 3.0], [-2.0, 1.0]) == pytest.approx(1.0)

    def test_box_faces(self):
        box = Box(lower=[0.0, 0.0], upper=[1.0, 1.0])
        assert box.normal_cone_distance([1.0, 0.5], [2.0, 1.0]) == pytest.approx(1.0)
        assert box.normal_cone_distance([1.0, 0.0], [2.0, -1.0]) == pytest.approx(0.0)

    def test_infeasible(self):
        with pytest.raises(InfeasiblePointError):
            NonnegativeOrthant(dim=2).normal_cone_distance([-1.0, 0.0], [1.0, 1.0])

    def test_simplex_against_brute_force(self):
        rng = np.random.default_rng(3)
        simplex = Simplex(dim=4)
        for _ in range(25):
            x = simplex.project(rng.standard_normal(4) * 2)
            v = rng.standard_normal(4)
            assert simplex.normal_cone_distance(x, v) == pytest.approx(
                brute_force_simplex_distance(x, v), abs=1e-12
            )


@pytest.mark.parametrize("kind", VARIANTS)
class TestProjectionProperties:
    def test_nonexpansive(self, kind):
        rng = np.random.default_rng(4)
        for dim in (2, 5):
            constraint = random_constraint(rng, kind, dim)
            x = 3 * rng.standard_normal((1000, dim))
            y = 3 * rng.standard_normal((1000, dim))
            moved = np.linalg.norm(constraint.project(x) - constraint.project(y), axis=1)
            assert np.all(moved <= np.linalg.norm(x - y, axis=1) + 1e-12)

    def test_variational_inequality(self, kind):
        rng = np.random.default_rng(5)
        constraint = random_constraint(rng, kind, 3)
        for x in 3 * rng.standard_normal((20, 3)):
            projected = constraint.project(x)
            z = constraint.sample(rng, 100, center=projected, radius=2.0)
            assert np.all((z - projected) @ (x - projected) <= 1e-10)

    def test_idempotent(self, kind):
        rng = np.random.default_rng(6)
        constraint = random_constraint(rng, kind, 4)
        projected = constraint.project(3 * rng.standard_normal((200, 4)))
        assert_allclose(constraint.project(projected), projected, atol=1e-12)
        assert np.all(constraint.feasible_mask(projected))

    def test_normal_cone_consistency(self, kind):
        rng = np.random.default_rng(7)
        constraint = random_constraint(rng, kind, 3)
        for x in 3 * rng.standard_normal((50, 3)):
            projected = constraint.project(x)
            assert constraint.normal_cone_distance(projected, x - projected) <= 1e-9

    def test_extreme_points_feasible(self, kind):
        rng = np.random.default_rng(8)
        constraint = random_constraint(rng, kind, 3)
        x = constraint.project(rng.standard_normal(3))
        points = constraint.extreme_points(x)
        if len(points) > 0:
            assert np.all(constraint.feasible_mask(points))

    def test_serialization(self, kind):
        constraint = random_constraint(np.random.default_rng(9), kind, 3)
        assert AutoConstraintSet.from_dict(constraint.to_dict(), dim=3) == constraint


def test_unknown_constraint():
    with pytest.raises(ValueError):
        AutoConstraintSet.from_name("ellipse", dim=2)


def test_catalog():
    assert sorted(str(t) for t in ConstraintTypes) == sorted(
        ["free", "ball", "box", "halfspace", "hyperplane", "orthant", "simplex"]
    )
