#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Available constraint sets
"""
from .ball import Ball
from .base import (MEMBERSHIP_TOL, BaseConstraintSet, ConstraintTypes,
                   ray_distance)
from .box import Box
from .free import FreeSet
from .halfspace import Halfspace, Hyperplane
from .orthant import NonnegativeOrthant
from .simplex import Simplex

NAME_TO_CONSTRAINT = {
    ConstraintTypes.FREE: FreeSet,
    ConstraintTypes.BALL: Ball,
    ConstraintTypes.BOX: Box,
    ConstraintTypes.HALFSPACE: Halfspace,
    ConstraintTypes.HYPERPLANE: Hyperplane,
    ConstraintTypes.ORTHANT: NonnegativeOrthant,
    ConstraintTypes.SIMPLEX: Simplex,
}


class AutoConstraintSet:
    """
    Import util
    """

    @staticmethod
    def from_name(name: str, dim: int, **params) -> BaseConstraintSet:
        """
        Get constraint set from its type name
        """
        if name not in ConstraintTypes:
            raise ValueError(
                f"Unknown constraint `{name}`: choose one from {[str(t) for t in ConstraintTypes]}"
            )
        return NAME_TO_CONSTRAINT[ConstraintTypes(name)].from_params(dim=dim, params=params)

    @staticmethod
    def from_dict(spec: dict, dim: int) -> BaseConstraintSet:
        """
        Get constraint set from a serialized `constraint` block
        """
        params = dict(spec)
        name = params.pop("type")
        return AutoConstraintSet.from_name(name, dim=dim, **params)
