#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Errors raised by the location problem machinery
"""


class DimensionError(ValueError):
    """Point or set does not match the instance dimension"""


class AnchorProximityError(ValueError):
    """Point lies within `eta_anchor` of an anchor where the operation is undefined"""


class InfeasiblePointError(ValueError):
    """Point is not in the constraint set"""


class CollinearInstanceError(RuntimeError):
    """Anchors are collinear: the solution need not be unique"""


class EscapeFailureError(RuntimeError):
    """Anchor was certified not optimal but no descent point was found around it"""


class AnchorSolutionError(RuntimeError):
    """Solution coincides with an anchor where the value function is not differentiable"""
