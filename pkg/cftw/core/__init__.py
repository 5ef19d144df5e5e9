#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Imports
"""
from .data import (COLLINEAR_TOL, AnchorSet, ProblemInstance, Tolerances,
                   check_collinear)
from .errors import (AnchorProximityError, AnchorSolutionError,
                     CollinearInstanceError, DimensionError,
                     EscapeFailureError, InfeasiblePointError)
from .objective import (ETA_ANCHOR, anchor_resultant, auxiliary_value,
                        collinear_median, evaluate_objective,
                        evaluate_objective_batch, lipschitz_weight,
                        weiszfeld_map)
from .vector import Vector, as_points, as_vector, pointmethod
