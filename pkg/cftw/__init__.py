#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Constrained Fermat-Torricelli-Weber problem: projected Weiszfeld iteration,
optimality certificates, stability probes and reference solvers
"""

from .analysis import (Certificate, CertificateKinds, PerturbationSpec,
                       StabilityReport, Verdicts, anchor_optimality, certify,
                       continuity_probe, optimal_value, solution_map)
from .cli.documents import parse_instance, serialize_instance
from .core import (AnchorProximityError, AnchorSet, AnchorSolutionError,
                   CollinearInstanceError, DimensionError, EscapeFailureError,
                   InfeasiblePointError, ProblemInstance, Tolerances,
                   evaluate_objective, weiszfeld_map)
from .resources import Instances
from .sets import AutoConstraintSet, ConstraintTypes
from .solvers import (OracleConfig, SolveResult, SolveStatus, grid_search_2d,
                      projected_subgradient, solve, step)
