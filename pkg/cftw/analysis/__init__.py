#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Imports
"""
from .certify import (ANCHOR_TOL, VI_SAMPLES, Certificate, CertificateKinds,
                      Verdicts, anchor_optimality, certify,
                      fixed_point_residual, screen_anchors, vi_certificate)
from .stability import (FINITE_DIFFERENCE_STEP, REPORT_COLUMNS, STABILITY_EPSILON,
                        PerturbationFlags, PerturbationSpec, StabilityReport,
                        StabilityRow, continuity_probe,
                        finite_difference_check, optimal_value, solution_map,
                        value_subgradient)
