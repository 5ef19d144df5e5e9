#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Imports
"""
from .oracle import (OracleConfig, final_pitch, grid_search_2d,
                     projected_subgradient, subgradient_of_f)
from .weiszfeld import (MAX_HALVINGS, TRACE_COLUMNS, SolveResult, SolveStatus,
                        TraceRecord, anchor_escape, solve, step)
