#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Package data: defaults and built-in instances
"""
