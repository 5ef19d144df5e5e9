#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Run CLI
"""
from .commands import main

if __name__ == "__main__":
    main()
