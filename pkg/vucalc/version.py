# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Version information for vucalc.

This file is imported by ``vucalc.__init__``,
and parsed by ``setup.py``.
"""

__version__ = "1.0.0a1"
