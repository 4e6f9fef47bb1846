# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests."""
