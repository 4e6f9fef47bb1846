# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Report serializers."""

from .json import ReportJSONSerializer
from .text import ReportTextSerializer

json_v1 = ReportJSONSerializer()
text_v1 = ReportTextSerializer(json_v1)
