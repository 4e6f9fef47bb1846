# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Report JSON serializer."""

import numpy as np
import simplejson as json


def _default(obj):
    """Encode the numpy objects simplejson does not know about."""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(
        "Object of type {0} is not JSON serializable".format(
            type(obj).__name__
        )
    )


class ReportJSONSerializer(object):
    """Serialize command reports as JSON.

    Keys are sorted and non-finite numbers are written as ``null``, so equal
    reports always give byte-identical documents.
    """

    def __init__(self, indent=2):
        """Initialize serializer."""
        self.indent = indent

    def serialize(self, report):
        """Serialize a report."""
        return json.dumps(
            report,
            sort_keys=True,
            indent=self.indent,
            default=_default,
            for_json=True,
            ignore_nan=True,
        )

    def transform(self, report):
        """Plain ``dict``/``list`` representation of a report."""
        return json.loads(self.serialize(report))
