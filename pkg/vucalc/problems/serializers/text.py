# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Report text serializer."""

from numbers import Number

from ...proxies import get_setting

INDENT = "  "


def _is_scalar(value):
    return value is None or isinstance(value, (str, Number))


class ReportTextSerializer(object):
    """Human-readable rendering of command reports.

    Nested mappings are indented, vectors are written inline, matrices row
    by row and lists of records as aligned tables.
    """

    def __init__(self, json_serializer, digits=None):
        """Initialize serializer.

        :param json_serializer: serializer giving the plain representation.
        :param digits: significant digits of floats.
        """
        self.json_serializer = json_serializer
        self.digits = digits

    def serialize(self, report):
        """Serialize a report."""
        digits = int(get_setting("VUCALC_REPORT_DIGITS", self.digits))
        lines = []
        plain = self.json_serializer.transform(report)
        for key in sorted(plain):
            self._render(key, plain[key], 0, digits, lines)
        return "\n".join(lines) + "\n"

    def _scalar(self, value, digits):
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return "{0:.{1}g}".format(value, digits)
        return str(value)

    def _inline(self, value, digits):
        if isinstance(value, dict):
            return "{" + ", ".join(
                "{0}={1}".format(k, self._inline(value[k], digits))
                for k in sorted(value)
            ) + "}"
        if isinstance(value, list):
            return "[" + ", ".join(
                self._inline(v, digits) for v in value
            ) + "]"
        return self._scalar(value, digits)

    def _table(self, records, depth, digits, lines):
        keys = sorted({k for record in records for k in record})
        rows = [keys] + [
            [self._inline(record.get(k), digits) for k in keys]
            for record in records
        ]
        widths = [max(len(row[i]) for row in rows) for i in range(len(keys))]
        for row in rows:
            cells = [cell.ljust(width) for cell, width in zip(row, widths)]
            lines.append(INDENT * depth + "  ".join(cells).rstrip())

    def _render(self, key, value, depth, digits, lines):
        prefix = INDENT * depth + "{0}:".format(key)
        if isinstance(value, dict):
            lines.append(prefix)
            for k in sorted(value):
                self._render(k, value[k], depth + 1, digits, lines)
        elif isinstance(value, list) and value:
            if all(_is_scalar(v) for v in value):
                lines.append(prefix + " " + self._inline(value, digits))
            elif all(isinstance(v, dict) for v in value):
                lines.append(prefix)
                self._table(value, depth + 1, digits, lines)
            else:
                lines.append(prefix)
                for v in value:
                    lines.append(
                        INDENT * (depth + 1) + self._inline(v, digits)
                    )
        else:
            lines.append(prefix + " " + self._inline(value, digits))
