# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Problem schema for marshmallow loader."""

import numpy as np
from marshmallow import (
    EXCLUDE,
    Schema,
    ValidationError,
    fields,
    post_load,
    validate,
    validates_schema,
)

from vucalc.problems.api import OUTER_KINDS, PART_KINDS, ProblemSpec

SYMMETRY_TOL = 1e-9

positive = validate.Range(min=0, min_inclusive=False)


def _rank_tol(value):
    """Validate ``rank_tol``: ``"auto"`` or a positive number."""
    if value == "auto":
        return
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError('Must be a positive number or "auto".')
    if not value > 0:
        raise ValidationError('Must be a positive number or "auto".')


def _directions(value):
    """Validate ``directions``: ``"auto"`` or a list of vectors."""
    if value == "auto":
        return
    if not isinstance(value, list) or not all(
        isinstance(d, list) and d for d in value
    ):
        raise ValidationError('Must be "auto" or a list of vectors.')


class MatrixMixin(object):
    """Checks of the optional ``A`` matrix of a quadratic record."""

    def _check_quadratic(self, record, size, path, errors):
        b = record.get("b")
        if b is not None and len(b) != size:
            errors[path + ".b"] = [
                "Expected {0} entries, got {1}.".format(size, len(b))
            ]
        A = record.get("A")
        if A is None:
            return
        if len(A) != size or any(len(row) != size for row in A):
            errors[path + ".A"] = ["Expected a {0}x{0} matrix.".format(size)]
            return
        A = np.array(A, dtype=float)
        if A.size and np.max(np.abs(A - A.T)) > SYMMETRY_TOL:
            errors[path + ".A"] = [
                "Matrix is not symmetric (tolerance {0:g}).".format(
                    SYMMETRY_TOL
                )
            ]


class PhiAtomSchema(Schema):
    """Quadratic component ``½ x^T A x + b^T x + c`` of Φ."""

    class Meta:
        """Meta attributes for the schema."""

        unknown = EXCLUDE

    A = fields.List(fields.List(fields.Float()))
    b = fields.List(fields.Float(), required=True)
    c = fields.Float(load_default=0.0)


class PartSchema(Schema):
    """A part of the outer function."""

    class Meta:
        """Meta attributes for the schema."""

        unknown = EXCLUDE

    kind = fields.Str(required=True, validate=validate.OneOf(PART_KINDS))
    indices = fields.List(
        fields.Int(validate=validate.Range(min=0)),
        validate=validate.Length(min=1),
    )
    tau = fields.Float(validate=positive)
    A = fields.List(fields.List(fields.Float()))
    b = fields.List(fields.Float())
    c = fields.Float()


class OuterSchema(PartSchema):
    """The outer function ``h``."""

    kind = fields.Str(required=True, validate=validate.OneOf(OUTER_KINDS))
    parts = fields.List(
        fields.Nested(PartSchema), validate=validate.Length(min=1)
    )


class OptionsSchema(Schema):
    """Tolerances and run options."""

    class Meta:
        """Meta attributes for the schema."""

        unknown = EXCLUDE

    rank_tol = fields.Raw(validate=_rank_tol)
    active_tol = fields.Float(validate=positive)
    zero_tol = fields.Float(validate=positive)
    newton_tol = fields.Float(validate=positive)
    max_iters = fields.Int(validate=validate.Range(min=1))
    fd_step = fields.Float(validate=positive)
    reduced_f = fields.List(fields.Int(validate=validate.Range(min=0)))
    reduced_phi = fields.List(fields.Int(validate=validate.Range(min=1)))
    seed = fields.Int(validate=validate.Range(min=0))
    samples = fields.Int(validate=validate.Range(min=1))
    radius = fields.Float(validate=positive)
    directions = fields.Raw(validate=_directions)
    scales = fields.List(
        fields.Float(validate=positive), validate=validate.Length(min=1)
    )
    force = fields.Bool()
    ri_point_override = fields.List(fields.Float())
    generator_budget = fields.Int(validate=validate.Range(min=1))


class ProblemSchemaV1(MatrixMixin, Schema):
    """Problem spec schema."""

    class Meta:
        """Meta attributes for the schema."""

        unknown = EXCLUDE

    m = fields.Int(required=True, validate=validate.Range(min=1))
    phi = fields.List(
        fields.Nested(PhiAtomSchema),
        required=True,
        validate=validate.Length(min=1),
    )
    h = fields.Nested(OuterSchema, required=True)
    xbar = fields.List(fields.Float(), required=True)
    options = fields.Nested(OptionsSchema, load_default=dict)

    def _check_part(self, part, n, path, errors):
        indices = part.get("indices", list(range(n)))
        bad = [i for i in indices if i >= n]
        if bad:
            errors[path + ".indices"] = [
                "Indices {0} out of range for {1} components.".format(bad, n)
            ]
            return
        if part["kind"] == "smooth":
            self._check_quadratic(part, len(indices), path, errors)

    @validates_schema
    def validate_dimensions(self, data, **kwargs):
        """Check that all dimensions agree."""
        m = data["m"]
        n = len(data["phi"])
        errors = {}
        if len(data["xbar"]) != m:
            errors["xbar"] = [
                "Expected {0} entries, got {1}.".format(m, len(data["xbar"]))
            ]
        for k, atom in enumerate(data["phi"]):
            self._check_quadratic(atom, m, "phi.{0}".format(k), errors)
        h = data["h"]
        if h["kind"] == "sum":
            if not h.get("parts"):
                errors["h.parts"] = ["A sum needs parts."]
            for k, part in enumerate(h.get("parts", [])):
                self._check_part(part, n, "h.parts.{0}".format(k), errors)
        else:
            if "parts" in h:
                errors["h.parts"] = ["Only a sum has parts."]
            self._check_part(h, n, "h", errors)
        options = data.get("options", {})
        ri_point = options.get("ri_point_override")
        if ri_point is not None and len(ri_point) != n:
            errors["options.ri_point_override"] = [
                "Expected {0} entries, got {1}.".format(n, len(ri_point))
            ]
        if errors:
            raise ValidationError(errors)

    @post_load
    def make_spec(self, data, **kwargs):
        """Build the problem spec."""
        return ProblemSpec(**data)
