# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Problem spec loaders.

A spec is parsed as JSON, checked against the JSON schema and then loaded
with marshmallow; every failure is reported as a
:class:`~vucalc.errors.ProblemSpecValidationError` listing the offending
fields.
"""

import os
from functools import lru_cache

import simplejson as json
from jsonschema import Draft4Validator
from marshmallow import ValidationError

from vucalc.errors import ProblemSpecValidationError

from .jsonschemas.problem import ProblemSchemaV1

SCHEMA_PATH = os.path.join(
    os.path.dirname(os.path.dirname(__file__)),
    "schemas",
    "problems",
    "problem-v1.0.0.json",
)


@lru_cache(maxsize=None)
def _validator(path):
    with open(path, "rt") as fp:
        return Draft4Validator(json.load(fp))


def _flatten(messages, parents=()):
    """Flatten nested marshmallow messages into field errors."""
    if isinstance(messages, dict):
        for key in sorted(messages, key=str):
            yield from _flatten(messages[key], parents + (str(key),))
        return
    for message in messages:
        if isinstance(message, (dict, list)):
            yield from _flatten(message, parents)
        else:
            yield dict(field=".".join(parents) or "(root)", message=message)


def problem_loader(schema_class, schema_path=SCHEMA_PATH):
    """Loader of problem specs given as JSON text."""

    def json_loader(text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as jde:
            errors = [
                dict(
                    field="line {0}, column {1}".format(jde.lineno, jde.colno),
                    message=jde.msg,
                )
            ]
            raise ProblemSpecValidationError(errors, original_exception=jde)

        # JSON schema validation
        errors = [
            dict(
                field=".".join(str(x) for x in error.path) or "(root)",
                message=error.message,
            )
            for error in sorted(
                _validator(schema_path).iter_errors(data),
                key=lambda e: [str(x) for x in e.path],
            )
        ]
        if errors:
            raise ProblemSpecValidationError(errors)

        try:
            return schema_class().load(data)
        except ValidationError as ve:
            raise ProblemSpecValidationError(
                list(_flatten(ve.messages)), original_exception=ve
            )

    return json_loader


problem_loader_v1 = problem_loader(ProblemSchemaV1)


def load_problem(path):
    """Load the problem spec stored at ``path``."""
    with open(path, "rt") as fp:
        return problem_loader_v1(fp.read())


def dump_problem(spec):
    """Serialize a problem spec as JSON text."""
    return json.dumps(spec.dump(), sort_keys=True, indent=2)
