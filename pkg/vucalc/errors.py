# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""vucalc exceptions.

The ``code`` of every exception is the exit status of the ``vucalc`` command
line: 2 for invalid input, 3 for a violated hypothesis, 4 for a numerical
failure and 5 for a verification mismatch.
"""

import click
import simplejson as json


def _as_list(vector):
    """Return a plain list out of a numpy vector (or ``None``)."""
    if vector is None:
        return None
    return [float(x) for x in vector]


class VuCalcException(click.ClickException):
    """Base Exception for vucalc, inherit, don't raise."""

    code = 1
    description = None

    def __init__(self, description=None, errors=None, **kwargs):
        """Initialize exception."""
        if description is not None:
            self.description = description
        self.errors = errors
        super().__init__(self.description or type(self).__name__)
        self.exit_code = self.code

    @property
    def name(self):
        """The error name."""
        return type(self).__name__

    @property
    def message(self):
        """The formatted description, also returned by ``str()``."""
        return self.format_message()

    @message.setter
    def message(self, value):
        """Replace the description."""
        self.description = value

    def format_message(self):
        """Message rendered by click."""
        return self.description or self.name

    def get_errors(self):
        """Get the list of detailed errors."""
        return self.errors

    def get_body(self):
        """Get the error body, as a JSON document."""
        body = dict(
            status=self.code,
            message=self.format_message(),
            error_module="vucalc",
            error_class=self.name,
        )
        if self.errors:
            body["errors"] = self.get_errors()
        return json.dumps(body, sort_keys=True)


class InvalidParameterError(VuCalcException):
    """Invalid parameter."""

    code = 2


class DimensionMismatchError(VuCalcException):
    """Operands of incompatible dimensions."""

    code = 2
    description = (
        "Dimension mismatch for {name}: expected {expected}, got {actual}."
    )

    def __init__(self, name, expected, actual, **kwargs):
        """Initialize DimensionMismatchError exception.

        :param name: Name of the offending operand.
        :param expected: Expected dimension or shape.
        :param actual: Received dimension or shape.
        """
        super().__init__(**kwargs)
        self.description = self.description.format(
            name=name, expected=expected, actual=actual
        )


class NonFiniteInputError(VuCalcException):
    """An input contains NaN or infinite entries."""

    code = 2
    description = "{name} contains NaN or infinite entries."

    def __init__(self, name, **kwargs):
        """Initialize NonFiniteInputError exception."""
        super().__init__(**kwargs)
        self.description = self.description.format(name=name)


class ProblemSpecValidationError(VuCalcException):
    """The problem spec does not parse or validate."""

    code = 2

    def __init__(self, errors, original_exception=None, **kwargs):
        """Initialize ProblemSpecValidationError exception.

        :param errors: list of ``dict(field=..., message=...)``.
        """
        lines = ["{field}: {message}".format(**e) for e in errors]
        super().__init__(
            description="Invalid problem spec.\n  " + "\n  ".join(lines),
            errors=errors,
            **kwargs
        )
        self.original_exception = original_exception


class MissingHorizonInfoError(VuCalcException):
    """Neither a horizon flag nor a manifold is attached to a model."""

    code = 2
    description = (
        "Nondegeneracy needs either a trivial horizon subdifferential or "
        "an attached manifold."
    )


class FastTrackDimensionError(VuCalcException):
    """A fast track needs nontrivial U and V spaces."""

    code = 2
    description = (
        "fast-track requires dim V ≥ 1 and dim U ≥ 1 "
        "(got dim V = {v_dim}, dim U = {u_dim})."
    )

    def __init__(self, u_dim, v_dim, **kwargs):
        """Initialize FastTrackDimensionError exception."""
        super().__init__(**kwargs)
        self.u_dim = u_dim
        self.v_dim = v_dim
        self.description = self.description.format(u_dim=u_dim, v_dim=v_dim)


class HypothesisViolationError(VuCalcException):
    """A hypothesis of a calculus rule does not hold."""

    code = 3
    witness = None

    def witness_block(self):
        """Serializable block describing the violation."""
        return dict(
            error=self.name,
            message=self.format_message(),
            witness=_as_list(self.witness),
        )


class TransversalityViolatedError(HypothesisViolationError):
    """Φ is not transversal to the manifold at Φ(x̄)."""

    description = (
        "Transversality does not hold: witness z = ({witness}) lies in the "
        "normal space and J^T z = 0 within {tol:.3g}."
    )

    def __init__(self, witness, tol, **kwargs):
        """Initialize TransversalityViolatedError exception.

        :param witness: unit vector of the normal space annihilated by J^T.
        :param tol: rank tolerance of the check.
        """
        super().__init__(**kwargs)
        self.witness = witness
        self.description = self.description.format(
            witness=", ".join("{:.6g}".format(x) for x in witness), tol=tol
        )


class AffineDependenceError(HypothesisViolationError):
    """The active gradients of a finite max are affinely dependent."""

    description = (
        "Active gradients at indices {active} are affinely dependent "
        "(rank {rank} < {expected})."
    )

    def __init__(self, active, rank, expected, **kwargs):
        """Initialize AffineDependenceError exception."""
        super().__init__(**kwargs)
        self.description = self.description.format(
            active=list(active), rank=rank, expected=expected
        )


class SumRuleConditionViolatedError(HypothesisViolationError):
    """The normal spaces of the summands are not in direct sum."""

    description = (
        "The sum condition fails: the normal spaces are not in direct sum "
        "(rank {rank} < {expected})."
    )

    def __init__(self, rank, expected, witness=None, **kwargs):
        """Initialize SumRuleConditionViolatedError exception."""
        super().__init__(**kwargs)
        self.witness = witness
        self.description = self.description.format(
            rank=rank, expected=expected
        )


class PdgInconsistentError(HypothesisViolationError):
    """The PDG structure does not describe f at x̄."""

    description = "PDG structure is inconsistent at x̄: {failures}."

    def __init__(self, report, **kwargs):
        """Initialize PdgInconsistentError exception.

        :param report: the failing consistency report.
        """
        super().__init__(**kwargs)
        self.report = report
        failures = [
            "{0}[{1}] gap {2:.3g}".format(kind, c.index, c.gap)
            for kind, checks in (
                ("f", report.f_checks),
                ("phi", report.phi_checks),
            )
            for c in checks
            if not c.holds
        ]
        self.description = self.description.format(
            failures=", ".join(failures)
        )


class NumericalFailureError(VuCalcException):
    """A numerical procedure failed."""

    code = 4


class NewtonDivergedError(NumericalFailureError):
    """The fast-track Newton solve did not converge."""

    description = (
        "Newton diverged at |u| = {u_norm:.3g} after {iterations} "
        "iterations (residual {residual:.3g}): {reason}."
    )

    def __init__(self, u_norm, iterations, residual, reason, **kwargs):
        """Initialize NewtonDivergedError exception."""
        super().__init__(**kwargs)
        self.iterations = iterations
        self.residual = residual
        self.description = self.description.format(
            u_norm=u_norm, iterations=iterations, residual=residual,
            reason=reason,
        )


class SingularNewtonJacobianError(NumericalFailureError):
    """The Newton Jacobian V(u)^T V̄ is singular."""

    description = "Singular Newton Jacobian at iteration {iteration}."

    def __init__(self, iteration, **kwargs):
        """Initialize SingularNewtonJacobianError exception."""
        super().__init__(**kwargs)
        self.description = self.description.format(iteration=iteration)


class SingularVtVError(NumericalFailureError):
    """V(u)^T V̄ is singular in the track Jacobian."""

    description = "V(u)^T V̄ is singular: the track Jacobian is undefined."


class RankDeficientVBarError(NumericalFailureError):
    """V̄ columns are linearly dependent."""

    description = "V̄ has {columns} columns but numerical rank {rank}."

    def __init__(self, columns, rank, **kwargs):
        """Initialize RankDeficientVBarError exception."""
        super().__init__(**kwargs)
        self.description = self.description.format(columns=columns, rank=rank)


class GeneratorBudgetExceededError(NumericalFailureError):
    """A generator representation would be too large."""

    description = "{count} generators exceed the budget of {budget}."

    def __init__(self, count, budget, **kwargs):
        """Initialize GeneratorBudgetExceededError exception."""
        super().__init__(**kwargs)
        self.count = count
        self.budget = budget
        self.description = self.description.format(count=count, budget=budget)


class InsufficientSamplesError(NumericalFailureError):
    """Too many sampled points fall on kinks."""

    description = (
        "{kinks} of {total} sampled points fall on kinks "
        "(limit {limit:.0%})."
    )

    def __init__(self, kinks, total, limit, **kwargs):
        """Initialize InsufficientSamplesError exception."""
        super().__init__(**kwargs)
        self.description = self.description.format(
            kinks=kinks, total=total, limit=limit
        )


class VerificationMismatchError(VuCalcException):
    """Analytic results disagree with the oracles."""

    code = 5
    description = "Verification failed: {failures}."

    def __init__(self, comparisons, **kwargs):
        """Initialize VerificationMismatchError exception.

        :param comparisons: mapping name -> comparison dict with ``value``,
            ``tolerance`` and ``holds``.
        """
        super().__init__(**kwargs)
        self.comparisons = comparisons
        failures = [
            "{0} = {1} > {2}".format(name, c["value"], c["tolerance"])
            for name, c in sorted(comparisons.items())
            if c is not None and not c["holds"]
        ]
        self.description = self.description.format(
            failures="; ".join(failures)
        )
