# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Generator representations of subdifferentials of the outer functions."""

import itertools

import numpy as np

from ..errors import (
    DimensionMismatchError,
    GeneratorBudgetExceededError,
    InvalidParameterError,
)
from ..proxies import get_setting
from ..subspaces.api import as_matrix, as_vector

COORDINATE_MAX = "coordinate_max"
L1_NORM = "l1_norm"
ABS_VALUE = "abs_value"
SMOOTH_LINEAR = "smooth_linear"

NONSMOOTH_KINDS = (COORDINATE_MAX, L1_NORM, ABS_VALUE, SMOOTH_LINEAR)


def _check_budget(count, generator_budget):
    budget = int(get_setting("VUCALC_GENERATOR_BUDGET", generator_budget))
    if count > budget:
        raise GeneratorBudgetExceededError(count, budget)


class SubdifferentialModel(object):
    """``∂h(z) = conv(generators)`` with a relative-interior point ḡ.

    The ri-point is the convex combination of the generators with strictly
    positive ``weights``, the barycenter by default.
    """

    def __init__(
        self, generators, weights=None, horizon_trivial=True, manifold=None
    ):
        """Constructor.

        :param generators: p×n array, one generator per row (p ≥ 1).
        :param weights: strictly positive weights summing to one.
        :param horizon_trivial: whether ∂^∞h(z) = {0}.
        :param manifold: normal/tangent model of M for an indicator-restricted
            function ``h_M``.
        """
        generators = np.array(generators, dtype=float)
        if generators.ndim == 1:
            generators = generators.reshape(1, -1)
        self.generators = as_matrix(generators, "generators")
        p = self.generators.shape[0]
        if p == 0:
            raise InvalidParameterError(
                "A model needs at least one generator."
            )
        if weights is None:
            weights = np.full(p, 1.0 / p)
        weights = as_vector(weights, p, "weights")
        if np.any(weights <= 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise InvalidParameterError(
                "ri-point weights must be positive and sum to one."
            )
        self.weights = weights
        self.ri_point = as_vector(weights @ self.generators, name="ri_point")
        self.horizon_trivial = bool(horizon_trivial)
        self.manifold = manifold

    @classmethod
    def singleton(cls, g):
        """``{g}``, the subdifferential at a smooth point."""
        return cls(as_vector(g, name="g").reshape(1, -1))

    @property
    def ambient_dim(self):
        """n."""
        return self.generators.shape[1]

    @property
    def count(self):
        """Number of generators."""
        return self.generators.shape[0]

    @property
    def generator_matrix(self):
        """n×p matrix of generators as columns."""
        return self.generators.T

    def with_weights(self, weights):
        """Same generators, another strictly positive ri-point weighting."""
        return SubdifferentialModel(
            self.generators, weights, self.horizon_trivial, self.manifold
        )

    def restricted_to(self, manifold):
        """Model of ``h_M = h + ι_M``, whose horizon is ``N_M``."""
        if manifold.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(
                "manifold", self.ambient_dim, manifold.ambient_dim
            )
        return SubdifferentialModel(
            self.generators, self.weights, False, manifold
        )

    def __repr__(self):
        """Representation."""
        return "SubdifferentialModel(n={0}, generators={1})".format(
            self.ambient_dim, self.count
        )


def active_set(y, active_tol=None):
    """Indices ``i`` with ``max(y) - y_i <= active_tol * (1 + |max(y)|)``."""
    y = as_vector(y, name="y")
    active_tol = get_setting("VUCALC_ACTIVE_TOL", active_tol)
    top = y.max()
    return tuple(
        int(i) for i in np.flatnonzero(top - y <= active_tol * (1 + abs(top)))
    )


def zero_set(z, zero_tol=None):
    """Indices ``i`` with ``|z_i| <= zero_tol``."""
    z = as_vector(z, name="z")
    zero_tol = get_setting("VUCALC_ZERO_TOL", zero_tol)
    return tuple(int(i) for i in np.flatnonzero(np.abs(z) <= zero_tol))


class NonsmoothAtom(object):
    """A finite convex outer function with an exact subdifferential."""

    def __init__(
        self, kind, tau=None, weights=None, active_tol=None, zero_tol=None
    ):
        """Constructor.

        :param kind: one of :data:`NONSMOOTH_KINDS`.
        :param tau: positive scale of ``l1_norm`` and ``abs_value``.
        :param weights: ``w`` of ``smooth_linear``.
        """
        if kind not in NONSMOOTH_KINDS:
            raise InvalidParameterError(
                "Unknown nonsmooth atom '{0}'.".format(kind)
            )
        if kind in (L1_NORM, ABS_VALUE):
            if tau is None or not float(tau) > 0:
                raise InvalidParameterError("tau must be positive.")
            tau = float(tau)
        if kind == SMOOTH_LINEAR:
            weights = as_vector(weights, name="w")
        self.kind = kind
        self.tau = tau
        self.weights = weights
        self.active_tol = get_setting("VUCALC_ACTIVE_TOL", active_tol)
        self.zero_tol = get_setting("VUCALC_ZERO_TOL", zero_tol)
        if self.active_tol <= 0 or self.zero_tol <= 0:
            raise InvalidParameterError("Tolerances must be positive.")

    @classmethod
    def coordinate_max(cls, **kwargs):
        """``y ↦ max_i y_i``."""
        return cls(COORDINATE_MAX, **kwargs)

    @classmethod
    def l1_norm(cls, tau=1.0, **kwargs):
        """``z ↦ τ‖z‖₁``."""
        return cls(L1_NORM, tau=tau, **kwargs)

    @classmethod
    def abs_value(cls, tau=1.0, **kwargs):
        """``z ↦ τ|z|`` on ℝ."""
        return cls(ABS_VALUE, tau=tau, **kwargs)

    @classmethod
    def smooth_linear(cls, w, **kwargs):
        """``z ↦ w^T z``."""
        return cls(SMOOTH_LINEAR, weights=w, **kwargs)

    def _check(self, z):
        z = as_vector(z, name="z")
        if self.kind == ABS_VALUE and z.shape[0] != 1:
            raise DimensionMismatchError("z", 1, z.shape[0])
        if self.kind == SMOOTH_LINEAR and z.shape[0] != self.weights.shape[0]:
            expected = self.weights.shape[0]
            raise DimensionMismatchError("z", expected, z.shape[0])
        return z

    def eval(self, z):
        """Value at ``z``."""
        z = self._check(z)
        if self.kind == COORDINATE_MAX:
            return float(z.max())
        if self.kind == SMOOTH_LINEAR:
            return float(self.weights @ z)
        return self.tau * float(np.abs(z).sum())

    def kinks(self, z):
        """Indices making ``z`` a nonsmooth point: ties or zeros."""
        z = self._check(z)
        if self.kind == COORDINATE_MAX:
            active = active_set(z, self.active_tol)
            return active if len(active) > 1 else ()
        if self.kind == SMOOTH_LINEAR:
            return ()
        return zero_set(z, self.zero_tol)

    def is_kink(self, z):
        """Whether the activity at ``z`` is ambiguous at tolerance."""
        return bool(self.kinks(z))

    def gradient(self, z):
        """The unique subgradient at ``z``, ``None`` on the kink set."""
        z = self._check(z)
        if self.is_kink(z):
            return None
        if self.kind == COORDINATE_MAX:
            g = np.zeros(z.shape[0])
            g[int(np.argmax(z))] = 1.0
            return g
        if self.kind == SMOOTH_LINEAR:
            return np.array(self.weights)
        return self.tau * np.sign(z)

    def __repr__(self):
        """Representation."""
        return "NonsmoothAtom({0})".format(self.kind)


def subdifferential(atom, z, generator_budget=None):
    """Exact generator model of ``∂h(z)``.

    ``l1_norm`` and ``abs_value`` enumerate the sign vertices of the box over
    the zero coordinates, at most ``generator_budget`` of them.
    """
    z = atom._check(z)
    n = z.shape[0]
    if atom.kind == COORDINATE_MAX:
        active = list(active_set(z, atom.active_tol))
        return SubdifferentialModel(np.eye(n)[active])
    if atom.kind == SMOOTH_LINEAR:
        return SubdifferentialModel.singleton(atom.weights)
    zeros = list(zero_set(z, atom.zero_tol))
    _check_budget(2 ** len(zeros), generator_budget)
    base = np.sign(z)
    base[zeros] = 0.0
    generators = []
    for signs in itertools.product((1.0, -1.0), repeat=len(zeros)):
        g = np.array(base)
        g[zeros] = signs
        generators.append(atom.tau * g)
    return SubdifferentialModel(np.array(generators).reshape(-1, n))


def minkowski_difference_span(model):
    """n×p matrix of columns ``g_j − ḡ``."""
    return model.generator_matrix - model.ri_point[:, np.newaxis]


def pushforward(model, J):
    """Image model ``J^T ∂h`` over ℝ^m for an n×m Jacobian ``J``."""
    J = as_matrix(J, "J")
    if J.shape[0] != model.ambient_dim:
        raise DimensionMismatchError("J rows", model.ambient_dim, J.shape[0])
    return SubdifferentialModel(
        model.generators @ J, model.weights, model.horizon_trivial
    )


def _combine(models, generator_budget, combine):
    models = list(models)
    if not models:
        raise InvalidParameterError("At least one model is required.")
    _check_budget(
        int(np.prod([m.count for m in models], dtype=float)), generator_budget
    )
    generators, weights = [], []
    for picks in itertools.product(*[range(m.count) for m in models]):
        generators.append(
            combine([m.generators[k] for m, k in zip(models, picks)])
        )
        weights.append(np.prod([m.weights[k] for m, k in zip(models, picks)]))
    weights = np.array(weights)
    return SubdifferentialModel(
        np.array(generators),
        weights / weights.sum(),
        all(m.horizon_trivial for m in models),
    )


def minkowski_sum(models, generator_budget=None):
    """Model of ``∂h_1 + … + ∂h_k``; the ri-point is the sum of ri-points."""
    models = list(models)
    n = models[0].ambient_dim if models else 0
    for m in models:
        if m.ambient_dim != n:
            raise DimensionMismatchError("model", n, m.ambient_dim)
    return _combine(models, generator_budget, lambda gs: np.sum(gs, axis=0))


def product(models, generator_budget=None):
    """Model of ``∂h_1 × … × ∂h_k`` for a separable ``h``."""
    return _combine(models, generator_budget, np.concatenate)


def lift(model, indices, ambient_dim):
    """Zero-padded model of ``y ↦ h(y[indices])`` over ℝ^N."""
    indices = list(indices)
    if len(indices) != model.ambient_dim:
        raise DimensionMismatchError(
            "indices", model.ambient_dim, len(indices)
        )
    generators = np.zeros((model.count, ambient_dim))
    generators[:, indices] = model.generators
    return SubdifferentialModel(
        generators, model.weights, model.horizon_trivial
    )
