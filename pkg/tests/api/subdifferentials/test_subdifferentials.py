# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Test subdifferential models."""

import numpy as np
import pytest

from vucalc.calculus.manifolds import ManifoldModel
from vucalc.errors import (
    DimensionMismatchError,
    GeneratorBudgetExceededError,
    InvalidParameterError,
)
from vucalc.subdifferentials.api import (
    NonsmoothAtom,
    SubdifferentialModel,
    active_set,
    lift,
    minkowski_difference_span,
    minkowski_sum,
    product,
    pushforward,
    subdifferential,
    zero_set,
)


def test_active_set():
    """Test exact ties and the relative tolerance."""
    assert active_set([1.0, 1.0, 0.5]) == (0, 1)
    assert active_set([1e8, 1e8 - 0.5]) == (0, 1)
    assert active_set([1.0, 1.0 - 1e-6]) == (0,)
    assert active_set([1.0, 1.0 - 1e-6], active_tol=1e-5) == (0, 1)


def test_zero_set():
    """Test zero detection."""
    assert zero_set([0.0, 1e-12, 1.0]) == (0, 1)
    assert zero_set([0.0, 1e-12, 1.0], zero_tol=1e-14) == (0,)


def test_coordinate_max_model():
    """Test the model of the max at a tie."""
    model = subdifferential(NonsmoothAtom.coordinate_max(), [0.0, 0.0, -1.0])
    np.testing.assert_array_equal(
        model.generators, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
    )
    np.testing.assert_allclose(model.ri_point, [0.5, 0.5, 0.0])


def test_l1_model():
    """Test the sign vertices of τ‖·‖₁."""
    model = subdifferential(NonsmoothAtom.l1_norm(2.0), [1.0, 0.0, 0.0])
    assert model.count == 4
    assert set(map(tuple, model.generators)) == {
        (2.0, 2.0, 2.0),
        (2.0, 2.0, -2.0),
        (2.0, -2.0, 2.0),
        (2.0, -2.0, -2.0),
    }
    np.testing.assert_allclose(model.ri_point, [2.0, 0.0, 0.0])


def test_generator_budget():
    """Test that the vertex enumeration respects the budget."""
    with pytest.raises(GeneratorBudgetExceededError) as ex:
        subdifferential(NonsmoothAtom.l1_norm(), np.zeros(3), 4)
    assert ex.value.code == 4
    assert ex.value.count == 8


def test_generator_budget_from_config(app):
    """Test the configured generator budget."""
    app.config["VUCALC_GENERATOR_BUDGET"] = 2
    with pytest.raises(GeneratorBudgetExceededError):
        subdifferential(NonsmoothAtom.l1_norm(), np.zeros(2))


def test_smooth_linear_and_abs_value():
    """Test the singleton model and the scalar absolute value."""
    atom = NonsmoothAtom.smooth_linear([1.0, 2.0])
    model = subdifferential(atom, [3.0, 4.0])
    assert model.count == 1
    np.testing.assert_array_equal(model.ri_point, [1.0, 2.0])
    atom = NonsmoothAtom.abs_value(3.0)
    assert atom.eval([-2.0]) == 6.0
    with pytest.raises(DimensionMismatchError):
        atom.eval([1.0, 2.0])


def test_nonsmooth_atom_gradient():
    """Test the unique subgradient off the kink set."""
    atom = NonsmoothAtom.coordinate_max()
    np.testing.assert_array_equal(atom.gradient([1.0, 2.0]), [0.0, 1.0])
    assert atom.gradient([2.0, 2.0]) is None
    assert atom.is_kink([2.0, 2.0])
    l1 = NonsmoothAtom.l1_norm(0.5)
    np.testing.assert_array_equal(l1.gradient([1.0, -3.0]), [0.5, -0.5])
    assert l1.gradient([1.0, 0.0]) is None
    assert l1.eval([1.0, -3.0]) == 2.0


def test_nonsmooth_atom_errors():
    """Test invalid atoms."""
    with pytest.raises(InvalidParameterError):
        NonsmoothAtom("median")
    with pytest.raises(InvalidParameterError):
        NonsmoothAtom.l1_norm(0.0)
    with pytest.raises(InvalidParameterError):
        NonsmoothAtom.coordinate_max(active_tol=-1.0)


def test_model_weights():
    """Test custom ri-point weights."""
    model = SubdifferentialModel([[1.0, 0.0], [0.0, 1.0]])
    other = model.with_weights([0.25, 0.75])
    np.testing.assert_allclose(other.ri_point, [0.25, 0.75])
    with pytest.raises(InvalidParameterError):
        model.with_weights([1.0, 0.0])
    with pytest.raises(InvalidParameterError):
        SubdifferentialModel(np.zeros((0, 2)))


def test_minkowski_difference_span():
    """Test that the centered generators sum to zero."""
    model = SubdifferentialModel([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    D = minkowski_difference_span(model)
    assert D.shape == (2, 3)
    np.testing.assert_allclose(D.sum(axis=1), 0.0, atol=1e-15)


def test_pushforward():
    """Test J^T ∂h for the absolute value as max(x, −x)."""
    model = SubdifferentialModel([[1.0, 0.0], [0.0, 1.0]])
    image = pushforward(model, [[1.0], [-1.0]])
    np.testing.assert_array_equal(image.generators, [[1.0], [-1.0]])
    np.testing.assert_array_equal(image.ri_point, [0.0])
    with pytest.raises(DimensionMismatchError):
        pushforward(model, [[1.0]])


def test_minkowski_sum_and_product():
    """Test sums and products of models."""
    a = SubdifferentialModel([[1.0, 0.0], [-1.0, 0.0]])
    b = SubdifferentialModel.singleton([0.0, 3.0])
    total = minkowski_sum([a, b])
    assert total.count == 2
    np.testing.assert_allclose(total.ri_point, a.ri_point + b.ri_point)
    with pytest.raises(DimensionMismatchError):
        minkowski_sum([a, SubdifferentialModel.singleton([1.0])])
    with pytest.raises(GeneratorBudgetExceededError):
        minkowski_sum([a, a, a], generator_budget=4)

    prod = product([SubdifferentialModel.singleton([1.0]), a])
    assert prod.ambient_dim == 3
    np.testing.assert_array_equal(
        prod.generators, [[1.0, 1.0, 0.0], [1.0, -1.0, 0.0]]
    )


def test_lift_and_restriction():
    """Test lifted models and indicator-restricted models."""
    model = SubdifferentialModel([[1.0], [-1.0]])
    lifted = lift(model, [2], 3)
    np.testing.assert_array_equal(
        lifted.generators, [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]
    )
    restricted = model.restricted_to(ManifoldModel.whole_space(1))
    assert not restricted.horizon_trivial
    assert restricted.manifold is not None
    with pytest.raises(DimensionMismatchError):
        model.restricted_to(ManifoldModel.whole_space(2))
