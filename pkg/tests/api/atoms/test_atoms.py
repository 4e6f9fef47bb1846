# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Test smooth atoms and maps."""

import numpy as np
import pytest

from vucalc.atoms.api import (
    CallbackAtom,
    ComposedAtom,
    QuadraticAtom,
    SmoothMap,
    SumAtom,
)
from vucalc.errors import DimensionMismatchError, InvalidParameterError

from tests.helpers import random_quadratic


def test_quadratic_atom():
    """Test value, gradient and Hessian of a quadratic."""
    q = QuadraticAtom([[2.0, 0.0], [0.0, 4.0]], [1.0, -1.0], 3.0)
    assert q.eval([1.0, 2.0]) == 11.0
    np.testing.assert_array_equal(q.grad([1.0, 2.0]), [3.0, 7.0])
    np.testing.assert_array_equal(q.hess([1.0, 2.0]), [[2.0, 0.0], [0.0, 4.0]])


def test_quadratic_atom_is_symmetrized():
    """Test that A is replaced by its symmetric part."""
    q = QuadraticAtom([[0.0, 2.0], [0.0, 0.0]], [0.0, 0.0])
    np.testing.assert_array_equal(q.A, [[0.0, 1.0], [1.0, 0.0]])


def test_squared_residual():
    """Test ½‖Ax − b‖²."""
    q = QuadraticAtom.squared_residual([[1.0, 2.0], [3.0, 4.0]], [1.0, 1.0])
    assert q.eval([1.0, 0.0]) == pytest.approx(2.0)
    np.testing.assert_allclose(q.grad([1.0, 0.0]), [6.0, 8.0])


def test_quadratic_arithmetic():
    """Test that sums and multiples of quadratics stay quadratic."""
    p = QuadraticAtom.coordinate(2, 0)
    q = QuadraticAtom([[2.0, 0.0], [0.0, 0.0]], [0.0, 1.0], 1.0)
    s = p + 2 * q
    assert isinstance(s, QuadraticAtom)
    assert s.eval([1.0, 1.0]) == p.eval([1.0, 1.0]) + 2 * q.eval([1.0, 1.0])
    d = q - p
    assert isinstance(d, QuadraticAtom)
    assert d.eval([3.0, 0.0]) == q.eval([3.0, 0.0]) - 3.0
    assert -p == QuadraticAtom.affine([-1.0, 0.0])
    with pytest.raises(DimensionMismatchError):
        p + QuadraticAtom.coordinate(3, 0)


def test_embed():
    """Test a quadratic acting on a slice of a larger space."""
    q = QuadraticAtom([[2.0]], [1.0]).embed(3, [2])
    assert q.dim == 3
    assert q.eval([5.0, 6.0, 1.0]) == 2.0
    with pytest.raises(DimensionMismatchError):
        QuadraticAtom([[2.0]], [1.0]).embed(3, [0, 1])


def test_callback_and_sum_atoms():
    """Test user callbacks mixed with quadratics."""
    cubic = CallbackAtom(
        1,
        lambda x: x[0] ** 3,
        lambda x: [3 * x[0] ** 2],
        lambda x: [[6 * x[0]]],
    )
    s = cubic + QuadraticAtom.coordinate(1, 0)
    assert isinstance(s, SumAtom)
    assert s.eval([2.0]) == 10.0
    np.testing.assert_array_equal(s.grad([2.0]), [13.0])
    np.testing.assert_array_equal(s.hess([2.0]), [[12.0]])
    with pytest.raises(DimensionMismatchError):
        cubic.eval([1.0, 2.0])


def test_composed_atom():
    """Test q∘Φ for q(z) = ½ z² and Φ(x) = x1² + x2."""
    inner = SmoothMap([QuadraticAtom([[2.0, 0.0], [0.0, 0.0]], [0.0, 1.0])])
    f = ComposedAtom(QuadraticAtom([[1.0]], [0.0]), inner)
    x = [1.0, 1.0]
    assert f.eval(x) == 2.0
    np.testing.assert_allclose(f.grad(x), [4.0, 2.0])
    np.testing.assert_allclose(f.hess(x), [[8.0, 2.0], [2.0, 1.0]])
    with pytest.raises(DimensionMismatchError):
        ComposedAtom(QuadraticAtom.coordinate(2, 0), inner)


def test_smooth_map():
    """Test values and Jacobians of smooth maps."""
    phi = SmoothMap.identity(3)
    np.testing.assert_array_equal(phi.jacobian([1.0, 2.0, 3.0]), np.eye(3))
    q = QuadraticAtom(np.eye(3), np.zeros(3))
    psi = phi.append(q)
    assert psi.codomain_dim == 4
    np.testing.assert_allclose(psi.eval([1.0, 2.0, 2.0]), [1.0, 2.0, 2.0, 4.5])
    np.testing.assert_allclose(
        psi.jacobian([1.0, 2.0, 2.0])[3], [1.0, 2.0, 2.0]
    )
    stacked = SmoothMap.stack([phi, phi.select([2])])
    assert stacked.codomain_dim == 4
    assert stacked.eval([1.0, 2.0, 3.0])[3] == 3.0
    hessians = psi.component_hessians([0.0, 0.0, 0.0])
    np.testing.assert_array_equal(hessians[3], np.eye(3))


def test_smooth_map_errors():
    """Test the checks of smooth maps."""
    with pytest.raises(InvalidParameterError):
        SmoothMap([])
    assert SmoothMap([], 2).jacobian([0.0, 0.0]).shape == (0, 2)
    with pytest.raises(DimensionMismatchError):
        SmoothMap(
            [QuadraticAtom.coordinate(2, 0), QuadraticAtom.coordinate(3, 0)]
        )


def _central_gradient(f, x, step=1e-5):
    """Central differences of a scalar function."""
    E = np.eye(x.shape[0]) * step
    return np.array([(f(x + e) - f(x - e)) / (2 * step) for e in E])


def test_gradients_match_finite_differences():
    """Test ``grad`` and ``jacobian`` against central differences."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = int(rng.integers(1, 6))
        q = random_quadratic(rng, m)
        phi = SmoothMap([random_quadratic(rng, m) for _ in range(3)])
        atoms = [q, ComposedAtom(random_quadratic(rng, 3), phi)]
        x = rng.standard_normal(m)
        for atom in atoms:
            grad = atom.grad(x)
            error = np.linalg.norm(_central_gradient(atom.eval, x) - grad)
            assert error <= 1e-6 * max(1.0, np.linalg.norm(grad))
        J = phi.jacobian(x)
        for i, row in enumerate(J):
            fd = _central_gradient(lambda y: phi.eval(y)[i], x)
            assert np.linalg.norm(fd - row) <= 1e-6 * max(
                1.0, np.linalg.norm(row)
            )
        d = rng.standard_normal(m)
        gap = q.eval(x + d) - q.eval(x) - q.grad(x) @ d - 0.5 * d @ q.A @ d
        assert abs(gap) <= 1e-10
