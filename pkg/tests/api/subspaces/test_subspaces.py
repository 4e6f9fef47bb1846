# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Test subspaces."""

import numpy as np
import pytest

from vucalc.errors import (
    DimensionMismatchError,
    InvalidParameterError,
    NonFiniteInputError,
    RankDeficientVBarError,
)
from vucalc.subspaces.api import (
    OrthonormalBasis,
    as_vector,
    intersect_subspaces,
    make_vu_pair,
    numerical_rank,
    orthonormal_complement,
    orthonormal_range,
    reconstruct,
    restrict_u,
    restrict_v,
)


def test_orthonormal_range():
    """Test the range of a rank-deficient matrix."""
    B = orthonormal_range([[1.0, 1.0], [0.0, 0.0], [0.0, 0.0]])
    assert B.dim == 1
    assert B.ambient_dim == 3
    np.testing.assert_allclose(B.matrix, [[1.0], [0.0], [0.0]], atol=1e-15)


def test_orthonormal_range_examples():
    """Test that ranges come out with positive leading entries."""
    np.testing.assert_allclose(orthonormal_range([[-2.0]]).matrix, [[1.0]])
    B = orthonormal_range([[1.0, 2.0], [0.0, 0.0], [1.0, 2.0]])
    np.testing.assert_allclose(
        B.matrix, np.array([[1.0], [0.0], [1.0]]) / np.sqrt(2.0), atol=1e-12
    )


def test_orthonormal_range_of_empty_matrix():
    """Test that zero columns give the zero subspace."""
    B = orthonormal_range(np.zeros((4, 0)))
    assert B.dim == 0
    assert B.ambient_dim == 4


def test_rank_tolerance():
    """Test the auto and explicit rank tolerances."""
    M = np.diag([1.0, 1e-9])
    assert orthonormal_range(M).dim == 2
    assert orthonormal_range(M, rank_tol=1e-6).dim == 1
    with pytest.raises(InvalidParameterError):
        orthonormal_range(M, rank_tol=-1.0)


def test_rank_tolerance_from_config(app):
    """Test that the configured rank tolerance is used."""
    app.config["VUCALC_RANK_TOL"] = 1e-6
    assert orthonormal_range(np.diag([1.0, 1e-9])).dim == 1


def test_numerical_rank():
    """Test numerical ranks."""
    assert numerical_rank(np.zeros((0, 3))) == (0, 0.0)
    rank, tol = numerical_rank([[1.0, 2.0], [2.0, 4.0]])
    assert rank == 1
    assert 0 < tol < 1e-12


def test_orthonormal_complement():
    """Test complements, including the trivial ones."""
    B = OrthonormalBasis.coordinates(3, [0])
    C = orthonormal_complement(B)
    assert C.dim == 2
    np.testing.assert_allclose(B.matrix.T @ C.matrix, 0.0, atol=1e-15)
    assert orthonormal_complement(OrthonormalBasis.empty(3)).dim == 3
    assert orthonormal_complement(OrthonormalBasis.full(3)).dim == 0


def test_intersect_subspaces():
    """Test span{e1, e2} ∩ span{e2, e3} = span{e2}."""
    B1 = OrthonormalBasis.coordinates(3, [0, 1])
    B2 = OrthonormalBasis.coordinates(3, [1, 2])
    B = intersect_subspaces([B1, B2])
    np.testing.assert_allclose(B.matrix, [[0.0], [1.0], [0.0]], atol=1e-12)


def test_intersect_trivial_and_idempotent():
    """Test span{e2} ∩ span{e1} = {0} and B ∩ B = B."""
    e1 = OrthonormalBasis.coordinates(2, [0])
    e2 = OrthonormalBasis.coordinates(2, [1])
    assert intersect_subspaces([e2, e1]).dim == 0
    rng = np.random.default_rng(3)
    for k in range(1, 5):
        B = orthonormal_range(rng.standard_normal((5, k)))
        C = intersect_subspaces([B, B])
        assert C.dim == k
        np.testing.assert_allclose(
            C.projector(), B.projector(), atol=1e-10
        )


def test_intersect_subspaces_errors():
    """Test intersections of incompatible or missing bases."""
    with pytest.raises(InvalidParameterError):
        intersect_subspaces([])
    with pytest.raises(DimensionMismatchError):
        intersect_subspaces(
            [OrthonormalBasis.full(2), OrthonormalBasis.full(3)]
        )


def test_non_orthonormal_basis():
    """Test that non-orthonormal columns are rejected."""
    with pytest.raises(InvalidParameterError):
        OrthonormalBasis([[1.0, 1.0], [0.0, 1.0]])


def test_basis_projection():
    """Test projector, projection and membership."""
    B = OrthonormalBasis.coordinates(3, [0, 2])
    np.testing.assert_allclose(B.project([1.0, 2.0, 3.0]), [1.0, 0.0, 3.0])
    assert B.contains([4.0, 0.0, -1.0])
    assert not B.contains([0.0, 1.0, 0.0])
    np.testing.assert_allclose(B.projector(), np.diag([1.0, 0.0, 1.0]))


def test_vu_pair():
    """Test that the projectors of a VU pair sum to the identity."""
    vu = make_vu_pair(OrthonormalBasis.coordinates(2, [0]))
    assert (vu.u_dim, vu.v_dim) == (1, 1)
    np.testing.assert_allclose(vu.proj_u() + vu.proj_v(), np.eye(2))


def test_vu_pair_errors():
    """Test the checks of a VU pair."""
    V = OrthonormalBasis.coordinates(2, [0])
    with pytest.raises(InvalidParameterError):
        make_vu_pair(V, u_basis=OrthonormalBasis.coordinates(2, [0]))
    with pytest.raises(DimensionMismatchError):
        make_vu_pair(V, u_basis=OrthonormalBasis.full(2))


def test_restrict_and_reconstruct():
    """Test x = V̄ x_V + Ū x_U."""
    U = OrthonormalBasis.coordinates(2, [1])
    v_raw = np.array([[2.0], [0.0]])
    x = np.array([3.0, 4.0])
    x_u = restrict_u(x, U)
    x_v = restrict_v(x, v_raw)
    np.testing.assert_allclose(x_u, [4.0])
    np.testing.assert_allclose(x_v, [1.5])
    np.testing.assert_allclose(reconstruct(x_u, x_v, U, v_raw), x)


def test_reconstruct_random_pairs():
    """Test x = V̄ x_V + Ū x_U for random V̄ and x."""
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        k = int(rng.integers(0, n + 1))
        Q = orthonormal_range(rng.standard_normal((n, k))).matrix
        R = np.eye(k) + 0.5 * np.triu(rng.standard_normal((k, k)), 1)
        v_raw = Q @ R
        vu = make_vu_pair(orthonormal_range(v_raw), v_raw)
        x = rng.standard_normal(n)
        x_u = restrict_u(x, vu.u_basis)
        x_v = restrict_v(x, vu.v_raw)
        np.testing.assert_allclose(
            reconstruct(x_u, x_v, vu.u_basis, vu.v_raw), x, atol=1e-9
        )


def test_restrict_v_rank_deficient():
    """Test that a rank-deficient V̄ is rejected."""
    with pytest.raises(RankDeficientVBarError) as ex:
        restrict_v([1.0, 1.0], [[1.0, 2.0], [0.0, 0.0]])
    assert ex.value.code == 4


def test_input_validation():
    """Test non-finite and mis-sized vectors."""
    with pytest.raises(NonFiniteInputError):
        as_vector([1.0, np.nan])
    with pytest.raises(DimensionMismatchError):
        as_vector([1.0, 2.0], 3)
