# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Rank-tolerant dense linear algebra for subspaces.

Bases are stored as column matrices. The rank of a matrix is the number of
its singular values above ``rank_tol``; the ``"auto"`` tolerance is
``max(rows, cols) * eps * sigma_max``.
"""

from collections import namedtuple

import numpy as np
import scipy.linalg

from ..errors import (
    DimensionMismatchError,
    InvalidParameterError,
    NonFiniteInputError,
    RankDeficientVBarError,
)
from ..proxies import get_setting

MACHINE_EPS = np.finfo(float).eps

_SIGN_TOL = 1e-12


def as_matrix(M, name="matrix", rows=None, cols=None):
    """Validate and return ``M`` as a finite 2-d float array."""
    arr = np.array(M, dtype=float)
    if arr.ndim == 1 and arr.size == 0 and rows is not None:
        arr = arr.reshape(rows, 0)
    if arr.ndim != 2:
        raise DimensionMismatchError(name, "a 2-d matrix", arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInputError(name)
    if rows is not None and arr.shape[0] != rows:
        raise DimensionMismatchError(name + " rows", rows, arr.shape[0])
    if cols is not None and arr.shape[1] != cols:
        raise DimensionMismatchError(name + " columns", cols, arr.shape[1])
    arr.setflags(write=False)
    return arr


def as_vector(x, dim=None, name="vector"):
    """Validate and return ``x`` as a finite 1-d float array."""
    arr = np.array(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInputError(name)
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(name, dim, arr.shape[0])
    arr.setflags(write=False)
    return arr


def resolve_rank_tol(singular_values, shape, rank_tol=None, scale=None):
    """Numerical-rank threshold for a matrix of ``shape``.

    :param singular_values: singular values of the matrix.
    :param rank_tol: positive float, ``"auto"`` or ``None`` (configured).
    :param scale: overrides ``sigma_max`` in the auto rule.
    """
    rank_tol = get_setting("VUCALC_RANK_TOL", rank_tol)
    if rank_tol == "auto":
        if scale is None:
            scale = singular_values[0] if len(singular_values) else 0.0
        return max(shape) * MACHINE_EPS * scale
    rank_tol = float(rank_tol)
    if rank_tol <= 0:
        raise InvalidParameterError("rank_tol must be positive or 'auto'.")
    return rank_tol


def numerical_rank(M, rank_tol=None, scale=None):
    """Return ``(rank, tol)`` of ``M``."""
    M = as_matrix(M)
    if 0 in M.shape:
        return 0, 0.0
    s = scipy.linalg.svdvals(M)
    tol = resolve_rank_tol(s, M.shape, rank_tol, scale)
    return int(np.sum(s > tol)), tol


def _normalize_signs(B):
    """Flip columns so that their first nonzero entry is positive."""
    B = np.array(B, dtype=float)
    for k in range(B.shape[1]):
        nonzero = np.flatnonzero(np.abs(B[:, k]) > _SIGN_TOL)
        if nonzero.size and B[nonzero[0], k] < 0:
            B[:, k] = -B[:, k]
    return B


class OrthonormalBasis(object):
    """Orthonormal basis of a subspace of ℝ^n, stored as an n×k matrix."""

    def __init__(self, basis_cols, ambient_dim=None, orth_tol=None):
        """Constructor.

        :param basis_cols: n×k matrix with orthonormal columns (k may be 0).
        :param ambient_dim: n, required when ``basis_cols`` is empty.
        """
        if ambient_dim is not None and np.size(basis_cols) == 0:
            basis_cols = np.zeros((ambient_dim, 0))
        matrix = as_matrix(
            _normalize_signs(as_matrix(basis_cols, "basis", rows=ambient_dim)),
            "basis",
        )
        orth_tol = get_setting("VUCALC_ORTH_TOL", orth_tol)
        k = matrix.shape[1]
        gap = np.max(np.abs(matrix.T @ matrix - np.eye(k))) if k else 0.0
        if gap > orth_tol:
            raise InvalidParameterError(
                "Basis columns are not orthonormal "
                "(deviation {0:.3g}).".format(gap)
            )
        self._matrix = matrix

    @classmethod
    def empty(cls, ambient_dim):
        """The zero subspace of ℝ^n."""
        return cls(np.zeros((ambient_dim, 0)), ambient_dim=ambient_dim)

    @classmethod
    def full(cls, ambient_dim):
        """The whole space ℝ^n with the canonical basis."""
        return cls(np.eye(ambient_dim), ambient_dim=ambient_dim)

    @classmethod
    def coordinates(cls, ambient_dim, indices):
        """``span{e_i : i in indices}``."""
        return cls(
            np.eye(ambient_dim)[:, sorted(indices)], ambient_dim=ambient_dim
        )

    @property
    def matrix(self):
        """The read-only n×k basis matrix."""
        return self._matrix

    @property
    def ambient_dim(self):
        """n."""
        return self._matrix.shape[0]

    @property
    def dim(self):
        """k."""
        return self._matrix.shape[1]

    def projector(self):
        """The orthogonal projector ``B B^T``."""
        return self._matrix @ self._matrix.T

    def project(self, x):
        """Orthogonal projection of ``x`` onto the subspace."""
        x = as_vector(x, self.ambient_dim, "x")
        return self._matrix @ (self._matrix.T @ x)

    def contains(self, x, tol=1e-10):
        """Whether ``x`` lies in the subspace up to ``tol``."""
        x = as_vector(x, self.ambient_dim, "x")
        return bool(np.linalg.norm(x - self.project(x)) <= tol)

    def for_json(self):
        """Rows of the basis matrix."""
        return self._matrix.tolist()

    def __repr__(self):
        """Representation."""
        return "OrthonormalBasis(ambient_dim={0}, dim={1})".format(
            self.ambient_dim, self.dim
        )


class VuPair(
    namedtuple("VuPair", ["ambient_dim", "u_basis", "v_basis", "v_raw"])
):
    """U-basis, orthonormal V-basis and raw V̄ columns at a point."""

    __slots__ = ()

    @property
    def u_dim(self):
        """dim U."""
        return self.u_basis.dim

    @property
    def v_dim(self):
        """dim V."""
        return self.v_basis.dim

    def proj_u(self):
        """Projector onto U."""
        return self.u_basis.projector()

    def proj_v(self):
        """Projector onto V."""
        return self.v_basis.projector()


def make_vu_pair(v_basis, v_raw=None, u_basis=None, vu_orth_tol=None):
    """Assemble and check a :class:`VuPair`.

    :param v_basis: orthonormal basis of V.
    :param v_raw: raw V̄ columns, defaults to the columns of ``v_basis``.
    :param u_basis: basis of U, defaults to the complement of ``v_basis``.
    """
    n = v_basis.ambient_dim
    if u_basis is None:
        u_basis = orthonormal_complement(v_basis)
    if u_basis.ambient_dim != n:
        raise DimensionMismatchError("U basis", n, u_basis.ambient_dim)
    if u_basis.dim + v_basis.dim != n:
        raise DimensionMismatchError(
            "dim U + dim V", n, u_basis.dim + v_basis.dim
        )
    vu_orth_tol = get_setting("VUCALC_VU_ORTH_TOL", vu_orth_tol)
    if u_basis.dim and v_basis.dim:
        gap = np.max(np.abs(u_basis.matrix.T @ v_basis.matrix))
        if gap > vu_orth_tol:
            raise InvalidParameterError(
                "U and V are not orthogonal (|U^T V| = {0:.3g}).".format(gap)
            )
    if v_raw is None:
        v_raw = v_basis.matrix
    return VuPair(n, u_basis, v_basis, as_matrix(v_raw, "v_raw", rows=n))


def orthonormal_range(M, rank_tol=None):
    """Orthonormal basis of the column space of ``M``.

    :param M: n×k matrix, k may be 0.
    :param rank_tol: singular value threshold, ``"auto"`` or ``None``.
    """
    M = as_matrix(M, "M")
    n = M.shape[0]
    if M.shape[1] == 0:
        return OrthonormalBasis.empty(n)
    left, s, _ = scipy.linalg.svd(M, full_matrices=False)
    tol = resolve_rank_tol(s, M.shape, rank_tol)
    rank = int(np.sum(s > tol))
    return OrthonormalBasis(left[:, :rank], ambient_dim=n)


def orthonormal_complement(B):
    """Orthonormal basis of the orthogonal complement of ``B``."""
    n, k = B.ambient_dim, B.dim
    if k == 0:
        return OrthonormalBasis.full(n)
    if k == n:
        return OrthonormalBasis.empty(n)
    # The rows of B^T are orthonormal, so its null space has dimension n - k.
    kernel = scipy.linalg.null_space(B.matrix.T, rcond=0.5)
    return OrthonormalBasis(kernel, ambient_dim=n)


def intersect_subspaces(bases, rank_tol=None):
    """Basis of the intersection of the spans of ``bases``.

    Computed as the complement of the sum of the complements.
    """
    bases = list(bases)
    if not bases:
        raise InvalidParameterError("At least one basis is required.")
    n = bases[0].ambient_dim
    for B in bases[1:]:
        if B.ambient_dim != n:
            raise DimensionMismatchError("basis", n, B.ambient_dim)
    complements = np.hstack(
        [orthonormal_complement(B).matrix for B in bases]
    )
    return orthonormal_complement(orthonormal_range(complements, rank_tol))


def restrict_u(x, u_basis):
    """``x_U = Ū^T x``."""
    x = as_vector(x, u_basis.ambient_dim, "x")
    return u_basis.matrix.T @ x


def restrict_v(x, v_raw, rank_tol=None):
    """``x_V = (V̄^T V̄)^{-1} V̄^T x`` for a full column rank V̄."""
    v_raw = as_matrix(v_raw, "v_raw")
    x = as_vector(x, v_raw.shape[0], "x")
    cols = v_raw.shape[1]
    if cols == 0:
        return np.zeros(0)
    rank, _ = numerical_rank(v_raw, rank_tol)
    if rank < cols:
        raise RankDeficientVBarError(cols, rank)
    return scipy.linalg.solve(v_raw.T @ v_raw, v_raw.T @ x, assume_a="pos")


def reconstruct(x_u, x_v, u_basis, v_raw):
    """``x = V̄ x_V + Ū x_U``."""
    v_raw = as_matrix(v_raw, "v_raw", rows=u_basis.ambient_dim)
    x_u = as_vector(x_u, u_basis.dim, "x_U")
    x_v = as_vector(x_v, v_raw.shape[1], "x_V")
    return v_raw @ x_v + u_basis.matrix @ x_u
