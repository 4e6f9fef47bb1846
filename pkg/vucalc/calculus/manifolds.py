# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Normal and tangent spaces of an active manifold at a point."""

from ..errors import DimensionMismatchError
from ..subspaces.api import (
    OrthonormalBasis,
    make_vu_pair,
    orthonormal_complement,
    orthonormal_range,
)


class ManifoldModel(object):
    """``N_M(z̄)`` and ``T_M(z̄)``, orthogonal complements of each other."""

    def __init__(self, normal_basis, tangent_basis=None):
        """Constructor.

        :param normal_basis: :class:`OrthonormalBasis` of the normal space.
        :param tangent_basis: basis of the tangent space, defaults to the
            complement of ``normal_basis``.
        """
        if tangent_basis is None:
            tangent_basis = orthonormal_complement(normal_basis)
        # the VuPair checks do the orthogonality and dimension work
        make_vu_pair(normal_basis, u_basis=tangent_basis)
        self.normal_basis = normal_basis
        self.tangent_basis = tangent_basis

    @classmethod
    def from_normal(cls, columns, rank_tol=None):
        """Manifold whose normal space is spanned by ``columns``."""
        return cls(orthonormal_range(columns, rank_tol))

    @classmethod
    def from_tangent(cls, columns, rank_tol=None):
        """Manifold whose tangent space is spanned by ``columns``."""
        tangent = orthonormal_range(columns, rank_tol)
        return cls(orthonormal_complement(tangent), tangent)

    @classmethod
    def whole_space(cls, ambient_dim):
        """``M = ℝ^n``: trivial normal space."""
        return cls(OrthonormalBasis.empty(ambient_dim))

    @classmethod
    def from_vu(cls, vu):
        """Manifold of a fast track: tangent space U, normal space V."""
        return cls(vu.v_basis, vu.u_basis)

    @property
    def ambient_dim(self):
        """n."""
        return self.normal_basis.ambient_dim

    def check_dim(self, n):
        """Raise unless the manifold lives in ℝ^n."""
        if self.ambient_dim != n:
            raise DimensionMismatchError("manifold", n, self.ambient_dim)

    def __repr__(self):
        """Representation."""
        return "ManifoldModel(n={0}, normal={1})".format(
            self.ambient_dim, self.normal_basis.dim
        )
