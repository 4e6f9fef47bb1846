# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Primal-dual gradient (PDG) structures and their builders.

A structure lists C² primal functions ``f_0, …, f_m1`` that agree with ``f``
on the active manifold, and functions ``φ_1, …, φ_m2`` vanishing on it.
``f`` indices are 0-based, ``φ`` indices are 1-based.
"""

import numpy as np

from ..atoms.api import ComposedAtom, QuadraticAtom
from ..errors import DimensionMismatchError, InvalidParameterError
from ..subdifferentials.api import (
    ABS_VALUE,
    COORDINATE_MAX,
    L1_NORM,
    SMOOTH_LINEAR,
    active_set,
    zero_set,
)
from ..subspaces.api import as_vector


class PdgStructure(object):
    """Smooth primal functions ``f_i``, ``φ_j`` and reduced index sets."""

    def __init__(
        self,
        f_atoms,
        phi_atoms=(),
        reduced_f=None,
        reduced_phi=None,
        name=None,
    ):
        """Constructor.

        :param f_atoms: ``f_0, …, f_m1`` (at least one).
        :param phi_atoms: ``φ_1, …, φ_m2``.
        :param reduced_f: ``K_f``, a subset of ``{0..m1}`` containing 0.
        :param reduced_phi: ``K_φ``, a subset of ``{1..m2}``.
        """
        self.f_atoms = tuple(f_atoms)
        self.phi_atoms = tuple(phi_atoms)
        if not self.f_atoms:
            raise InvalidParameterError("A PDG structure needs f_0.")
        self.dim = self.f_atoms[0].dim
        for atom in self.f_atoms + self.phi_atoms:
            if atom.dim != self.dim:
                raise DimensionMismatchError("PDG atom", self.dim, atom.dim)
        m1, m2 = len(self.f_atoms) - 1, len(self.phi_atoms)
        if reduced_f is None:
            reduced_f = range(m1 + 1)
        if reduced_phi is None:
            reduced_phi = range(1, m2 + 1)
        self.reduced_f = tuple(sorted(set(int(i) for i in reduced_f)))
        self.reduced_phi = tuple(sorted(set(int(j) for j in reduced_phi)))
        if 0 not in self.reduced_f:
            raise InvalidParameterError("K_f must contain 0.")
        if any(i < 0 or i > m1 for i in self.reduced_f):
            raise InvalidParameterError(
                "K_f must be a subset of {{0..{0}}}.".format(m1)
            )
        if any(j < 1 or j > m2 for j in self.reduced_phi):
            raise InvalidParameterError(
                "K_phi must be a subset of {{1..{0}}}.".format(m2)
            )
        self.name = name or "pdg"

    @property
    def m1(self):
        """Number of f pieces besides f_0."""
        return len(self.f_atoms) - 1

    @property
    def m2(self):
        """Number of φ functions."""
        return len(self.phi_atoms)

    @property
    def is_reduced(self):
        """Whether the index sets are proper subsets."""
        return (
            len(self.reduced_f) != len(self.f_atoms)
            or len(self.reduced_phi) != len(self.phi_atoms)
        )

    def with_reduction(self, reduced_f=None, reduced_phi=None):
        """Same atoms, other index sets."""
        return PdgStructure(
            self.f_atoms, self.phi_atoms, reduced_f, reduced_phi, self.name
        )

    def _indices(self, reduced):
        if reduced:
            f_indices = [i for i in self.reduced_f if i != 0]
            return f_indices, list(self.reduced_phi)
        return list(range(1, self.m1 + 1)), list(range(1, self.m2 + 1))

    def labels(self, reduced=True):
        """Labels ``("f", i)`` / ``("phi", j)`` of the V̄ columns."""
        f_idx, phi_idx = self._indices(reduced)
        return [("f", i) for i in f_idx] + [("phi", j) for j in phi_idx]

    def columns(self, x, reduced=True):
        """n×k matrix ``[∇f_i − ∇f_0, ∇φ_j]`` at ``x``."""
        x = as_vector(x, self.dim, "x")
        f_idx, phi_idx = self._indices(reduced)
        g0 = self.f_atoms[0].grad(x)
        cols = [self.f_atoms[i].grad(x) - g0 for i in f_idx]
        cols += [self.phi_atoms[j - 1].grad(x) for j in phi_idx]
        if not cols:
            return np.zeros((self.dim, 0))
        return np.column_stack(cols)

    def residual(self, x, reduced=True):
        """``(f_i(x) − f_0(x), φ_j(x))`` over the (reduced) indices."""
        x = as_vector(x, self.dim, "x")
        f_idx, phi_idx = self._indices(reduced)
        f0 = self.f_atoms[0].eval(x)
        return np.array(
            [self.f_atoms[i].eval(x) - f0 for i in f_idx]
            + [self.phi_atoms[j - 1].eval(x) for j in phi_idx]
        )

    def __repr__(self):
        """Representation."""
        return "PdgStructure({0}, m1={1}, m2={2})".format(
            self.name, self.m1, self.m2
        )


def finite_max_pdg(phi, xbar, active_tol=None):
    """``f = max_i Φ_i``: the active components, the first one as ``f_0``."""
    active = active_set(phi.eval(xbar), active_tol)
    return PdgStructure(
        [phi.components[a] for a in active], name="finite_max"
    )


def l1_pdg(f, tau, xbar, zero_tol=None):
    """``f + τ‖·‖₁`` on ℝ^n, strongly transversal.

    ``f_0 = f + τ sgn(x̄)^T x`` and ``φ_i = x_i`` for the zero coordinates.
    """
    xbar = as_vector(xbar, f.dim, "xbar")
    zeros = zero_set(xbar, zero_tol)
    signs = np.sign(xbar)
    signs[list(zeros)] = 0.0
    f0 = f + QuadraticAtom.affine(tau * signs)
    phis = [QuadraticAtom.coordinate(f.dim, i) for i in zeros]
    return PdgStructure([f0], phis, name="l1")


def l1_regularization_pdg(f, tau, xbar, zero_tol=None):
    """Lifted structure of ``f(x) + τ‖r‖₁`` on ``r = x`` in ℝ^{2n}.

    Variables are ordered ``(r, x)`` and the base point is ``(x̄, x̄)``.
    ``φ_i = r_i`` for the zero coordinates of x̄, the last ``φ`` is
    ``‖r − x‖²``, whose gradient vanishes at the base point. The default
    ``K_φ`` drops that last function.
    """
    n = f.dim
    xbar = as_vector(xbar, n, "xbar")
    zeros = zero_set(xbar, zero_tol)
    signs = np.sign(xbar)
    signs[list(zeros)] = 0.0
    f0 = f.embed(2 * n, range(n, 2 * n)) + QuadraticAtom.affine(
        np.concatenate([tau * signs, np.zeros(n)])
    )
    phis = [QuadraticAtom.coordinate(2 * n, i) for i in zeros]
    eye = np.eye(n)
    hessian = 2.0 * np.block([[eye, -eye], [-eye, eye]])
    phis.append(QuadraticAtom(hessian, np.zeros(2 * n)))
    return PdgStructure(
        [f0],
        phis,
        reduced_phi=range(1, len(zeros) + 1),
        name="l1_regularization",
    )


def lifted_point(xbar):
    """Base point ``(x̄, x̄)`` of :func:`l1_regularization_pdg`."""
    xbar = as_vector(xbar, name="xbar")
    return np.concatenate([xbar, xbar])


def composite_pdg(phi, outer, xbar, active_tol=None, zero_tol=None):
    """Structure of ``h∘Φ`` for an outer sum of max, ℓ1 and smooth parts.

    On the active manifold every part follows one smooth selection: the
    anchor component of a max part, ``τ sgn(ȳ)^T y`` for an ℓ1 part. The
    other active components of a max part give further ``f`` pieces and the
    zero components of an ℓ1 part give ``φ`` functions.
    """
    if outer.is_pure_max:
        return finite_max_pdg(phi, xbar, active_tol)
    y = phi.eval(xbar)
    m = phi.domain_dim
    comps = phi.components
    f0 = QuadraticAtom.affine(np.zeros(m))
    differences, phis = [], []
    for part in outer.parts:
        idx = list(part.indices)
        if part.smooth:
            f0 = f0 + ComposedAtom(part.atom, phi.select(idx))
        elif part.kind == COORDINATE_MAX:
            active = [idx[a] for a in active_set(y[idx], active_tol)]
            f0 = f0 + comps[active[0]]
            differences += [comps[a] - comps[active[0]] for a in active[1:]]
        elif part.kind in (L1_NORM, ABS_VALUE):
            zeros = {idx[i] for i in zero_set(y[idx], zero_tol)}
            for i in idx:
                if i in zeros:
                    phis.append(comps[i])
                else:
                    f0 = f0 + comps[i] * (part.atom.tau * np.sign(y[i]))
        elif part.kind == SMOOTH_LINEAR:
            for w, i in zip(part.atom.weights, idx):
                f0 = f0 + comps[i] * w
    f_atoms = [f0] + [f0 + d for d in differences]
    return PdgStructure(f_atoms, phis, name="composite")
