# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""C² building blocks: smooth atoms and smooth maps Φ: ℝ^m → ℝ^n."""

from abc import ABCMeta, abstractmethod

import numpy as np

from ..errors import DimensionMismatchError, InvalidParameterError
from ..subspaces.api import as_matrix, as_vector


class SmoothAtom(metaclass=ABCMeta):
    """A C² function ℝ^n → ℝ with value, gradient and Hessian."""

    @property
    @abstractmethod
    def dim(self):
        """Domain dimension."""

    @abstractmethod
    def eval(self, x):
        """Value at ``x``."""

    @abstractmethod
    def grad(self, x):
        """Gradient at ``x``."""

    @abstractmethod
    def hess(self, x):
        """Hessian at ``x``."""

    def _check(self, x):
        return as_vector(x, self.dim, "x")

    def __add__(self, other):
        """Pointwise sum."""
        return SumAtom([self, other])

    def __sub__(self, other):
        """Pointwise difference."""
        return SumAtom([self, other], weights=[1.0, -1.0])

    def __mul__(self, scalar):
        """Scalar multiple."""
        return SumAtom([self], weights=[float(scalar)])

    __rmul__ = __mul__

    def __neg__(self):
        """Negation."""
        return self * -1.0


class QuadraticAtom(SmoothAtom):
    """``x ↦ ½ x^T A x + b^T x + c`` with symmetric ``A``."""

    def __init__(self, A, b, c=0.0):
        """Constructor.

        :param A: n×n matrix, symmetrized; ``None`` for an affine atom.
        :param b: vector of length n.
        :param c: constant.
        """
        b = as_vector(b, name="b")
        n = b.shape[0]
        if A is None:
            A = np.zeros((n, n))
        A = as_matrix(A, "A", rows=n, cols=n)
        self.A = as_matrix(0.5 * (A + A.T), "A")
        self.b = b
        self.c = float(c)

    @classmethod
    def affine(cls, b, c=0.0):
        """``x ↦ b^T x + c``."""
        return cls(None, b, c)

    @classmethod
    def coordinate(cls, n, i):
        """``x ↦ x_i``."""
        return cls.affine(np.eye(n)[i])

    @classmethod
    def squared_residual(cls, A, b):
        """``x ↦ ½ ‖Ax − b‖²``."""
        A = as_matrix(A, "A")
        b = as_vector(b, A.shape[0], "b")
        return cls(A.T @ A, -A.T @ b, 0.5 * float(b @ b))

    @property
    def dim(self):
        """Domain dimension."""
        return self.b.shape[0]

    def eval(self, x):
        """Value at ``x``."""
        x = self._check(x)
        return float(0.5 * x @ self.A @ x + self.b @ x + self.c)

    def grad(self, x):
        """Gradient ``Ax + b``."""
        x = self._check(x)
        return self.A @ x + self.b

    def hess(self, x=None):
        """Hessian, the constant ``A``."""
        return np.array(self.A)

    def embed(self, ambient_dim, indices):
        """This atom acting on the coordinates ``indices`` of ℝ^N."""
        indices = list(indices)
        if len(indices) != self.dim:
            raise DimensionMismatchError("indices", self.dim, len(indices))
        A = np.zeros((ambient_dim, ambient_dim))
        A[np.ix_(indices, indices)] = self.A
        b = np.zeros(ambient_dim)
        b[indices] = self.b
        return QuadraticAtom(A, b, self.c)

    def __add__(self, other):
        """Sum, quadratic if ``other`` is."""
        if isinstance(other, QuadraticAtom):
            if other.dim != self.dim:
                raise DimensionMismatchError("atom", self.dim, other.dim)
            return QuadraticAtom(
                self.A + other.A, self.b + other.b, self.c + other.c
            )
        return super().__add__(other)

    def __sub__(self, other):
        """Difference, quadratic if ``other`` is."""
        if isinstance(other, QuadraticAtom):
            return self + other * -1.0
        return super().__sub__(other)

    def __mul__(self, scalar):
        """Scalar multiple."""
        s = float(scalar)
        return QuadraticAtom(s * self.A, s * self.b, s * self.c)

    __rmul__ = __mul__

    def __eq__(self, other):
        """Equality of the coefficients."""
        return (
            isinstance(other, QuadraticAtom)
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.b, other.b)
            and self.c == other.c
        )

    __hash__ = None

    def __repr__(self):
        """Representation."""
        return "QuadraticAtom(dim={0})".format(self.dim)


class CallbackAtom(SmoothAtom):
    """A smooth function given by user callbacks."""

    def __init__(self, dim, value, gradient, hessian):
        """Constructor.

        :param dim: domain dimension.
        :param value: ``x -> float``.
        :param gradient: ``x -> vector``.
        :param hessian: ``x -> matrix``.
        """
        self._dim = int(dim)
        self._value = value
        self._gradient = gradient
        self._hessian = hessian

    @property
    def dim(self):
        """Domain dimension."""
        return self._dim

    def eval(self, x):
        """Value at ``x``."""
        return float(self._value(self._check(x)))

    def grad(self, x):
        """Gradient at ``x``."""
        return as_vector(self._gradient(self._check(x)), self.dim, "gradient")

    def hess(self, x):
        """Hessian at ``x``."""
        return as_matrix(
            self._hessian(self._check(x)), "hessian", self.dim, self.dim
        )


class SumAtom(SmoothAtom):
    """Weighted sum of smooth atoms."""

    def __init__(self, atoms, weights=None):
        """Constructor."""
        self.atoms = list(atoms)
        if not self.atoms:
            raise InvalidParameterError("A sum needs at least one atom.")
        dims = {a.dim for a in self.atoms}
        if len(dims) != 1:
            raise DimensionMismatchError("atoms", self.atoms[0].dim, dims)
        if weights is None:
            weights = np.ones(len(self.atoms))
        self.weights = as_vector(weights, len(self.atoms), "weights")

    @property
    def dim(self):
        """Domain dimension."""
        return self.atoms[0].dim

    def eval(self, x):
        """Value at ``x``."""
        terms = zip(self.weights, self.atoms)
        return float(sum(w * a.eval(x) for w, a in terms))

    def grad(self, x):
        """Gradient at ``x``."""
        return sum(w * a.grad(x) for w, a in zip(self.weights, self.atoms))

    def hess(self, x):
        """Hessian at ``x``."""
        return sum(w * a.hess(x) for w, a in zip(self.weights, self.atoms))


class ComposedAtom(SmoothAtom):
    """``x ↦ q(Φ(x))`` for a quadratic ``q`` and a smooth map ``Φ``."""

    def __init__(self, outer, inner):
        """Constructor.

        :param outer: :class:`QuadraticAtom` on ℝ^k.
        :param inner: :class:`SmoothMap` with k components.
        """
        if outer.dim != inner.codomain_dim:
            raise DimensionMismatchError(
                "inner map", outer.dim, inner.codomain_dim
            )
        self.outer = outer
        self.inner = inner

    @property
    def dim(self):
        """Domain dimension."""
        return self.inner.domain_dim

    def eval(self, x):
        """Value at ``x``."""
        return self.outer.eval(self.inner.eval(x))

    def grad(self, x):
        """``J(x)^T ∇q(Φ(x))``."""
        return self.inner.jacobian(x).T @ self.outer.grad(self.inner.eval(x))

    def hess(self, x):
        """``J^T A J + Σ_i ∂_i q · ∇²Φ_i``."""
        J = self.inner.jacobian(x)
        w = self.outer.grad(self.inner.eval(x))
        H = J.T @ self.outer.A @ J
        for wi, Hi in zip(w, self.inner.component_hessians(x)):
            H = H + wi * Hi
        return H


class SmoothMap(object):
    """A C² map Φ: ℝ^m → ℝ^n given by its components."""

    def __init__(self, components, domain_dim=None):
        """Constructor.

        :param components: list of :class:`SmoothAtom`, possibly empty.
        :param domain_dim: m, required when ``components`` is empty.
        """
        self.components = tuple(components)
        if domain_dim is None:
            if not self.components:
                raise InvalidParameterError(
                    "domain_dim is required for an empty map."
                )
            domain_dim = self.components[0].dim
        for i, atom in enumerate(self.components):
            if atom.dim != domain_dim:
                raise DimensionMismatchError(
                    "component {0}".format(i), domain_dim, atom.dim
                )
        self.domain_dim = int(domain_dim)

    @classmethod
    def identity(cls, m):
        """``x ↦ x``."""
        return cls([QuadraticAtom.coordinate(m, i) for i in range(m)], m)

    @classmethod
    def stack(cls, maps):
        """``x ↦ (Φ_1(x), …, Φ_k(x))``."""
        maps = list(maps)
        return cls(
            [c for phi in maps for c in phi.components], maps[0].domain_dim
        )

    def append(self, atom):
        """``x ↦ (Φ(x), q(x))``."""
        return SmoothMap(self.components + (atom,), self.domain_dim)

    def select(self, indices):
        """The components ``indices`` of Φ."""
        return SmoothMap(
            [self.components[i] for i in indices], self.domain_dim
        )

    @property
    def codomain_dim(self):
        """n."""
        return len(self.components)

    def eval(self, x):
        """``Φ(x)``."""
        x = as_vector(x, self.domain_dim, "x")
        return np.array([c.eval(x) for c in self.components])

    def jacobian(self, x):
        """n×m Jacobian, row i is the gradient of component i."""
        x = as_vector(x, self.domain_dim, "x")
        if not self.components:
            return np.zeros((0, self.domain_dim))
        return np.vstack([c.grad(x) for c in self.components])

    def component_hessians(self, x):
        """Hessians of the components."""
        x = as_vector(x, self.domain_dim, "x")
        return [c.hess(x) for c in self.components]

    def __repr__(self):
        """Representation."""
        return "SmoothMap({0} -> {1})".format(
            self.domain_dim, self.codomain_dim
        )
