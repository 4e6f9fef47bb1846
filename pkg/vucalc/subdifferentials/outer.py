# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Outer functions ``h(y) = Σ_p h_p(y[S_p])`` made of tagged parts."""

import numpy as np

from ..atoms.api import QuadraticAtom
from ..errors import DimensionMismatchError, InvalidParameterError
from ..subspaces.api import as_vector
from .api import (
    ABS_VALUE,
    COORDINATE_MAX,
    L1_NORM,
    SubdifferentialModel,
    lift,
    minkowski_difference_span,
    minkowski_sum,
    subdifferential,
)


class OuterPart(object):
    """One part ``h_p`` reading the components ``indices`` of ``y``."""

    def __init__(self, atom, indices):
        """Constructor.

        :param atom: :class:`NonsmoothAtom` or a smooth
            :class:`~vucalc.atoms.api.QuadraticAtom`.
        :param indices: components of ``y`` read by the part.
        """
        self.atom = atom
        self.indices = tuple(int(i) for i in indices)
        if isinstance(atom, QuadraticAtom) and atom.dim != len(self.indices):
            raise DimensionMismatchError(
                "smooth part", len(self.indices), atom.dim
            )

    @property
    def smooth(self):
        """Whether the part is a smooth quadratic."""
        return isinstance(self.atom, QuadraticAtom)

    @property
    def kind(self):
        """Kind of the part, ``smooth_quadratic`` for smooth ones."""
        return "smooth_quadratic" if self.smooth else self.atom.kind

    def eval(self, y):
        """``h_p(y[S_p])``."""
        return self.atom.eval(y[list(self.indices)])

    def gradient(self, y):
        """Gradient of ``h_p`` on its slice, ``None`` on a kink."""
        z = y[list(self.indices)]
        if self.smooth:
            return self.atom.grad(z)
        return self.atom.gradient(z)

    def model(self, y, generator_budget=None):
        """Model of ``∂h_p`` on its slice."""
        z = y[list(self.indices)]
        if self.smooth:
            return SubdifferentialModel.singleton(self.atom.grad(z))
        return subdifferential(self.atom, z, generator_budget)


class OuterFunction(object):
    """A sum of parts, each acting on a slice of ℝ^n."""

    def __init__(self, dim, parts):
        """Constructor."""
        self.dim = int(dim)
        self.parts = tuple(parts)
        if not self.parts:
            raise InvalidParameterError("An outer function needs a part.")
        for part in self.parts:
            if any(i < 0 or i >= self.dim for i in part.indices):
                raise DimensionMismatchError(
                    "part indices", "values in [0, {0})".format(self.dim),
                    list(part.indices),
                )

    @classmethod
    def single(cls, atom, dim):
        """One part reading every component."""
        return cls(dim, [OuterPart(atom, range(dim))])

    @property
    def is_pure_max(self):
        """Whether ``h(y) = max_i y_i`` over all components."""
        return (
            len(self.parts) == 1
            and self.parts[0].kind == COORDINATE_MAX
            and self.parts[0].indices == tuple(range(self.dim))
        )

    def _check(self, y):
        return as_vector(y, self.dim, "y")

    def eval(self, y):
        """``h(y)``."""
        y = self._check(y)
        return float(sum(part.eval(y) for part in self.parts))

    def gradient(self, y):
        """``∇h(y)``, ``None`` when some part is on a kink."""
        y = self._check(y)
        g = np.zeros(self.dim)
        for part in self.parts:
            gp = part.gradient(y)
            if gp is None:
                return None
            g[list(part.indices)] += gp
        return g

    def part_models(self, y, generator_budget=None):
        """Lifted models of the parts over ℝ^n."""
        y = self._check(y)
        return [
            lift(part.model(y, generator_budget), part.indices, self.dim)
            for part in self.parts
        ]

    def subdifferential(self, y, generator_budget=None):
        """Model of ``∂h(y)``, the Minkowski sum of the part models."""
        models = self.part_models(y, generator_budget)
        if len(models) == 1:
            return models[0]
        return minkowski_sum(models, generator_budget)

    def difference_columns(self, y, generator_budget=None):
        """Columns spanning ``span(∂h(y) − ḡ)``, part by part."""
        models = self.part_models(y, generator_budget)
        return np.hstack([minkowski_difference_span(m) for m in models])

    def lipschitz_bound(self, phi, x, radius):
        """Bound on the variation rate of ``∇(h∘Φ)`` near ``x`` on one piece.

        :param phi: the inner :class:`~vucalc.atoms.api.SmoothMap`.
        :param radius: radius of the neighborhood.
        """
        y = self._check(phi.eval(x))
        J = phi.jacobian(x)
        curvature = [
            np.linalg.norm(H, 2) for H in phi.component_hessians(x)
        ]
        bound = 0.0
        for part in self.parts:
            idx = list(part.indices)
            if part.smooth:
                J_p = J[idx]
                A_norm = np.linalg.norm(part.atom.A, 2)
                # the slice moves by at most |J_p| r plus a curvature term
                growth = np.linalg.norm(J_p, 2) + max(
                    [curvature[i] for i in idx] or [0.0]
                ) * radius
                w = np.abs(part.atom.grad(y[idx])) + A_norm * growth * radius
                bound += A_norm * growth ** 2
                bound += float(sum(wi * curvature[i] for wi, i in zip(w, idx)))
            else:
                if part.kind == COORDINATE_MAX:
                    bound += max([curvature[i] for i in idx] or [0.0])
                elif part.kind in (L1_NORM, ABS_VALUE):
                    bound += part.atom.tau * sum(curvature[i] for i in idx)
                else:
                    bound += float(
                        sum(
                            abs(wi) * curvature[i]
                            for wi, i in zip(part.atom.weights, idx)
                        )
                    )
        return float(bound)

    def __repr__(self):
        """Representation."""
        return "OuterFunction(dim={0}, parts={1})".format(
            self.dim, [p.kind for p in self.parts]
        )

