# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""VU-decompositions, U-gradients and fast tracks of f = h∘Φ.

The library is organized in sub-packages:

- :mod:`vucalc.subspaces`: orthonormal bases, complements, intersections
  and restrictions.
- :mod:`vucalc.atoms`: quadratic atoms and smooth maps Φ.
- :mod:`vucalc.subdifferentials`: generator models of ∂h.
- :mod:`vucalc.vu`: VU-decomposition, PDG structures, U-gradients.
- :mod:`vucalc.calculus`: chain rule, sum rule, separability, ℓ1/LASSO.
- :mod:`vucalc.fast_track`: Newton tracing of χ(u) = x̄ + Ūu + V̄v(u).
- :mod:`vucalc.oracles`: finite differences and subdifferential sampling.
- :mod:`vucalc.problems`: JSON problem specs and reports for the CLI.
"""

from .ext import VuCalc
from .version import __version__

__all__ = ("__version__", "VuCalc")
