# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Helpers for tests."""

import json
import os

import numpy as np

from vucalc.atoms.api import QuadraticAtom, SmoothMap


def load_json_from_datadir(filename):
    """Load JSON from dir."""
    _data_dir = os.path.join(os.path.dirname(__file__), "data")
    with open(os.path.join(_data_dir, filename), "r") as fp:
        return json.load(fp)


def write_spec(tmpdir, data, filename="spec.json"):
    """Write a problem spec in ``tmpdir`` and return its path."""
    path = os.path.join(str(tmpdir), filename)
    with open(path, "w") as fp:
        json.dump(data, fp)
    return path


def random_symmetric(rng, m):
    """Random symmetric m×m matrix."""
    B = rng.standard_normal((m, m))
    return 0.5 * (B + B.T)


def random_quadratic(rng, m):
    """Random quadratic atom on ℝ^m."""
    return QuadraticAtom(random_symmetric(rng, m), rng.standard_normal(m))


def random_max_of_quadratics(seed, m=None, n=None, inactive=None):
    """Quadratics active at a random x̄, mixed with inactive ones.

    Returns ``(phi, xbar)`` with ``2 <= n <= min(m, 4)`` active components
    and ``inactive`` (up to two by default) components at least 1 below
    the max at x̄.
    """
    rng = np.random.default_rng(seed)
    m = m or int(rng.integers(2, 7))
    n = n or int(rng.integers(2, min(m, 4) + 1))
    xbar = rng.standard_normal(m)
    atoms = []
    for _ in range(n):
        A = random_symmetric(rng, m)
        b = rng.standard_normal(m)
        atoms.append(QuadraticAtom(A, b, -(0.5 * xbar @ A @ xbar + b @ xbar)))
    if inactive is None:
        inactive = int(rng.integers(0, 3))
    for _ in range(inactive):
        A = random_symmetric(rng, m)
        b = rng.standard_normal(m)
        offset = rng.uniform(1.0, 3.0)
        c = -(0.5 * xbar @ A @ xbar + b @ xbar) - offset
        atoms.append(QuadraticAtom(A, b, c))
    order = rng.permutation(len(atoms))
    return SmoothMap([atoms[i] for i in order], m), xbar


def random_sparse_point(seed, m=None):
    """A point of ℝ^m with at least one zero and one nonzero entry.

    Nonzero entries are bounded away from zero.
    """
    rng = np.random.default_rng(seed)
    m = m or int(rng.integers(2, 9))
    xbar = rng.choice([-1.0, 1.0], m) * rng.uniform(0.5, 2.0, m)
    zeros = rng.choice(m, int(rng.integers(1, m)), replace=False)
    xbar[zeros] = 0.0
    return xbar


def random_lasso(seed, m=None):
    """Random ``(A, b, τ, x̄)`` of a LASSO instance."""
    rng = np.random.default_rng(seed)
    xbar = random_sparse_point(seed, m)
    m = xbar.shape[0]
    A = rng.standard_normal((m + 2, m))
    b = rng.standard_normal(m + 2)
    return A, b, float(rng.uniform(0.1, 2.0)), xbar
