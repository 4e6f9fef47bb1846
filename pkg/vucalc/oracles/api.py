# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Independent oracles to cross-check the calculus.

Finite differences of the U-Lagrangian along a fast track, empirical
subdifferentials from sampled gradients and brute-force U-spaces.
"""

import numpy as np
import scipy.linalg
import scipy.spatial.distance
import simplejson as json

from ..errors import DimensionMismatchError, InsufficientSamplesError
from ..fast_track.api import solve_track
from ..proxies import current_logger, get_setting
from ..subdifferentials.api import SubdifferentialModel
from ..subspaces.api import as_matrix, as_vector
from ..vu.api import decompose


def _log(action, data):
    """Structured logging."""
    log_msg = dict(name="vucalc_oracles", action=action, data=data)
    current_logger.info(json.dumps(log_msg, sort_keys=True))


def fd_u_lagrangian_gradient(f_eval, ft, g_bar, h_step=None):
    """Central differences at 0 of ``L(u) = f(χ(u)) − ḡ^T V̄ v(u)``.

    :param f_eval: value oracle of ``f``.
    :param ft: :class:`~vucalc.fast_track.api.FastTrack` at x̄.
    :param g_bar: ḡ in ℝ^n.
    :returns: estimate of the U-Lagrangian gradient, in ℝ^u.
    """
    h_step = get_setting("VUCALC_FD_STEP", h_step)
    g_bar = as_vector(g_bar, ft.xbar.shape[0], "g_bar")
    weights = ft.v_raw.T @ g_bar

    def lagrangian(u):
        tp = solve_track(ft, u)
        return f_eval(tp.chi) - weights @ tp.v

    gradient = np.zeros(ft.u_dim)
    for k in range(ft.u_dim):
        e = np.zeros(ft.u_dim)
        e[k] = h_step
        gradient[k] = (lagrangian(e) - lagrangian(-e)) / (2 * h_step)
    return gradient


def composite_gradient_oracle(phi, outer):
    """Gradient oracle of ``h∘Φ``, ``None`` where ``h`` is at a kink."""

    def oracle(x):
        g = outer.gradient(phi.eval(x))
        if g is None:
            return None
        return phi.jacobian(x).T @ g

    return oracle


def _ball(rng, center, radius, count):
    """``count`` uniform points of the ball ``B(center, radius)``."""
    dim = center.shape[0]
    directions = rng.standard_normal((count, dim))
    directions /= np.linalg.norm(directions, axis=1)[:, np.newaxis]
    radii = radius * rng.random(count) ** (1.0 / dim)
    return center + directions * radii[:, np.newaxis]


def _dedup(gradients, tol):
    """Greedy deduplication of lexicographically sorted gradients."""
    order = np.lexsort(gradients.T[::-1])
    kept = []
    for g in gradients[order]:
        if all(np.max(np.abs(g - k)) > tol for k in kept):
            kept.append(g)
    return np.array(kept)


def sample_subdifferential(
    grad_oracle,
    xbar,
    radius=None,
    n_samples=None,
    seed=None,
    streams=None,
    dedup_tol=None,
    kink_limit=None,
):
    """Empirical subdifferential from gradients sampled near x̄.

    Points are drawn uniformly in ``B(x̄, radius)`` from ``streams``
    independent substreams of ``seed``; kink points (``None`` gradients) are
    skipped and the sorted gradients are deduplicated at ``dedup_tol``.
    """
    xbar = as_vector(xbar, name="xbar")
    radius = float(get_setting("VUCALC_SAMPLING_RADIUS", radius))
    n_samples = int(get_setting("VUCALC_SAMPLING_SAMPLES", n_samples))
    seed = int(get_setting("VUCALC_SAMPLING_SEED", seed))
    streams = int(get_setting("VUCALC_SAMPLING_STREAMS", streams))
    dedup_tol = get_setting("VUCALC_DEDUP_TOL", dedup_tol)
    kink_limit = get_setting("VUCALC_KINK_FRACTION_LIMIT", kink_limit)

    children = np.random.SeedSequence(seed).spawn(streams)
    gradients, kinks = [], 0
    for index, child in enumerate(children):
        count = len(range(index, n_samples, streams))
        rng = np.random.default_rng(child)
        for x in _ball(rng, xbar, radius, count):
            g = grad_oracle(x)
            if g is None:
                kinks += 1
            else:
                gradients.append(g)
    _log(
        "sample_subdifferential",
        dict(samples=n_samples, kinks=kinks, seed=seed, radius=radius),
    )
    if not gradients or kinks > kink_limit * n_samples:
        raise InsufficientSamplesError(kinks, n_samples, kink_limit)
    return SubdifferentialModel(_dedup(np.array(gradients), dedup_tol))


def brute_force_u_space(model_f, rank_tol=None):
    """U-space read off a model of ``∂f(x̄)`` directly."""
    return decompose(model_f, rank_tol).u_basis


def subspace_distance(B1, B2):
    """Largest principal angle between two subspaces.

    Subspaces of different dimensions are at distance ``inf``.
    """
    if B1.ambient_dim != B2.ambient_dim:
        raise DimensionMismatchError("basis", B1.ambient_dim, B2.ambient_dim)
    if B1.dim != B2.dim:
        return float("inf")
    if B1.dim == 0:
        return 0.0
    return float(np.max(scipy.linalg.subspace_angles(B1.matrix, B2.matrix)))


def hausdorff_distance(points_a, points_b):
    """Hausdorff distance between two finite point sets (rows)."""
    a = as_matrix(points_a, "points_a")
    b = as_matrix(points_b, "points_b", cols=a.shape[1])
    return float(
        max(
            scipy.spatial.distance.directed_hausdorff(a, b)[0],
            scipy.spatial.distance.directed_hausdorff(b, a)[0],
        )
    )
