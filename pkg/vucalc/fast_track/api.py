# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Fast tracks ``χ(u) = x̄ + Ūu + V̄v(u)`` of a PDG structure.

``v(u)`` solves the square system ``f_i(χ) − f_0(χ) = 0``, ``φ_j(χ) = 0``
over the reduced index sets by plain Newton iterations started at ``v = 0``
(or at a nearby solution when tracing a ray).
"""

import warnings
from collections import namedtuple

import numpy as np
import scipy.linalg
import simplejson as json

from ..errors import (
    FastTrackDimensionError,
    InvalidParameterError,
    NewtonDivergedError,
    NumericalFailureError,
    SingularNewtonJacobianError,
    SingularVtVError,
)
from ..proxies import current_logger, get_setting
from ..subspaces.api import as_vector
from ..vu.api import decompose_pdg

TrackPoint = namedtuple("TrackPoint", "u v chi residual newton_iters")

ProbeRow = namedtuple(
    "ProbeRow",
    [
        "direction",
        "scale",
        "v_norm",
        "ratio",
        "newton_iters",
        "residual",
        "active_residual",
        "inactive_gaps",
        "error",
    ],
)

ProbeReport = namedtuple(
    "ProbeReport",
    [
        "rows",
        "max_ratio",
        "ratio_drift",
        "max_active_residual",
        "grad_v0_norm",
        "newton_tol",
    ],
)


def _log(action, data):
    """Structured logging."""
    log_msg = dict(name="vucalc_fast_track", action=action, data=data)
    current_logger.info(json.dumps(log_msg, sort_keys=True))


class FastTrack(object):
    """Fast track through x̄ of a PDG structure."""

    def __init__(
        self,
        xbar,
        pdg,
        vu=None,
        newton_tol=None,
        max_iters=None,
        radius=None,
        strict=True,
        rank_tol=None,
        growth_limit=None,
    ):
        """Constructor.

        :param xbar: base point.
        :param pdg: :class:`~vucalc.vu.pdg.PdgStructure`, consistent at x̄.
        :param vu: VU pair at x̄, computed from ``pdg`` when omitted.
        :param radius: largest admissible ``‖u‖``, unbounded when ``None``.
        :param strict: require ``dim V ≥ 1`` and ``dim U ≥ 1``; a degenerate
            track is still usable by the oracles with ``strict=False``.
        """
        self.xbar = as_vector(xbar, pdg.dim, "xbar")
        self.pdg = pdg
        if vu is None:
            vu = decompose_pdg(pdg, xbar, rank_tol=rank_tol)
        self.vu = vu
        if strict and (self.vu.v_dim == 0 or self.vu.u_dim == 0):
            raise FastTrackDimensionError(self.vu.u_dim, self.vu.v_dim)
        if self.vu.v_raw.shape[1] != len(pdg.labels(reduced=True)):
            raise InvalidParameterError(
                "V̄ must have one column per reduced PDG index."
            )
        self.newton_tol = get_setting("VUCALC_NEWTON_TOL", newton_tol)
        self.max_iters = int(get_setting("VUCALC_NEWTON_MAX_ITERS", max_iters))
        self.growth_limit = int(
            get_setting("VUCALC_NEWTON_GROWTH_LIMIT", growth_limit)
        )
        if self.newton_tol <= 0 or self.max_iters < 1:
            raise InvalidParameterError(
                "newton_tol and max_iters must be positive."
            )
        self.radius = radius

    @property
    def u_basis(self):
        """Ū."""
        return self.vu.u_basis.matrix

    @property
    def v_raw(self):
        """V̄."""
        return self.vu.v_raw

    @property
    def u_dim(self):
        """dim U."""
        return self.vu.u_dim

    @property
    def v_dim(self):
        """Number of V̄ columns."""
        return self.vu.v_raw.shape[1]

    def chi(self, u, v):
        """``x̄ + Ūu + V̄v``."""
        return self.xbar + self.u_basis @ u + self.v_raw @ v

    def __repr__(self):
        """Representation."""
        return "FastTrack({0}, u={1}, v={2})".format(
            self.pdg.name, self.u_dim, self.v_dim
        )


def _newton_step(jacobian, residual, iteration):
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            return scipy.linalg.solve(jacobian, residual)
        except (scipy.linalg.LinAlgError, scipy.linalg.LinAlgWarning):
            raise SingularNewtonJacobianError(iteration)


def solve_track(ft, u, v0=None):
    """Solve for ``v(u)`` and return the :class:`TrackPoint`.

    :param v0: warm start, ``0`` by default.
    :raises NewtonDivergedError: the iteration cap is hit or the residual
        grows over ``growth_limit`` consecutive steps.
    """
    u = as_vector(u, ft.u_dim, "u")
    u_norm = float(np.linalg.norm(u))
    if ft.radius is not None and u_norm > ft.radius:
        raise InvalidParameterError(
            "|u| = {0:.3g} exceeds the track radius {1:.3g}.".format(
                u_norm, ft.radius
            )
        )
    v = np.zeros(ft.v_dim) if v0 is None else np.array(v0, dtype=float)
    if ft.v_dim == 0:
        return TrackPoint(u, v, ft.chi(u, v), 0.0, 0)
    previous, growth = np.inf, 0
    for iteration in range(ft.max_iters + 1):
        chi = ft.chi(u, v)
        R = ft.pdg.residual(chi, reduced=True)
        r = float(np.max(np.abs(R)))
        if not np.isfinite(r):
            raise NewtonDivergedError(
                u_norm, iteration, r, "non-finite residual"
            )
        if r <= ft.newton_tol:
            _log(
                "solve_track",
                dict(u_norm=u_norm, iterations=iteration, residual=r),
            )
            return TrackPoint(u, v, chi, r, iteration)
        growth = growth + 1 if r > previous else 0
        if growth >= ft.growth_limit:
            raise NewtonDivergedError(
                u_norm, iteration, r,
                "residual grew over {0} consecutive steps".format(growth),
            )
        if iteration == ft.max_iters:
            break
        jacobian = ft.pdg.columns(chi, reduced=True).T @ ft.v_raw
        v = v - _newton_step(jacobian, R, iteration)
        previous = r
    raise NewtonDivergedError(u_norm, ft.max_iters, r, "iteration cap reached")


def trace_ray(ft, direction, scales):
    """Track points at ``t·d`` for each scale, warm-started along the ray.

    Scales are solved in increasing order; points come back in the order of
    ``scales``.
    """
    d = as_vector(direction, ft.u_dim, "direction")
    d = d / np.linalg.norm(d)
    scales = [float(t) for t in scales]
    points = [None] * len(scales)
    v = None
    for k in sorted(range(len(scales)), key=lambda k: abs(scales[k])):
        points[k] = solve_track(ft, scales[k] * d, v)
        v = points[k].v
    return points


def v_basis_along(ft, tp):
    """``V(u)``: the reduced PDG columns at ``χ(u)``."""
    return ft.pdg.columns(tp.chi, reduced=True)


def track_jacobian(ft, tp):
    """``∇χ(u) = Ū − V̄(V(u)^T V̄)^{-1} V(u)^T Ū``, exactly Ū at ``u = 0``."""
    U = ft.u_basis
    if ft.v_dim == 0 or not np.any(tp.u):
        return np.array(U)
    V_u = v_basis_along(ft, tp)
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            X = scipy.linalg.solve(V_u.T @ ft.v_raw, V_u.T @ U)
        except (scipy.linalg.LinAlgError, scipy.linalg.LinAlgWarning):
            raise SingularVtVError()
    return U - ft.v_raw @ X


def _inactive_gaps(ft, chi):
    """Gaps of the PDG functions left out of the reduced index sets."""
    reduced = set(ft.pdg.labels(reduced=True))
    return {
        "{0}[{1}]".format(*label): abs(float(value))
        for label, value in zip(
            ft.pdg.labels(reduced=False), ft.pdg.residual(chi, reduced=False)
        )
        if label not in reduced
    }


def _grad_v0(ft, fd_step):
    """Central-difference estimate of ``∇v(0)``."""
    columns = []
    for k in range(ft.u_dim):
        e = np.zeros(ft.u_dim)
        e[k] = fd_step
        plus = solve_track(ft, e).v
        minus = solve_track(ft, -e).v
        columns.append((plus - minus) / (2 * fd_step))
    return np.column_stack(columns) if columns else np.zeros((ft.v_dim, 0))


def property_probe(ft, directions=None, scales=None, fd_step=None):
    """Probe the fast-track properties along rays.

    Reports ``‖v(t·d)‖ / t²`` (bounded along a fast track), the residuals of
    the reduced PDG system on the track and a finite-difference estimate of
    ``‖∇v(0)‖`` (zero on a fast track). A failing solve is recorded in its
    row; the probe fails only when every solve does.

    :param directions: u-vectors, the coordinate directions by default.
    :param scales: values of ``t``.
    """
    if directions is None:
        directions = np.eye(ft.u_dim)
    scales = get_setting("VUCALC_PROBE_SCALES", scales)
    fd_step = get_setting("VUCALC_FD_STEP", fd_step)
    rows, last_error = [], None
    for index, direction in enumerate(directions):
        d = as_vector(direction, ft.u_dim, "direction")
        d = d / np.linalg.norm(d)
        v = None
        for t in sorted(float(s) for s in scales):
            try:
                tp = solve_track(ft, t * d, v)
            except NumericalFailureError as e:
                last_error = e
                rows.append(
                    ProbeRow(index, t, None, None, None, None, None, None,
                             e.format_message())
                )
                continue
            v = tp.v
            v_norm = float(np.linalg.norm(tp.v))
            active = ft.pdg.residual(tp.chi, reduced=True)
            rows.append(
                ProbeRow(
                    index,
                    t,
                    v_norm,
                    v_norm / t ** 2,
                    tp.newton_iters,
                    tp.residual,
                    float(np.max(np.abs(active))) if active.size else 0.0,
                    _inactive_gaps(ft, tp.chi),
                    None,
                )
            )
    solved = [row for row in rows if row.error is None]
    if rows and not solved:
        raise last_error
    drifts = []
    for index in {row.direction for row in solved}:
        ratios = [row.ratio for row in solved if row.direction == index]
        top = max(ratios)
        drifts.append((top - min(ratios)) / top if top > 0 else 0.0)
    try:
        grad_v0 = float(np.max(np.abs(_grad_v0(ft, fd_step)), initial=0.0))
    except NumericalFailureError:
        grad_v0 = None
    report = ProbeReport(
        rows,
        max((row.ratio for row in solved), default=0.0),
        max(drifts, default=0.0),
        max((row.active_residual for row in solved), default=0.0),
        grad_v0,
        ft.newton_tol,
    )
    _log(
        "property_probe",
        dict(
            rows=len(rows),
            failed=len(rows) - len(solved),
            max_ratio=report.max_ratio,
        ),
    )
    return report
