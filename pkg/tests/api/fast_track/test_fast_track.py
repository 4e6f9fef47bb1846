# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Test fast tracks."""

import numpy as np
import pytest

from vucalc.atoms.api import QuadraticAtom, SmoothMap
from vucalc.errors import (
    FastTrackDimensionError,
    InvalidParameterError,
    NewtonDivergedError,
    NumericalFailureError,
)
from vucalc.fast_track.api import (
    FastTrack,
    property_probe,
    solve_track,
    trace_ray,
    track_jacobian,
)
from vucalc.vu.pdg import finite_max_pdg, l1_regularization_pdg, lifted_point

from tests.helpers import random_quadratic, random_sparse_point


@pytest.fixture()
def max_track():
    """``max(x1, x2² − x1)`` at 0, whose track is ``(t²/2, t)``."""
    phi = SmoothMap(
        [
            QuadraticAtom.affine([1.0, 0.0]),
            QuadraticAtom([[0.0, 0.0], [0.0, 2.0]], [-1.0, 0.0]),
        ]
    )
    xbar = np.zeros(2)
    return FastTrack(xbar, finite_max_pdg(phi, xbar))


@pytest.fixture()
def nonlinear_track():
    """``max(x1, x1² + x2² − x1)`` at 0: ``4v² + 4v + u² = 0``."""
    phi = SmoothMap(
        [
            QuadraticAtom.affine([1.0, 0.0]),
            QuadraticAtom(2.0 * np.eye(2), [-1.0, 0.0]),
        ]
    )
    xbar = np.zeros(2)
    return phi, xbar


def test_max_track(app, max_track):
    """Test the closed-form track of a finite max."""
    np.testing.assert_allclose(max_track.u_basis, [[0.0], [1.0]])
    np.testing.assert_allclose(max_track.v_raw, [[-2.0], [0.0]])
    for t in (0.3, -0.1, 1e-3):
        tp = solve_track(max_track, [t])
        np.testing.assert_allclose(tp.v, [-(t ** 2) / 4], rtol=1e-10)
        np.testing.assert_allclose(tp.chi, [t ** 2 / 2, t], rtol=1e-10)
        assert tp.residual <= max_track.newton_tol
        assert tp.newton_iters <= 8


def test_trace_ray(app, max_track):
    """Test that points come back in the order of the scales."""
    points = trace_ray(max_track, [2.0], [0.2, 0.05, 0.1])
    np.testing.assert_allclose(
        [p.u[0] for p in points], [0.2, 0.05, 0.1]
    )
    for p in points:
        np.testing.assert_allclose(p.v, [-p.u[0] ** 2 / 4], rtol=1e-10)


def test_track_jacobian(app, max_track):
    """Test ∇χ against the closed form and finite differences."""
    at_zero = solve_track(max_track, [0.0])
    np.testing.assert_array_equal(
        track_jacobian(max_track, at_zero), max_track.u_basis
    )
    t, h = 0.4, 1e-6
    jac = track_jacobian(max_track, solve_track(max_track, [t]))
    np.testing.assert_allclose(jac, [[t], [1.0]], rtol=1e-10)
    fd = (
        solve_track(max_track, [t + h]).chi
        - solve_track(max_track, [t - h]).chi
    ) / (2 * h)
    np.testing.assert_allclose(jac[:, 0], fd, rtol=0, atol=1e-6)


def test_property_probe(app, max_track):
    """Test the ratio ‖v‖/t² and ∇v(0) on the max track."""
    report = property_probe(max_track)
    assert len(report.rows) == 3
    for row in report.rows:
        assert row.error is None
        assert row.ratio == pytest.approx(0.25, rel=1e-2)
        assert row.inactive_gaps == {}
        assert row.newton_iters <= 8
    assert report.max_ratio == pytest.approx(0.25, rel=1e-2)
    assert report.ratio_drift <= 1e-6
    assert report.max_active_residual <= max_track.newton_tol
    assert report.grad_v0_norm <= 1e-6


def test_track_radius(app):
    """Test that points past the radius are refused."""
    phi = SmoothMap(
        [
            QuadraticAtom.affine([1.0, 0.0]),
            QuadraticAtom([[0.0, 0.0], [0.0, 2.0]], [-1.0, 0.0]),
        ]
    )
    ft = FastTrack(np.zeros(2), finite_max_pdg(phi, np.zeros(2)), radius=0.05)
    solve_track(ft, [0.04])
    with pytest.raises(InvalidParameterError):
        solve_track(ft, [0.1])


def test_degenerate_tracks(app):
    """Test that a track needs nontrivial U and V."""
    abs_value = SmoothMap(
        [QuadraticAtom.affine([1.0]), QuadraticAtom.affine([-1.0])]
    )
    with pytest.raises(FastTrackDimensionError) as ex:
        FastTrack([0.0], finite_max_pdg(abs_value, [0.0]))
    assert ex.value.code == 2
    assert "fast-track requires dim V ≥ 1" in ex.value.format_message()

    smooth = SmoothMap([QuadraticAtom(2.0 * np.eye(2), np.zeros(2))])
    with pytest.raises(FastTrackDimensionError):
        FastTrack(np.ones(2), finite_max_pdg(smooth, np.ones(2)))
    ft = FastTrack(
        np.ones(2), finite_max_pdg(smooth, np.ones(2)), strict=False
    )
    tp = solve_track(ft, [0.1, 0.2])
    assert tp.newton_iters == 0
    assert ft.v_dim == 0


def test_newton_failures(app, nonlinear_track):
    """Test the iteration cap and a point with no track."""
    phi, xbar = nonlinear_track
    ft = FastTrack(xbar, finite_max_pdg(phi, xbar), max_iters=1)
    with pytest.raises(NewtonDivergedError) as ex:
        solve_track(ft, [0.5])
    assert ex.value.code == 4

    ft = FastTrack(xbar, finite_max_pdg(phi, xbar))
    tp = solve_track(ft, [0.5])
    v = tp.v[0]
    assert 4 * v ** 2 + 4 * v + 0.25 == pytest.approx(0.0, abs=1e-10)
    with pytest.raises(NumericalFailureError):
        solve_track(ft, [2.0])


def test_property_probe_failures(app, nonlinear_track):
    """Test that failed solves are recorded unless every solve fails."""
    phi, xbar = nonlinear_track
    ft = FastTrack(xbar, finite_max_pdg(phi, xbar))
    with pytest.raises(NumericalFailureError):
        property_probe(ft, scales=[2.0, 3.0])
    report = property_probe(ft, scales=[0.1, 2.0])
    failed = [row for row in report.rows if row.error is not None]
    assert [row.scale for row in failed] == [2.0]
    assert report.max_ratio > 0


def test_l1_regularization_track(app):
    """Test that ``v = 0`` along the lifted ℓ1 track."""
    for seed in range(10):
        xbar = random_sparse_point(seed)
        m = xbar.shape[0]
        f = random_quadratic(np.random.default_rng(seed), m)
        pdg = l1_regularization_pdg(f, 0.5, xbar)
        ft = FastTrack(lifted_point(xbar), pdg)
        rng = np.random.default_rng(100 + seed)
        u = 0.1 * rng.standard_normal(ft.u_dim)
        tp = solve_track(ft, u)
        np.testing.assert_allclose(tp.v, 0.0, atol=1e-14)
        report = property_probe(ft, scales=[0.1, 0.01])
        last = "phi[{0}]".format(pdg.m2)
        for row in report.rows:
            assert set(row.inactive_gaps) == {last}
