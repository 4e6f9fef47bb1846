# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Default configuration for vucalc.

You overwrite and set instance-specific configuration by either:

- Flask configuration: ``app.config["VUCALC_<name>"]``
- Environment variables: ``VUCALC_<name>`` (values are parsed as JSON)
"""

VUCALC_RANK_TOL = "auto"
"""Singular value threshold for numerical rank decisions.

``"auto"`` means ``max(rows, cols) * machine_eps * sigma_max``.
"""

VUCALC_ORTH_TOL = 1e-12
"""Allowed deviation of ``B^T B`` from the identity for orthonormal bases."""

VUCALC_VU_ORTH_TOL = 1e-10
"""Allowed ``max |U^T V|`` for a VU pair."""

VUCALC_ACTIVE_TOL = 1e-8
"""Relative active-set tolerance: ``max(y) - y_i <= tol(1+|max|)``."""

VUCALC_ZERO_TOL = 1e-10
"""Absolute tolerance for zero detection of ℓ1 coordinates."""

VUCALC_CONSISTENCY_TOL = 1e-8
"""Tolerance of the PDG consistency check at x̄."""

VUCALC_GENERATOR_BUDGET = 4096
"""Maximum number of generators of a subdifferential model."""

VUCALC_NEWTON_TOL = 1e-12
"""Residual (max-norm) at which the fast-track Newton solve stops."""

VUCALC_NEWTON_MAX_ITERS = 50
"""Iteration cap of the fast-track Newton solve."""

VUCALC_NEWTON_GROWTH_LIMIT = 5
"""Consecutive residual increases after which Newton is declared divergent."""

VUCALC_FD_STEP = 1e-5
"""Central finite-difference step."""

VUCALC_DEDUP_TOL = 1e-6
"""Distance under which sampled gradients are merged."""

VUCALC_KINK_FRACTION_LIMIT = 0.9
"""Fraction of draws on kinks above which sampling gives up."""

VUCALC_SAMPLING_SEED = 42
"""Default seed of the subdifferential sampler."""

VUCALC_SAMPLING_SAMPLES = 2000
"""Default number of sampled points."""

VUCALC_SAMPLING_RADIUS = 1e-4
"""Default radius of the sampling ball around x̄."""

VUCALC_SAMPLING_STREAMS = 8
"""Number of independent random substreams spawned from the seed."""

VUCALC_PROBE_SCALES = [1e-1, 1e-2, 1e-3]
"""Default scales t of the fast-track property probe."""

VUCALC_VERIFY_SUBSPACE_TOL = 1e-8
"""Largest principal angle accepted between analytic and exact U-spaces."""

VUCALC_VERIFY_GRADIENT_TOL = 1e-5
"""Max-norm gap accepted between analytic and finite-difference gradients."""

VUCALC_VERIFY_SAMPLED_FACTOR = 100.0
"""Sampled U-space tolerance, in units of ``radius * lipschitz``."""

VUCALC_REPORT_DIGITS = 6
"""Significant digits of the text report."""
