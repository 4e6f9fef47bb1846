# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""VU-decomposition, strong transversality and U-gradients."""

from collections import namedtuple

import scipy.linalg
import simplejson as json

from ..errors import (
    InvalidParameterError,
    PdgInconsistentError,
    RankDeficientVBarError,
)
from ..proxies import current_logger, get_setting
from ..subspaces.api import (
    as_vector,
    make_vu_pair,
    numerical_rank,
    orthonormal_range,
)

ConsistencyCheck = namedtuple("ConsistencyCheck", "index value gap holds")

PdgConsistencyReport = namedtuple(
    "PdgConsistencyReport", "holds f_value tolerance f_checks phi_checks"
)

StrongTransversalityReport = namedtuple(
    "StrongTransversalityReport",
    "holds vbar rank columns labels tolerance suggested_reduction",
)

SuggestedReduction = namedtuple(
    "SuggestedReduction", "reduced_f reduced_phi heuristic"
)


class UGradientResult(
    namedtuple(
        "UGradientResult",
        "u_gradient u_lagrangian_gradient vu ri_point_used",
    )
):
    """``∇_U f = Ū ∇L_U f`` together with the VU pair it lives in."""

    __slots__ = ()

    @property
    def u_basis(self):
        """Ū."""
        return self.vu.u_basis


def _log(action, data):
    """Structured logging."""
    log_msg = dict(name="vucalc_vu", action=action, data=data)
    current_logger.info(json.dumps(log_msg, sort_keys=True))


def decompose(model, rank_tol=None):
    """VU pair with ``V = span(∂f − ḡ)`` and ``U = V^⊥``.

    V is spanned by the differences to the first generator; the bases
    are independent of ḡ.
    """
    G = model.generators
    v_basis = orthonormal_range((G[1:] - G[0]).T, rank_tol)
    vu = make_vu_pair(v_basis)
    _log(
        "decompose",
        dict(n=vu.ambient_dim, u=vu.u_dim, v=vu.v_dim, generators=model.count),
    )
    return vu


def check_pdg_consistency(pdg, xbar, f_value=None, tol=None):
    """Check ``f_i(x̄) = f(x̄)`` and ``φ_j(x̄) = 0`` for every atom.

    :param f_value: ``f(x̄)``, defaults to ``f_0(x̄)``.
    :param tol: relative tolerance, scaled by ``1 + |f(x̄)|`` for the f's.
    """
    xbar = as_vector(xbar, pdg.dim, "xbar")
    tol = get_setting("VUCALC_CONSISTENCY_TOL", tol)
    if f_value is None:
        f_value = pdg.f_atoms[0].eval(xbar)
    f_tol = tol * (1 + abs(f_value))
    f_checks = []
    for i, atom in enumerate(pdg.f_atoms):
        value = atom.eval(xbar)
        gap = abs(value - f_value)
        f_checks.append(ConsistencyCheck(i, value, gap, gap <= f_tol))
    phi_checks = []
    for j, atom in enumerate(pdg.phi_atoms, start=1):
        value = atom.eval(xbar)
        phi_checks.append(
            ConsistencyCheck(j, value, abs(value), abs(value) <= tol)
        )
    holds = all(c.holds for c in f_checks + phi_checks)
    return PdgConsistencyReport(holds, f_value, tol, f_checks, phi_checks)


def suggest_reduction(pdg, xbar, rank_tol=None):
    """Greedy choice of ``K_f``, ``K_φ`` by column-pivoted QR.

    A heuristic: the first ``rank`` pivots of the full V̄ are kept.
    """
    vbar = pdg.columns(xbar, reduced=False)
    labels = pdg.labels(reduced=False)
    rank, _ = numerical_rank(vbar, rank_tol)
    keep = []
    if rank:
        _, _, pivots = scipy.linalg.qr(vbar, mode="economic", pivoting=True)
        keep = [labels[p] for p in sorted(pivots[:rank])]
    return SuggestedReduction(
        (0,) + tuple(i for kind, i in keep if kind == "f"),
        tuple(j for kind, j in keep if kind == "phi"),
        True,
    )


def strong_transversality(pdg, xbar, rank_tol=None):
    """Full column rank test of V̄ over the FULL index sets."""
    xbar = as_vector(xbar, pdg.dim, "xbar")
    vbar = pdg.columns(xbar, reduced=False)
    rank, tol = numerical_rank(vbar, rank_tol)
    columns = vbar.shape[1]
    holds = rank == columns
    report = StrongTransversalityReport(
        holds,
        vbar,
        rank,
        columns,
        pdg.labels(reduced=False),
        tol,
        None if holds else suggest_reduction(pdg, xbar, rank_tol),
    )
    _log(
        "strong_transversality",
        dict(pdg=pdg.name, holds=holds, rank=rank, columns=columns),
    )
    return report


def decompose_pdg(pdg, xbar, f_value=None, rank_tol=None, tol=None):
    """VU pair with ``V̄`` built from the reduced PDG columns at x̄."""
    xbar = as_vector(xbar, pdg.dim, "xbar")
    report = check_pdg_consistency(pdg, xbar, f_value, tol)
    if not report.holds:
        raise PdgInconsistentError(report)
    v_raw = pdg.columns(xbar, reduced=True)
    rank, _ = numerical_rank(v_raw, rank_tol)
    if rank < v_raw.shape[1]:
        raise RankDeficientVBarError(v_raw.shape[1], rank)
    if pdg.is_reduced:
        full_rank, _ = numerical_rank(pdg.columns(xbar, False), rank_tol)
        if full_rank > rank:
            raise InvalidParameterError(
                "The reduced index sets span a {0}-dimensional space, "
                "V has dimension {1}.".format(rank, full_rank)
            )
    vu = make_vu_pair(orthonormal_range(v_raw, rank_tol), v_raw)
    _log(
        "decompose_pdg",
        dict(pdg=pdg.name, n=vu.ambient_dim, u=vu.u_dim, v=vu.v_dim),
    )
    return vu


def u_gradient(vu, g_bar):
    """``∇_U f = ŪŪ^T ḡ`` and ``∇L_U f = Ū^T ḡ``."""
    g_bar = as_vector(g_bar, vu.ambient_dim, "g_bar")
    U = vu.u_basis.matrix
    lagrangian = U.T @ g_bar
    return UGradientResult(U @ lagrangian, lagrangian, vu, g_bar)
