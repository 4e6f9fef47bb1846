# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""VU calculus: chain rule, sum rule and their special cases.

Every rule checks its hypothesis first and refuses to compute when it does
not hold; ``compose_vu`` accepts ``force=True`` to report results flagged as
unverified instead.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.linalg
import simplejson as json
from flask import current_app, has_app_context

from ..atoms.api import QuadraticAtom
from ..errors import (
    AffineDependenceError,
    DimensionMismatchError,
    GeneratorBudgetExceededError,
    InvalidParameterError,
    MissingHorizonInfoError,
    SumRuleConditionViolatedError,
    TransversalityViolatedError,
)
from ..proxies import current_logger
from ..subdifferentials.api import (
    NonsmoothAtom,
    SubdifferentialModel,
    active_set,
    minkowski_difference_span,
    minkowski_sum,
    product,
    pushforward,
    subdifferential,
    zero_set,
)
from ..subspaces.api import (
    OrthonormalBasis,
    _normalize_signs,
    as_matrix,
    as_vector,
    intersect_subspaces,
    make_vu_pair,
    numerical_rank,
    orthonormal_complement,
)
from ..vu.api import UGradientResult, decompose, u_gradient
from .manifolds import ManifoldModel

TransversalityReport = namedtuple(
    "TransversalityReport", "holds witness rank expected tolerance"
)

NondegeneracyReport = namedtuple(
    "NondegeneracyReport", "holds witness horizon_trivial"
)

SumConditionReport = namedtuple(
    "SumConditionReport", "holds witness rank expected tolerance"
)

ChainResult = namedtuple(
    "ChainResult",
    [
        "u_basis",
        "u_gradient",
        "u_lagrangian_gradient",
        "pushforward_model",
        "transversality_verified",
        "vu",
        "ri_point",
        "hypothesis",
    ],
)
"""U-space and U-gradient of a composite ``f`` at x̄, in ℝ^m.

``ri_point`` is the ḡ the gradient was computed from, ``hypothesis`` the
report of the checked hypothesis (``None`` when none is needed).
"""


def _log(action, data):
    """Structured logging."""
    log_msg = dict(name="vucalc_calculus", action=action, data=data)
    current_logger.info(json.dumps(log_msg, sort_keys=True))


def _null_vector(M, rank):
    """Unit kernel vector of ``M`` past the first ``rank`` directions."""
    _, _, vt = scipy.linalg.svd(M, full_matrices=True)
    return vt[rank]


def _unit(z):
    z = z / np.linalg.norm(z)
    return _normalize_signs(z[:, np.newaxis])[:, 0]


def transversality_check(J, manifold, rank_tol=None):
    """Whether only ``z = 0`` in ``N_M`` satisfies ``J^T z = 0``.

    :param J: n×m Jacobian of Φ at x̄.
    :param manifold: :class:`ManifoldModel` at Φ(x̄).
    :returns: a :class:`TransversalityReport`, with a unit witness
        ``z ∈ N_M`` on failure.
    """
    J = as_matrix(J, "J")
    manifold.check_dim(J.shape[0])
    N = manifold.normal_basis.matrix
    k = N.shape[1]
    if k == 0:
        return TransversalityReport(True, None, 0, 0, 0.0)
    image = J.T @ N
    scale = max(np.linalg.norm(J, 2) if J.size else 0.0, 1.0)
    rank, tol = numerical_rank(image, rank_tol, scale=scale)
    witness = None
    if rank < k:
        witness = _unit(N @ _null_vector(image, rank))
    _log(
        "transversality_check",
        dict(holds=rank == k, rank=rank, expected=k, tolerance=tol),
    )
    return TransversalityReport(rank == k, witness, rank, k, tol)


def nondegeneracy_check(model, J, rank_tol=None):
    """Whether only ``z = 0`` in ``∂^∞h(Φ(x̄))`` satisfies ``J^T z = 0``.

    A trivial horizon subdifferential makes the check hold outright; for an
    indicator-restricted ``h_M`` it is transversality to ``M``.
    """
    if model.horizon_trivial:
        return NondegeneracyReport(True, None, True)
    if model.manifold is None:
        raise MissingHorizonInfoError()
    report = transversality_check(J, model.manifold, rank_tol)
    return NondegeneracyReport(report.holds, report.witness, False)


def compose_vu(
    model, J, manifold, force=False, ri_point=None, rank_tol=None
):
    """Chain rule for ``f = h∘Φ`` at x̄.

    :param model: model of ``∂h(Φ(x̄))`` in ℝ^n.
    :param J: n×m Jacobian of Φ at x̄.
    :param manifold: active manifold of ``h`` at Φ(x̄).
    :param force: report results even when transversality fails.
    :param ri_point: ḡ in ℝ^n, defaults to the ri-point of ``model``.
    """
    J = as_matrix(J, "J")
    n, m = J.shape
    if model.ambient_dim != n:
        raise DimensionMismatchError("J rows", model.ambient_dim, n)
    report = transversality_check(J, manifold, rank_tol)
    if not report.holds and not force:
        raise TransversalityViolatedError(report.witness, report.tolerance)
    if ri_point is None:
        g_bar = model.ri_point
    else:
        g_bar = as_vector(ri_point, n, "ri_point")
    image = pushforward(model, J)
    vu = decompose(image, rank_tol)
    result = u_gradient(vu, J.T @ g_bar)
    _log(
        "compose_vu",
        dict(m=m, n=n, u=vu.u_dim, transversal=report.holds, forced=force),
    )
    return ChainResult(
        vu.u_basis,
        result.u_gradient,
        result.u_lagrangian_gradient,
        image,
        report.holds,
        vu,
        g_bar,
        report,
    )


def smooth_perturbation(p_result, grad_q):
    """U-gradient of ``p + q`` for a C² ``q``, same U-space as ``p``.

    Works on :class:`~vucalc.vu.api.UGradientResult` and
    :class:`ChainResult` alike; the basis object is kept as is.
    """
    U = p_result.vu.u_basis.matrix
    grad_q = as_vector(grad_q, U.shape[0], "grad_q")
    delta = U.T @ grad_q
    updates = dict(
        u_gradient=p_result.u_gradient + U @ delta,
        u_lagrangian_gradient=p_result.u_lagrangian_gradient + delta,
    )
    if isinstance(p_result, UGradientResult):
        updates["ri_point_used"] = p_result.ri_point_used + grad_q
    return p_result._replace(**updates)


def l2_regularize(p_result, lam, xbar):
    """U-gradient of ``p + λ/2 ‖·‖²``."""
    if not float(lam) > 0:
        raise InvalidParameterError("lambda must be positive.")
    xbar = as_vector(xbar, p_result.vu.ambient_dim, "xbar")
    return smooth_perturbation(p_result, float(lam) * xbar)


def sum_condition_check(manifolds, rank_tol=None):
    """Whether the normal spaces are in direct sum.

    On failure the witness concatenates ``(z_1, …, z_k)``, not all zero,
    with ``z_i ∈ N_i`` and ``Σ z_i = 0``.
    """
    manifolds = list(manifolds)
    if not manifolds:
        raise InvalidParameterError("At least one manifold is required.")
    n = manifolds[0].ambient_dim
    for manifold in manifolds[1:]:
        manifold.check_dim(n)
    normals = [mf.normal_basis.matrix for mf in manifolds]
    expected = sum(N.shape[1] for N in normals)
    if expected == 0:
        return SumConditionReport(True, None, 0, 0, 0.0)
    stacked = np.hstack(normals)
    rank, tol = numerical_rank(stacked, rank_tol)
    witness = None
    if rank < expected:
        c = _null_vector(stacked, rank)
        parts, start = [], 0
        for N in normals:
            parts.append(N @ c[start:start + N.shape[1]])
            start += N.shape[1]
        witness = _unit(np.concatenate(parts))
    _log(
        "sum_condition_check",
        dict(holds=rank == expected, rank=rank, expected=expected),
    )
    return SumConditionReport(rank == expected, witness, rank, expected, tol)


def sum_rule(summands, rank_tol=None, generator_budget=None):
    """U-space and U-gradient of ``f = Σ f_i``.

    :param summands: ``(model, manifold, vu)`` triples, one per ``f_i`` at x̄.
    :returns: a :class:`ChainResult` whose ``pushforward_model`` is the
        Minkowski sum of the models, ``None`` past the generator budget.
    """
    summands = list(summands)
    report = sum_condition_check([s[1] for s in summands], rank_tol)
    if not report.holds:
        raise SumRuleConditionViolatedError(
            report.rank, report.expected, report.witness
        )
    n = summands[0][2].ambient_dim
    for model, _, vu in summands:
        if model.ambient_dim != n or vu.ambient_dim != n:
            raise DimensionMismatchError(
                "summand", n, (model.ambient_dim, vu.ambient_dim)
            )
    u_basis = intersect_subspaces(
        [vu.u_basis for _, _, vu in summands], rank_tol
    )
    vu = make_vu_pair(orthonormal_complement(u_basis), u_basis=u_basis)
    g_bar = np.sum([model.ri_point for model, _, _ in summands], axis=0)
    result = u_gradient(vu, g_bar)
    try:
        total = minkowski_sum([s[0] for s in summands], generator_budget)
    except GeneratorBudgetExceededError:
        total = None
    _log("sum_rule", dict(n=n, summands=len(summands), u=vu.u_dim))
    return ChainResult(
        u_basis,
        result.u_gradient,
        result.u_lagrangian_gradient,
        total,
        True,
        vu,
        result.ri_point_used,
        report,
    )


def separable_sum(blocks, generator_budget=None):
    """Assemble ``f(x) = Σ f_i(x_i)`` over independent variable blocks."""
    blocks = list(blocks)
    if not blocks:
        raise InvalidParameterError("At least one block is required.")
    n = sum(b.vu.ambient_dim for b in blocks)
    u_basis = OrthonormalBasis(
        scipy.linalg.block_diag(*[b.vu.u_basis.matrix for b in blocks]),
        ambient_dim=n,
    )
    v_basis = OrthonormalBasis(
        scipy.linalg.block_diag(*[b.vu.v_basis.matrix for b in blocks]),
        ambient_dim=n,
    )
    v_raw = scipy.linalg.block_diag(*[b.vu.v_raw for b in blocks])
    vu = make_vu_pair(v_basis, v_raw, u_basis)
    models = [b.pushforward_model for b in blocks]
    model = None
    if all(mdl is not None for mdl in models):
        try:
            model = product(models, generator_budget)
        except GeneratorBudgetExceededError:
            model = None
    return ChainResult(
        u_basis,
        np.concatenate([b.u_gradient for b in blocks]),
        np.concatenate([b.u_lagrangian_gradient for b in blocks]),
        model,
        all(b.transversality_verified for b in blocks),
        vu,
        np.concatenate([b.ri_point for b in blocks]),
        None,
    )


def l1_compose(f_smooth, tau, xbar, zero_tol=None, generator_budget=None):
    """VU of ``f + τ‖·‖₁`` at x̄ for a smooth ``f``.

    U is spanned by the coordinates where x̄ is nonzero, and the U-gradient
    is the projection of ``∇f(x̄) + τ sgn(x̄)`` onto it.
    """
    if not float(tau) > 0:
        raise InvalidParameterError("tau must be positive.")
    n = f_smooth.dim
    xbar = as_vector(xbar, n, "xbar")
    zeros = zero_set(xbar, zero_tol)
    support = [i for i in range(n) if i not in zeros]
    u_basis = OrthonormalBasis.coordinates(n, support)
    vu = make_vu_pair(OrthonormalBasis.coordinates(n, zeros), u_basis=u_basis)
    grad_f = f_smooth.grad(xbar)
    signs = np.sign(xbar)
    signs[list(zeros)] = 0.0
    result = u_gradient(vu, grad_f + float(tau) * signs)
    try:
        atom = NonsmoothAtom.l1_norm(float(tau), zero_tol=zero_tol)
        l1_model = subdifferential(atom, xbar, generator_budget)
        model = SubdifferentialModel(
            l1_model.generators + grad_f, l1_model.weights
        )
    except GeneratorBudgetExceededError:
        model = None
    _log("l1_compose", dict(n=n, zeros=len(zeros), u=vu.u_dim))
    return ChainResult(
        u_basis,
        result.u_gradient,
        result.u_lagrangian_gradient,
        model,
        True,
        vu,
        result.ri_point_used,
        None,
    )


def lasso_compose(A, b, tau, xbar, zero_tol=None, generator_budget=None):
    """:func:`l1_compose` for ``½‖Ax − b‖² + τ‖x‖₁``."""
    return l1_compose(
        QuadraticAtom.squared_residual(A, b), tau, xbar, zero_tol,
        generator_budget,
    )


def finite_max_compose(
    phi, xbar, active_tol=None, force=False, ri_point=None, rank_tol=None
):
    """Chain rule for ``f = max_i Φ_i`` at x̄.

    The active gradients must be affinely independent; U is computed from
    the pushed-forward subdifferential.
    """
    xbar = as_vector(xbar, phi.domain_dim, "xbar")
    y = phi.eval(xbar)
    atom = NonsmoothAtom.coordinate_max(active_tol=active_tol)
    model = subdifferential(atom, y)
    J = phi.jacobian(xbar)
    active = active_set(y, active_tol)
    if len(active) > 1 and not force:
        grads = J[list(active)]
        rank, _ = numerical_rank(
            (grads[1:] - grads[0]).T, rank_tol,
            scale=max(np.linalg.norm(J, 2), 1.0),
        )
        if rank < len(active) - 1:
            raise AffineDependenceError(active, rank, len(active) - 1)
    manifold = ManifoldModel.from_normal(
        minkowski_difference_span(model), rank_tol
    )
    return compose_vu(model, J, manifold, force, ri_point, rank_tol)


def _compose_job(app, job, kwargs):
    if app is None:
        return compose_vu(*job, **kwargs)
    with app.app_context():
        return compose_vu(*job, **kwargs)


def compose_vu_batch(jobs, max_workers=None, **kwargs):
    """Run :func:`compose_vu` over ``(model, J, manifold)`` jobs in threads.

    Jobs are independent and results come back in input order. Inside an
    application context every worker runs with the same configuration.
    """
    app = current_app._get_current_object() if has_app_context() else None
    jobs = list(jobs)
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        results = list(
            executor.map(lambda job: _compose_job(app, job, kwargs), jobs)
        )
    _log("compose_vu_batch", dict(jobs=len(jobs)))
    return results
