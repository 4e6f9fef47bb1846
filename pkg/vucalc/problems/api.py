# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Problems ``f = h∘Φ`` read from specs, and the analyses run on them."""

from collections import namedtuple

import numpy as np
import simplejson as json

from ..atoms.api import ComposedAtom, QuadraticAtom, SmoothMap
from ..calculus.api import (
    NondegeneracyReport,
    compose_vu,
    finite_max_compose,
    l1_compose,
    nondegeneracy_check,
    sum_condition_check,
    transversality_check,
)
from ..calculus.manifolds import ManifoldModel
from ..errors import (
    GeneratorBudgetExceededError,
    InvalidParameterError,
    VerificationMismatchError,
)
from ..fast_track.api import FastTrack, property_probe
from ..oracles.api import (
    brute_force_u_space,
    composite_gradient_oracle,
    fd_u_lagrangian_gradient,
    sample_subdifferential,
    subspace_distance,
)
from ..proxies import current_logger, get_setting
from ..subdifferentials.api import (
    L1_NORM,
    NonsmoothAtom,
    minkowski_difference_span,
    pushforward,
    zero_set,
)
from ..subdifferentials.outer import OuterFunction, OuterPart
from ..subspaces.api import OrthonormalBasis, as_vector
from ..vu.api import strong_transversality
from ..vu.pdg import composite_pdg

OUTER_KINDS = ("max", "l1", "smooth", "sum")
"""Kinds of the ``h`` record."""

PART_KINDS = ("max", "l1", "smooth")
"""Kinds of the parts of a ``sum``."""

Analysis = namedtuple(
    "Analysis",
    "spec phi outer xbar J rule result g_bar hypotheses pdg reduction",
)
"""Outcome of :func:`analyze`; ``g_bar`` is ḡ of ``f`` in ℝ^m."""


def _log(action, data):
    """Structured logging."""
    log_msg = dict(name="vucalc_problems", action=action, data=data)
    current_logger.info(json.dumps(log_msg, sort_keys=True))


class ProblemSpec(object):
    """A validated problem: Φ as quadratic atoms, ``h``, x̄ and options."""

    def __init__(self, m, phi, h, xbar, options=None):
        """Constructor.

        :param m: number of variables.
        :param phi: list of ``dict(A=..., b=..., c=...)`` records, ``A``
            optional.
        :param h: outer function record.
        :param xbar: base point.
        :param options: tolerances and run options.
        """
        self.m = m
        self.phi = phi
        self.h = h
        self.xbar = xbar
        self.options = dict(options or {})

    @property
    def n(self):
        """Number of components of Φ."""
        return len(self.phi)

    def option(self, name, override=None):
        """``override`` if given, else the problem option or ``None``."""
        if override is not None:
            return override
        return self.options.get(name)

    def point(self):
        """x̄ as a vector."""
        return as_vector(self.xbar, self.m, "xbar")

    def inner_map(self):
        """Φ as a :class:`~vucalc.atoms.api.SmoothMap`."""
        return SmoothMap(
            [
                QuadraticAtom(atom.get("A"), atom["b"], atom.get("c", 0.0))
                for atom in self.phi
            ],
            self.m,
        )

    def _part(self, record, default_indices):
        indices = record.get("indices", default_indices)
        kind = record["kind"]
        tolerances = dict(
            active_tol=self.options.get("active_tol"),
            zero_tol=self.options.get("zero_tol"),
        )
        if kind == "max":
            atom = NonsmoothAtom.coordinate_max(**tolerances)
        elif kind == "l1":
            atom = NonsmoothAtom.l1_norm(record.get("tau", 1.0), **tolerances)
        else:
            b = record.get("b", np.ones(len(indices)))
            atom = QuadraticAtom(record.get("A"), b, record.get("c", 0.0))
        return OuterPart(atom, indices)

    def outer_function(self):
        """The outer function ``h`` of the problem."""
        everything = list(range(self.n))
        if self.h["kind"] == "sum":
            parts = [self._part(p, everything) for p in self.h["parts"]]
        else:
            parts = [self._part(self.h, everything)]
        return OuterFunction(self.n, parts)

    def dump(self):
        """The spec as a JSON-ready ``dict``."""
        return dict(
            m=self.m,
            phi=[dict(atom) for atom in self.phi],
            h=dict(self.h),
            xbar=list(self.xbar),
            options=dict(self.options),
        )

    def __eq__(self, other):
        """Equality of the dumped specs."""
        return isinstance(other, ProblemSpec) and self.dump() == other.dump()

    __hash__ = None

    def __repr__(self):
        """Representation."""
        return "ProblemSpec(m={0}, n={1}, h={2})".format(
            self.m, self.n, self.h["kind"]
        )


def _l1_structure(spec, phi, outer):
    """``(f, τ, l1 indices)`` when ``h∘Φ = f + τ‖x‖₁``, else ``None``.

    The ℓ1 part must read the coordinates ``x_0, …, x_{m-1}`` in order and
    every other part must be smooth.
    """
    l1_parts = [p for p in outer.parts if p.kind == L1_NORM]
    if len(l1_parts) != 1:
        return None
    l1_part = l1_parts[0]
    if len(l1_part.indices) != spec.m:
        return None
    for j, i in enumerate(l1_part.indices):
        if phi.components[i] != QuadraticAtom.coordinate(spec.m, j):
            return None
    f = QuadraticAtom.affine(np.zeros(spec.m))
    for part in outer.parts:
        if part is l1_part:
            continue
        if not part.smooth:
            return None
        f = f + ComposedAtom(part.atom, phi.select(part.indices))
    return f, l1_part.atom.tau, l1_part.indices


def _pdg(spec, phi, outer, xbar):
    """PDG structure of the problem with the reduction of the options.

    Without one, a failing strong transversality check falls back to the
    suggested reduction.
    """
    opts = spec.options
    pdg = composite_pdg(
        phi, outer, xbar, opts.get("active_tol"), opts.get("zero_tol")
    )
    strong = strong_transversality(pdg, xbar, opts.get("rank_tol"))
    reduction = dict(heuristic=False)
    if "reduced_f" in opts or "reduced_phi" in opts:
        pdg = pdg.with_reduction(
            opts.get("reduced_f"), opts.get("reduced_phi")
        )
    elif not strong.holds:
        suggestion = strong.suggested_reduction
        pdg = pdg.with_reduction(suggestion.reduced_f, suggestion.reduced_phi)
        reduction["heuristic"] = True
    reduction.update(
        name=pdg.name,
        f_count=len(pdg.f_atoms),
        phi_count=pdg.m2,
        reduced_f=list(pdg.reduced_f),
        reduced_phi=list(pdg.reduced_phi),
    )
    return pdg, strong, reduction


def analyze(spec):
    """U-space, U-gradient and hypothesis checks of the problem at x̄.

    A pure ``max`` goes through the finite-max rule and everything else
    through the chain rule; past the generator budget, a problem of the
    form ``f + τ‖x‖₁`` falls back to the structured ℓ1 rule.
    """
    opts = spec.options
    rank_tol = opts.get("rank_tol")
    budget = opts.get("generator_budget")
    ri_point = opts.get("ri_point_override")
    force = bool(opts.get("force", False))
    phi = spec.inner_map()
    outer = spec.outer_function()
    xbar = spec.point()
    y = phi.eval(xbar)
    J = phi.jacobian(xbar)
    hypotheses = dict(sum_condition=None)
    if outer.is_pure_max:
        rule = "finite_max"
        result = finite_max_compose(
            phi, xbar, opts.get("active_tol"), force, ri_point, rank_tol
        )
        g_bar = J.T @ result.ri_point
        hypotheses["nondegeneracy"] = nondegeneracy_check(
            outer.subdifferential(y, budget), J, rank_tol
        )
    else:
        try:
            model = outer.subdifferential(y, budget)
            manifold = ManifoldModel.from_normal(
                outer.difference_columns(y, budget), rank_tol
            )
            rule = "chain"
            result = compose_vu(model, J, manifold, force, ri_point, rank_tol)
            g_bar = J.T @ result.ri_point
            hypotheses["nondegeneracy"] = nondegeneracy_check(
                model, J, rank_tol
            )
        except GeneratorBudgetExceededError:
            structure = _l1_structure(spec, phi, outer)
            if structure is None:
                raise
            if ri_point is not None:
                raise InvalidParameterError(
                    "ri_point_override is not supported past the generator "
                    "budget."
                )
            f, tau, indices = structure
            rule = "l1"
            result = l1_compose(f, tau, xbar, opts.get("zero_tol"), budget)
            g_bar = result.ri_point
            zeros = [indices[j] for j in zero_set(xbar, opts.get("zero_tol"))]
            manifold = ManifoldModel(
                OrthonormalBasis.coordinates(spec.n, zeros)
            )
            result = result._replace(
                hypothesis=transversality_check(J, manifold, rank_tol)
            )
            # f + τ‖x‖₁ is finite
            hypotheses["nondegeneracy"] = NondegeneracyReport(True, None, True)
    hypotheses["transversality"] = result.hypothesis
    if spec.h["kind"] == "sum":
        try:
            manifolds = [
                ManifoldModel.from_normal(
                    minkowski_difference_span(m), rank_tol
                )
                for m in outer.part_models(y, budget)
            ]
            hypotheses["sum_condition"] = sum_condition_check(
                manifolds, rank_tol
            )
        except GeneratorBudgetExceededError:
            pass
    pdg, strong, reduction = _pdg(spec, phi, outer, xbar)
    hypotheses["strong_transversality"] = strong
    _log(
        "analyze",
        dict(rule=rule, m=spec.m, n=spec.n, u=result.vu.u_dim, forced=force),
    )
    return Analysis(
        spec, phi, outer, xbar, J, rule, result, g_bar, hypotheses,
        pdg, reduction,
    )


def _dimensions(spec, vu):
    return dict(m=spec.m, n=spec.n, u=vu.u_dim, v=vu.v_dim)


def _tolerances(spec, *names):
    return {
        name: spec.option(name) or get_setting("VUCALC_" + name.upper())
        for name in names
    }


def decomposition_report(analysis, command):
    """Report of :func:`analyze` for the ``decompose`` command."""
    result = analysis.result
    return dict(
        command=command,
        rule=analysis.rule,
        dimensions=_dimensions(analysis.spec, result.vu),
        u_basis=result.u_basis,
        v_basis=result.vu.v_basis,
        u_gradient=result.u_gradient,
        u_lagrangian_gradient=result.u_lagrangian_gradient,
        ri_point=analysis.g_bar,
        transversality_verified=result.transversality_verified,
        hypotheses=analysis.hypotheses,
        pdg=analysis.reduction,
        tolerances=_tolerances(
            analysis.spec, "rank_tol", "active_tol", "zero_tol",
            "consistency_tol",
        ),
    )


def _directions(spec, directions):
    directions = spec.option("directions", directions)
    if directions is None or directions == "auto":
        return None
    return [as_vector(d, name="direction") for d in directions]


def track_report(spec, command, directions=None, scales=None):
    """Fast-track probe of the problem, for the ``fast-track`` command.

    :param directions: ``"auto"`` or u-vectors; the problem option otherwise.
    :param scales: values of ``t``; the problem option otherwise.
    """
    opts = spec.options
    phi = spec.inner_map()
    xbar = spec.point()
    pdg, _, reduction = _pdg(spec, phi, spec.outer_function(), xbar)
    ft = FastTrack(
        xbar,
        pdg,
        newton_tol=opts.get("newton_tol"),
        max_iters=opts.get("max_iters"),
        rank_tol=opts.get("rank_tol"),
    )
    probe = property_probe(
        ft,
        _directions(spec, directions),
        spec.option("scales", scales),
        opts.get("fd_step"),
    )
    return dict(
        command=command,
        dimensions=_dimensions(spec, ft.vu),
        u_basis=ft.vu.u_basis,
        v_raw=ft.v_raw,
        pdg=reduction,
        probe=probe,
        tolerances=_tolerances(spec, "newton_tol", "fd_step"),
    )


def _comparison(value, tolerance):
    holds = bool(value <= tolerance)
    return dict(value=value, tolerance=tolerance, holds=holds)


def verify_report(spec, command, seed=None, samples=None, radius=None):
    """Analytic results against the oracles, for the ``verify`` command.

    :raises VerificationMismatchError: when some comparison fails.
    """
    analysis = analyze(spec)
    opts = spec.options
    result = analysis.result
    phi, outer, xbar = analysis.phi, analysis.outer, analysis.xbar
    rank_tol = opts.get("rank_tol")
    subspace_tol = get_setting("VUCALC_VERIFY_SUBSPACE_TOL")
    gradient_tol = get_setting("VUCALC_VERIFY_GRADIENT_TOL")
    comparisons = dict(exact_subspace_distance=None)

    if analysis.rule != "l1":
        h_model = outer.subdifferential(
            phi.eval(xbar), opts.get("generator_budget")
        )
        exact = brute_force_u_space(pushforward(h_model, analysis.J), rank_tol)
        comparisons["exact_subspace_distance"] = _comparison(
            subspace_distance(exact, result.u_basis), subspace_tol
        )

    seed = int(get_setting("VUCALC_SAMPLING_SEED", spec.option("seed", seed)))
    samples = int(
        get_setting("VUCALC_SAMPLING_SAMPLES", spec.option("samples", samples))
    )
    radius = float(
        get_setting("VUCALC_SAMPLING_RADIUS", spec.option("radius", radius))
    )
    lipschitz = outer.lipschitz_bound(phi, xbar, radius)
    noise = radius * lipschitz
    dedup_tol = max(get_setting("VUCALC_DEDUP_TOL"), 4 * noise)
    sampled = sample_subdifferential(
        composite_gradient_oracle(phi, outer),
        xbar,
        radius,
        samples,
        seed,
        dedup_tol=dedup_tol,
    )
    sampled_u = brute_force_u_space(sampled, rank_tol=10 * dedup_tol)
    comparisons["sampled_subspace_distance"] = _comparison(
        subspace_distance(sampled_u, result.u_basis),
        max(subspace_tol, get_setting("VUCALC_VERIFY_SAMPLED_FACTOR") * noise),
    )

    pdg, reduction = analysis.pdg, analysis.reduction
    ft = FastTrack(
        xbar,
        pdg,
        newton_tol=opts.get("newton_tol"),
        max_iters=opts.get("max_iters"),
        strict=False,
        rank_tol=rank_tol,
    )
    comparisons["pdg_subspace_distance"] = _comparison(
        subspace_distance(ft.vu.u_basis, result.u_basis), subspace_tol
    )
    fd = fd_u_lagrangian_gradient(
        lambda x: outer.eval(phi.eval(x)), ft, analysis.g_bar,
        opts.get("fd_step"),
    )
    lifted = ft.u_basis @ fd
    comparisons["fd_gradient_error"] = _comparison(
        float(np.max(np.abs(lifted - result.u_gradient), initial=0.0)),
        gradient_tol,
    )
    _log(
        "verify",
        dict(
            rule=analysis.rule,
            holds={k: c["holds"] for k, c in comparisons.items() if c},
        ),
    )
    if not all(c["holds"] for c in comparisons.values() if c is not None):
        raise VerificationMismatchError(comparisons)
    return dict(
        command=command,
        rule=analysis.rule,
        dimensions=_dimensions(spec, result.vu),
        u_basis=result.u_basis,
        u_gradient=result.u_gradient,
        fd_u_gradient=lifted,
        comparisons=comparisons,
        pdg=reduction,
        sampling=dict(
            seed=seed,
            samples=samples,
            radius=radius,
            generators=sampled.count,
            lipschitz_bound=lipschitz,
            dedup_tol=dedup_tol,
        ),
    )
