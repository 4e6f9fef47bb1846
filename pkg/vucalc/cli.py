# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""vucalc CLI module.

Each command reads a JSON problem spec and writes its report as text on
stdout, or as JSON with ``--json PATH`` (``-`` for stdout). Failures exit
with the code of the raised :class:`~vucalc.errors.VuCalcException`; only a
violated hypothesis or a failed verification still writes a block.
"""

import click
from flask.cli import ScriptInfo, with_appcontext

from .errors import HypothesisViolationError, VerificationMismatchError
from .factory import create_app
from .problems.api import (
    analyze,
    decomposition_report,
    track_report,
    verify_report,
)
from .problems.loaders import load_problem
from .problems.serializers import json_v1, text_v1
from .version import __version__


def _parse_scales(ctx, param, value):
    """Comma-separated positive numbers."""
    if value is None:
        return None
    try:
        scales = [float(s) for s in value.split(",") if s.strip()]
    except ValueError:
        raise click.BadParameter("expected comma-separated numbers.")
    if not scales or any(not t > 0 for t in scales):
        raise click.BadParameter("expected positive numbers.")
    return scales


def _parse_directions(ctx, param, value):
    """``auto`` or semicolon-separated vectors such as ``1,0;0,1``."""
    if value is None or value == "auto":
        return value
    try:
        return [
            [float(x) for x in vector.split(",")]
            for vector in value.split(";")
            if vector.strip()
        ]
    except ValueError:
        raise click.BadParameter('expected "auto" or vectors like "1,0;0,1".')


def _emit(block, json_path):
    if json_path:
        with click.open_file(json_path, "w") as fp:
            fp.write(json_v1.serialize(block) + "\n")
    else:
        click.echo(text_v1.serialize(block), nl=False)


def _run(build, json_path):
    """Build the report and write it, or the block of a reported failure."""
    try:
        report = build()
    except HypothesisViolationError as e:
        _emit(e.witness_block(), json_path)
        raise
    except VerificationMismatchError as e:
        _emit(
            dict(
                error=e.name,
                message=e.format_message(),
                comparisons=e.comparisons,
            ),
            json_path,
        )
        raise
    _emit(report, json_path)


json_option = click.option(
    "--json",
    "json_path",
    type=click.Path(dir_okay=False, writable=True, allow_dash=True),
    default=None,
    help="Write the JSON report to this path ('-' for stdout).",
)

spec_argument = click.argument(
    "spec_file", type=click.Path(exists=True, dir_okay=False)
)


@click.group()
@click.version_option(version=__version__)
@click.pass_context
def cli(ctx):
    """VU-decompositions and fast tracks of f = h∘Φ."""
    if ctx.obj is None:
        ctx.obj = ScriptInfo(create_app=create_app)


@cli.command()
@spec_argument
@json_option
@with_appcontext
def decompose(spec_file, json_path):
    """U-space, U-gradient and hypothesis checks at x̄."""
    spec = load_problem(spec_file)
    command = dict(name="decompose", spec_file=spec_file)
    _run(lambda: decomposition_report(analyze(spec), command), json_path)


@cli.command(name="fast-track")
@spec_argument
@click.option(
    "--directions",
    default=None,
    callback=_parse_directions,
    help='"auto" or semicolon-separated u-vectors.',
)
@click.option(
    "--scales",
    default=None,
    callback=_parse_scales,
    help="Comma-separated values of t.",
)
@json_option
@with_appcontext
def fast_track(spec_file, directions, scales, json_path):
    """Probe the fast track along rays ``t·d`` of U."""
    spec = load_problem(spec_file)
    command = dict(
        name="fast-track",
        spec_file=spec_file,
        directions=directions,
        scales=scales,
    )
    _run(
        lambda: track_report(spec, command, directions, scales), json_path
    )


@cli.command()
@spec_argument
@click.option("--seed", type=click.IntRange(min=0), default=None)
@click.option("--samples", type=click.IntRange(min=1), default=None)
@click.option("--radius", type=click.FloatRange(min=0, min_open=True),
              default=None)
@json_option
@with_appcontext
def verify(spec_file, seed, samples, radius, json_path):
    """Cross-check the analytic results against the oracles."""
    spec = load_problem(spec_file)
    command = dict(
        name="verify",
        spec_file=spec_file,
        seed=seed,
        samples=samples,
        radius=radius,
    )
    _run(
        lambda: verify_report(spec, command, seed, samples, radius),
        json_path,
    )
