# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Common pytest fixtures and plugins."""

import os

import pytest

from vucalc.factory import create_app


@pytest.fixture()
def app():
    """Application with the vucalc extension and a pushed app context."""
    app = create_app(TESTING=True)
    with app.app_context():
        yield app


@pytest.fixture()
def cli_runner(app):
    """Click runner bound to the test application."""
    return app.test_cli_runner()


@pytest.fixture()
def datadir():
    """Directory of the test problem specs."""
    return os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture()
def examples_dir():
    """Directory of the problem specs shipped with the package."""
    import vucalc

    return os.path.join(os.path.dirname(vucalc.__file__), "problems", "data")
