# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Test the vucalc extension and its settings."""

import json

from vucalc import config
from vucalc.ext import config_keys, default_setting, parse_env_value
from vucalc.factory import create_app
from vucalc.proxies import current_vucalc, get_setting
from vucalc.subdifferentials.api import SubdifferentialModel
from vucalc.vu.api import decompose


def test_defaults(app):
    """Test that every default lands in the app config."""
    for key in config_keys():
        assert app.config[key] == getattr(config, key)
    assert "vucalc" in app.extensions
    assert get_setting("VUCALC_NEWTON_TOL") == 1e-12
    assert get_setting("VUCALC_NEWTON_TOL", 1e-6) == 1e-6


def test_app_overrides():
    """Test that explicit configuration wins over the defaults."""
    app = create_app(VUCALC_NEWTON_MAX_ITERS=7)
    with app.app_context():
        assert get_setting("VUCALC_NEWTON_MAX_ITERS") == 7
        assert current_vucalc.setting("VUCALC_NEWTON_MAX_ITERS") == 7
        assert current_vucalc.setting("VUCALC_NEWTON_TOL") == 1e-12


def test_environment_overrides(monkeypatch):
    """Test ``VUCALC_*`` environment variables."""
    monkeypatch.setenv("VUCALC_RANK_TOL", "1e-6")
    monkeypatch.setenv("VUCALC_PROBE_SCALES", "[0.5, 0.25]")
    app = create_app(VUCALC_RANK_TOL="auto")
    assert app.config["VUCALC_RANK_TOL"] == 1e-6
    assert app.config["VUCALC_PROBE_SCALES"] == [0.5, 0.25]
    assert default_setting("VUCALC_RANK_TOL") == 1e-6


def test_settings_outside_an_app():
    """Test the defaults read without an application."""
    assert default_setting("VUCALC_SAMPLING_SEED") == 42
    assert get_setting("VUCALC_SAMPLING_SEED") == 42
    assert parse_env_value("auto") == "auto"
    assert parse_env_value("3") == 3


def test_structured_logging(app, mocker):
    """Test that operations log one JSON document per action."""
    logger = mocker.patch("vucalc.vu.api.current_logger")
    decompose(SubdifferentialModel([[1.0, 0.0], [-1.0, 0.0]]))
    (message,), _ = logger.info.call_args
    assert json.loads(message) == dict(
        name="vucalc_vu",
        action="decompose",
        data=dict(n=2, u=1, v=1, generators=2),
    )
