# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Flask extension holding the vucalc configuration."""

import os

import simplejson as json

from . import config

CONFIG_PREFIX = "VUCALC_"


def config_keys():
    """Names of all the vucalc settings."""
    return sorted(k for k in dir(config) if k.startswith(CONFIG_PREFIX))


def parse_env_value(raw):
    """Parse an environment value as JSON, falling back to the raw string."""
    try:
        return json.loads(raw)
    except ValueError:
        return raw


def default_setting(key):
    """Value of a setting outside an application: environment, then default."""
    if key in os.environ:
        return parse_env_value(os.environ[key])
    return getattr(config, key)


class _VuCalcState(object):
    """vucalc state."""

    def __init__(self, app):
        """Initialize state."""
        self.app = app

    def setting(self, key):
        """Get a configuration value."""
        return self.app.config[key]


class VuCalc(object):
    """vucalc extension."""

    def __init__(self, app=None):
        """Extension initialization."""
        if app:
            self.init_app(app)

    def init_app(self, app):
        """Flask application initialization."""
        self.init_config(app)
        app.extensions["vucalc"] = _VuCalcState(app)

    def init_config(self, app):
        """Initialize configuration, environment variables win."""
        for k in config_keys():
            app.config.setdefault(k, getattr(config, k))
            if k in os.environ:
                app.config[k] = parse_env_value(os.environ[k])
