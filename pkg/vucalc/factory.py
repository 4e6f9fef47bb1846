# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Application factory."""

from flask import Flask

from .ext import VuCalc


def create_app(**config):
    """Create the vucalc application.

    :param config: configuration overrides, applied before the defaults.
    """
    app = Flask("vucalc")
    app.config.update(config)
    VuCalc(app)
    return app
