# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Helper proxies to the state object, the settings and the logger."""

import logging

from flask import current_app, has_app_context
from werkzeug.local import LocalProxy

from .ext import default_setting

current_vucalc = LocalProxy(lambda: current_app.extensions["vucalc"])
"""Helper proxy to get the current vucalc extension."""


def _has_extension():
    return has_app_context() and "vucalc" in current_app.extensions


def get_setting(key, value=None):
    """Return ``value`` if given, else the configured ``key``."""
    if value is not None:
        return value
    if _has_extension():
        return current_vucalc.setting(key)
    return default_setting(key)


def _get_logger():
    if has_app_context():
        return current_app.logger
    return logging.getLogger("vucalc")


current_logger = LocalProxy(_get_logger)
"""Logger of the current app, or the ``vucalc`` logger outside one."""
