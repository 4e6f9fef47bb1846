# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 vucalc contributors.
#
# vucalc is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""VU-decompositions, U-gradients and fast tracks of composite functions."""

import os

from setuptools import find_packages, setup

readme = open("README.rst").read()

tests_require = [
    "check-manifest>=0.42",
    "isort>=5.0.0",
    "pydocstyle>=6.0.0",
    "pytest>=6.0.0",
    "pytest-cov>=2.10.0",
    "pytest-mock>=1.6.0",
]

extras_require = {
    "docs": ["Sphinx>=4.2.0"],
    "tests": tests_require,
}

extras_require["all"] = []
for name, reqs in extras_require.items():
    extras_require["all"].extend(reqs)

install_requires = [
    "Flask>=2.0.0",
    "click>=8.0.0",
    "marshmallow>=3.13.0,<4.0.0",
    # needed to have namedtuple json serialized as dict
    "simplejson>=3.8.1",
    "jsonschema>=3.0.0",
    "numpy>=1.20.0",
    "scipy>=1.7.0",
]

packages = find_packages(exclude=["tests", "tests.*", "examples*"])

# Get the version string. Cannot be done with import!
g = {}
with open(os.path.join("vucalc", "version.py"), "rt") as fp:
    exec(fp.read(), g)
    version = g["__version__"]

setup(
    name="vucalc",
    version=version,
    description=__doc__,
    long_description=readme,
    keywords="nonsmooth optimization VU-decomposition fast track",
    license="MIT",
    author="vucalc contributors",
    packages=packages,
    zip_safe=False,
    include_package_data=True,
    platforms="any",
    entry_points={
        "console_scripts": ["vucalc = vucalc.cli:cli"],
    },
    extras_require=extras_require,
    install_requires=install_requires,
    tests_require=tests_require,
    python_requires=">=3.8",
    classifiers=[
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Development Status :: 3 - Alpha",
    ],
)
