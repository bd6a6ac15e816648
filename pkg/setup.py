#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
picardmult setup configuration
"""
from setuptools import setup


setup(
    name="picardmult",
    version="0.1.0",
    description="Verification suites for fractional weight multiplier systems on Picard modular groups",
    packages=["picardmult", "picardmult.data"],
    package_data={"picardmult.data": ["relations.txt"]},
    python_requires=">=3.10",
    zip_safe=False,
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "sympy>=1.12",
        "pyyaml",
        "yapic.json>=1.6.3",
    ],
    extras_require={
        "test": ["pytest>=7.0.0", "hypothesis>=6.0.0"],
    },
    entry_points={
        "console_scripts": ["picardmult=picardmult.cli:main"],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: OS Independent",
    ]
)
