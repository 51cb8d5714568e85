"""Build script for the optional compiled kernel backend.

The package is fully functional without the extension: ``uescore.kernels``
falls back to its pure-Python reference implementation when the compiled
module is missing. Any failure here (no Cython, no C compiler) therefore
degrades to a pure install instead of aborting.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("UESCORE_PURE", "") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "uescore.kernels._native",
                    ["src/uescore/kernels/_native.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
