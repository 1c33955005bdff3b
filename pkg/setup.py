"""Build script for the optional compiled scalar kernel.

The package works without the extension (a pure-Python twin is selected at
import time); the Cython module only speeds up the hot polynomial arithmetic.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qore._kernel._polyz",
                ["src/qore/_kernel/_polyz.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
