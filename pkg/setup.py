"""Build script.  The Cython extension is optional: if Cython or a C
compiler is unavailable the package installs anyway and falls back to
the pure-Python kernels at import time."""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/tiecut/_kernels.pyx"],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
