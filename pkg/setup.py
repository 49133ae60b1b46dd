"""Build script for the optional compiled suppression kernels.

The extension is marked optional: if no C compiler (or Cython) is available
the install still succeeds and nmskit falls back to the pure numpy kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "nmskit._kernels",
                ["src/nmskit/_kernels.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
