"""Build script for the optional compiled kernels.

The package is fully functional without the extension; _backend falls back
to the numpy implementation when the import fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "graphcodes._kernels",
                ["src/graphcodes/_kernels.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
