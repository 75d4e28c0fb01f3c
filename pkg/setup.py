"""Build script for the optional compiled kernels.

The package is fully functional without the extension; _kernels falls back
to the pure-Python implementation at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "chaincert._kernels._speedups",
                ["src/chaincert/_kernels/_speedups.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
