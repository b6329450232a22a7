"""Optional compiled kernels.

The package is pure Python by default.  If Cython and a C compiler are
available, the hot-loop kernels in triconic/kernels/_fast.pyx are compiled;
otherwise the pure-Python twin is used at import time.

Build in place with:  python setup.py build_ext --inplace
"""

import os

from setuptools import Extension, setup

_PYX = "src/triconic/kernels/_fast.pyx"

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    if os.path.exists(_PYX):
        ext_modules = cythonize(
            [
                Extension(
                    "triconic.kernels._fast",
                    [_PYX],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    else:
        ext_modules = []

setup(ext_modules=ext_modules)
