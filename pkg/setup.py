"""Build script for the optional compiled kernels.

The package works without them: ``cpn_toeplitz._backend`` falls back to the
numpy implementation when ``cpn_toeplitz._kernels`` cannot be imported.
"""
import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CPN_TOEPLITZ_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "cpn_toeplitz._kernels",
                    ["src/cpn_toeplitz/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
