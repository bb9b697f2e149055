"""Build script for the compiled Monte Carlo kernel.

The package works without the extension (a NumPy fallback is selected at
import time), but the compiled kernel makes long agent-level simulations
several times faster.
"""
import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "laborflow._kernel",
        sources=["src/laborflow/_kernel.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
