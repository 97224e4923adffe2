"""Builds the compiled force kernel. The package works without it (pure
numpy fallback), so a failed extension build is not fatal for development:
run `pip install -e . --no-build-isolation` normally, or set
GROWFORMS_SKIP_EXT=1 to skip the extension entirely."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("GROWFORMS_SKIP_EXT"):
    from setuptools import Extension
    from Cython.Build import cythonize
    import numpy as np

    ext_modules = cythonize(
        [
            Extension(
                "growforms.sim._kernels",
                ["src/growforms/sim/_kernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
