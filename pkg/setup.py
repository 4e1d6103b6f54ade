"""Build hook for the optional compiled kernel.

The package works without it; ``poincare_series.kernels`` falls back to
the numpy implementation when ``_kernel`` cannot be imported.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("POINCARE_SERIES_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "poincare_series._kernel",
                    ["src/poincare_series/_kernel.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
