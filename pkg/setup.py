import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "chm_mub._kernels",
                ["src/chm_mub/_kernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python fallback in chm_mub.kernels covers the missing extension.
    ext_modules = []

setup(ext_modules=ext_modules)
