import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernel is optional: without it the package falls back to the
# numpy implementation at import time (see arbcycles.kernels).
ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "arbcycles._minplus",
                ["src/arbcycles/_minplus.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
