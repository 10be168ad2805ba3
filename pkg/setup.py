import numpy as np
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "scriptgrader.similarity._ckernels",
                ["src/scriptgrader/similarity/_ckernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python kernel fallback is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
