import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MTORS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("mtors._kernel._speedups", ["src/mtors/_kernel/_speedups.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # The package works without the compiled kernels; _kernel falls
        # back to the pure-Python implementations at import time.
        pass

setup(ext_modules=ext_modules)
