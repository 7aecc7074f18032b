"""Build script: compiles the optional modular-arithmetic kernel.

The package is fully functional without the compiled extension (a pure
Python fallback is selected at import time); the extension only speeds up
the hot contraction loops.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "diagdom._kernels",
                ["src/diagdom/_kernels.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[__import__("numpy").get_include()],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
