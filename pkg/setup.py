"""Builds the optional compiled sweep kernel.

The package is fully functional without it (polarkit.kernels falls back to
the NumPy implementation); set POLARKIT_SKIP_NATIVE=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("POLARKIT_SKIP_NATIVE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "polarkit._native",
                    ["src/polarkit/_native.pyx"],
                    # -ffp-contract=off keeps the C arithmetic bit-identical
                    # to the NumPy fallback (no fused multiply-add).
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
