"""Build script for the compiled integrator kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so failures here only cost speed, not functionality.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    # -ffp-contract=off keeps the C kernel bit-identical to the Python
    # fallback: both must execute the same IEEE double operations in the
    # same order, and fused multiply-add would break that.
    ext_modules = cythonize(
        [
            Extension(
                "cryomems._kernel",
                sources=["src/cryomems/_kernel.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
