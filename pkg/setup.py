"""Build hook for the compiled kernel extension.

The package is fully functional without the extension (a pure-numpy twin is
selected at import time), so any failure here degrades to a warning rather
than aborting the install.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    # -ffp-contract=off: the compiled kernels must be bit-identical to the
    # numpy fallback, so FMA contraction stays disabled and no fast-math
    # style reassociation is allowed.
    ext_modules = cythonize(
        [
            Extension(
                "trigame._kernels._ckernels",
                ["src/trigame/_kernels/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    warnings.warn(f"building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
