"""Build script: compiles the hot simulation loop into a C extension.

The extension is optional.  `zblfsim._kernel` is written in Cython pure-Python
mode, so the same file runs interpreted if compilation is skipped (set
ZBLFSIM_PURE_PYTHON=1) or fails.  -ffp-contract=off keeps the compiled
floating-point sequence identical to the interpreted one, so both backends
produce the same trajectories bit for bit.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ZBLFSIM_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "zblfsim._kernel",
                    ["src/zblfsim/_kernel.py"],
                    # -ffp-contract=off: no FMA contraction; -fno-builtin-sin/cos:
                    # stop GCC from fusing sin+cos pairs into glibc sincos
                    # (1-ulp differences on rare arguments).  Both flags guard
                    # the bit-for-bit match between the compiled and
                    # interpreted loops.
                    extra_compile_args=["-O3", "-ffp-contract=off",
                                        "-fno-builtin-sin", "-fno-builtin-cos",
                                        "-fno-builtin-sincos"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("Cython not available; installing with the pure-Python loop only")

setup(ext_modules=ext_modules)
