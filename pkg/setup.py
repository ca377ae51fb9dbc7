"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
twin of every kernel ships in coverkit._kernels.pure); set
COVERKIT_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("COVERKIT_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "coverkit._kernels._core",
                    ["src/coverkit/_kernels/_core.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except Exception as exc:  # pragma: no cover - build-env dependent
        print(f"coverkit: skipping extension build ({exc}); pure-Python kernels will be used")
        ext_modules = []

setup(ext_modules=ext_modules)
