"""Build script: compiles the optional jet-kernel extension.

The package works without the extension (a pure-NumPy fallback is selected
at import time), so a missing compiler or Cython only costs speed.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "opineq.jets._jetcore",
                sources=["src/opineq/jets/_jetcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(f"opineq: building without compiled jet core ({exc})\n")

setup(ext_modules=ext_modules)
