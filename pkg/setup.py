"""Build script: compiles the optional Cython fast path.

The package works without the extension (a numpy fallback is selected at
import time), so any compiler or Cython failure downgrades to a pure-Python
install instead of aborting.
"""
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: extension build failed ({exc}); "
                  "installing pure-Python fallback", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "installing pure-Python fallback", file=sys.stderr)


ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "factorkde._fastcore",
                sources=["src/factorkde/_fastcore.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError as exc:
    print(f"warning: Cython/numpy unavailable ({exc}); "
          "installing pure-Python fallback", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
