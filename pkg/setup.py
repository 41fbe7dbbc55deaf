"""Build script for the optional compiled kernel extension.

The extension is marked optional: if no C compiler (or Cython) is available
the install still succeeds and seplat falls back to the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "seplat._kernels._speedups",
                ["src/seplat/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
