"""Builds the optional compiled search kernel.

Without Cython or a C compiler the package still installs and falls back to
the pure-Python kernel in ``antimagic._search_py``.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "antimagic._search_kernel",
                ["src/antimagic/_search_kernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
