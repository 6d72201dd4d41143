"""Build hook: compiles the optional bit-twiddling kernel extension.

The package is pure Python apart from troplin._core, a small Cython module
mirrored 1:1 by troplin._core_py.  If Cython (or a C compiler) is missing the
build silently falls back to the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    extensions = []
else:
    extensions = cythonize(
        [Extension("troplin._core", ["src/troplin/_core.pyx"], optional=True)],
        language_level="3",
    )

setup(ext_modules=extensions)
