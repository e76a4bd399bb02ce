"""Build script: compiles the optional join-kernel extension.

The package is fully functional without the extension; kernel selection at
import time falls back to the pure-Python executor if the build is skipped
or fails (e.g. no C toolchain).
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext = Extension(
        "rulebench.datalog._kernel",
        ["src/rulebench/datalog/_kernel.pyx"],
    )
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=ext_modules)
