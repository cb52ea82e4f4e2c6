"""Build script for the optional compiled elimination kernel.

The package works without it: ``conifold.exact`` falls back to the pure
Python implementation in ``conifold._pure`` when the extension is missing.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CONIFOLD_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "conifold._kernels",
                    ["src/conifold/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
