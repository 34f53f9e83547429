import os

from setuptools import Extension, setup

# The compiled kernels are optional; the package falls back to numpy.
ext_modules = []
if os.environ.get("CGHZ_NO_EXTENSION", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "cghz._ckernels",
                    ["src/cghz/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
