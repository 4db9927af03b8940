from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "negsssp._kernels",
                sources=["src/negsssp/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )
except ImportError:
    # Pure-Python fallback kernels are selected at import time, so the
    # package works without a compiler toolchain.
    ext_modules = []

setup(ext_modules=ext_modules)
