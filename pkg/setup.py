from setuptools import setup

# the compiled row-reduction kernel is optional: without cython (or if the
# compile fails) the package falls back to the pure-python twin at import time
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lieps/_rref_c.pyx"],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
