from setuptools import Extension, setup

# The edit-distance kernel is compiled when Cython is available; without it
# the package still installs and falls back to the pure-Python kernel.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("similo._kernels", ["src/similo/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
