"""Build script.

The package is pure Python except for an optional compiled formula kernel
(mucut._kernel_c).  If Cython is unavailable or the extension fails to
build, the install proceeds anyway and the package falls back to the
pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("mucut._kernel_c", ["src/mucut/_kernel_c.pyx"])],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
