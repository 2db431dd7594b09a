"""Build the optional compiled kernels.  Without Cython or a compiler the
package installs pure-Python and selects the fallback at import."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CONGK_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("congk._kernels_c", ["src/congk/_kernels_c.pyx"], extra_compile_args=["-O2"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
