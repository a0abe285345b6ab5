"""Optional build of the compiled field-summation kernel.

The package is pure Python plus one optional Cython extension
(rindler_probe._field_kernel).  If Cython or a C compiler is missing the
build silently degrades to the NumPy fallback kernel; nothing else changes.

    python setup.py build_ext --inplace
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "rindler_probe._field_kernel",
                ["src/rindler_probe/_field_kernel.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
