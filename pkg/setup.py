"""Build script. The Cython extension is optional: if compilation fails the
package still installs and falls back to the pure-Python kernels."""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "flaglap.kernels._fast",
                ["src/flaglap/kernels/_fast.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover
    print(f"flaglap: skipping Cython extension build ({exc})")

setup(ext_modules=ext_modules)
