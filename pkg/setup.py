"""Build the optional compiled kernel.

The package is pure Python; if Cython and a C compiler are available the hot
kernels are additionally built as twistsel._core._ckernels, which the package
picks up at import time.  A failed extension build falls back to the pure
backend, it never fails the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "twistsel._core._ckernels",
                ["src/twistsel/_core/_ckernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print("twistsel: compiled kernel skipped (%s); using pure-Python backend" % exc)

setup(ext_modules=ext_modules)
