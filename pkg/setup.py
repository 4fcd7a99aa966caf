"""Build script: compiles the scan kernel when Cython and a C toolchain are
available, and falls back to a pure-python build otherwise (the package
selects the python kernel at import time if the extension is missing)."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/semicocycle/_scan.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - toolchain-dependent
    print(f"semicocycle: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
