"""Build script. The Cython graph kernel is optional: if Cython or a C
compiler is missing, the package installs with the pure-Python kernel only.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/extragram/kernel/_graph_c.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"extragram: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
