import os

from setuptools import Extension, setup

# The compiled counting kernel is optional: quivercells.counting falls back to
# the pure-Python twin when the extension is absent.  Set QUIVERCELLS_PURE=1
# to skip compilation entirely.
ext_modules = []
if os.environ.get("QUIVERCELLS_PURE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("quivercells._fastcount", ["src/quivercells/_fastcount.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
