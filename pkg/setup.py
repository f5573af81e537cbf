"""Build the optional compiled elimination kernel.

The package works without it: ``hlts.exact.elim`` falls back to the
pure-Python implementation when ``_elim_c`` cannot be imported.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HLTS_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "hlts.exact._elim_c",
                    ["src/hlts/exact/_elim_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
