"""Build script for the optional compiled monitor engine.

The extension is marked optional: if Cython or a C compiler is missing the
package still installs and falls back to the pure-Python actor runtime.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - depends on build env
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ltlsmc.monitor._engine",
                ["src/ltlsmc/monitor/_engine.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )

setup(ext_modules=ext_modules)
