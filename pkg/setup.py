"""Build script: compiles the optional scan-kernel extension.

The extension is a performance accelerator only.  If Cython and a C
compiler are available it is built from the .pyx source; if only a C
compiler is available the committed, pre-generated C file is used; if
neither works the package installs anyway and falls back to the pure
Python kernel at import time.
"""

import os
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


PYX = os.path.join("src", "multimagic", "_scan_c.pyx")
C = os.path.join("src", "multimagic", "_scan_c.c")


def extensions():
    if os.environ.get("MULTIMAGIC_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        if not os.path.exists(C):
            return []
        return [Extension("multimagic._scan_c", [C])]
    return cythonize(
        [Extension("multimagic._scan_c", [PYX])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


class optional_build_ext(build_ext):
    """Degrade to the pure Python kernel when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"warning: extension build skipped ({exc}); "
                  f"using pure Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  f"using pure Python kernel")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
