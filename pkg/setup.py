"""Build the optional Cython kernels; the package works without them."""
import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing etc.
            print(f"warning: compiled kernels not built ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using pure-Python fallback")


ext_modules = []
if os.environ.get("SUBMOD_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("submod.kernels._ckernels", ["src/submod/kernels/_ckernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False, "cdivision": True},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
