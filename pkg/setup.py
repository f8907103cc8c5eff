from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# Python backend when the extension is absent or fails to build.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "dualembed._kernels._speedups",
                ["src/dualembed/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
