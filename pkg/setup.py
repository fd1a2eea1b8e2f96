from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python kernels take over at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "capitulation._ckernels",
                ["src/capitulation/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
