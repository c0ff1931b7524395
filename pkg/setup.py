from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "leo_cache_sim._kernels._ncx2",
                ["src/leo_cache_sim/_kernels/_ncx2.pyx"],
                # keep IEEE operation order identical to the pure-Python
                # twin so backend choice never changes results
                extra_compile_args=["-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
)
