from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "zddmap._kernel",
                ["src/zddmap/_kernel.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++17"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
