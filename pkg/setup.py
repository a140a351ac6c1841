from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "constancy._kernels._core",
        ["src/constancy/_kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
]

# Without Cython the package installs pure-Python; the numpy fallback
# kernels take over at import time.
setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"})
    if cythonize is not None
    else [],
)
