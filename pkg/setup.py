from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are optional: the package falls back to the pure-Python
# implementations in ces_demand._kernels_py when the extension is missing.
ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "ces_demand._kernels_cy",
                ["src/ces_demand/_kernels_cy.pyx"],
                # -ffp-contract=off keeps the compiled kernels bit-identical
                # to the pure-Python ones (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
