from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/mhopf/linalg/_rref_cy.pyx"],
        compiler_directives={"language_level": 3},
    )
except Exception:
    # The compiled kernel is optional; the pure-Python twin is picked up at import.
    ext_modules = []

setup(ext_modules=ext_modules)
