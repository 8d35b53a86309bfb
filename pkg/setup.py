from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("weakrel._dbm", ["src/weakrel/_dbm.pyx"])],
        compiler_directives={"language_level": "3"},
    ),
)
