import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FLEXIGRAPH_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("flexigraph._ckernels", ["src/flexigraph/_ckernels.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
