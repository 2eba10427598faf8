import os
import subprocess
import sys

import flexigraph
from flexigraph import _backend, _pykernels


def test_backend_name():
    assert flexigraph.backend in ("cython", "python")


def test_pure_python_forced_by_env():
    env = dict(os.environ, FLEXIGRAPH_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import flexigraph; print(flexigraph.backend)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_use_switches_and_restores():
    before = _backend.name
    _backend.use("python")
    try:
        assert _backend.kernels is _pykernels
    finally:
        _backend.use(before)
    assert _backend.name == before
