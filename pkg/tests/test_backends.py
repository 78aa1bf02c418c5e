"""The numba and numpy backends must be interchangeable to the bit."""

import numpy as np
import pytest

from airyproc import airy, backend, fredholm


pytestmark = pytest.mark.skipif(not backend.HAS_NUMBA, reason="numba not installed")


@pytest.fixture
def restore_backend():
    before = backend.active_backend()
    yield
    backend.set_backend(before)


def test_ai_values_equivalent_to_ulp(restore_backend):
    # same algorithm either way; only compiler instruction selection may
    # differ, so the two paths must agree to a few ulp of the local envelope
    rng = np.random.default_rng(3)
    xs = np.concatenate([np.linspace(-30, 30, 401), rng.uniform(-48, 70, 200)])
    backend.set_backend("numba")
    a1, p1 = airy.ai_values(xs)
    backend.set_backend("numpy")
    a2, p2 = airy.ai_values(xs)
    w = np.sqrt(np.maximum(1.0, np.abs(xs)))
    env = np.hypot(a2, p2 / w) + 1e-300
    assert np.max(np.abs(a1 - a2) / (np.spacing(env))) <= 8.0
    assert np.max(np.abs(p1 - p2) / (np.spacing(env * w))) <= 8.0


def test_scalar_matches_array_path(restore_backend):
    for name in ("numba", "numpy"):
        backend.set_backend(name)
        for x in (-17.3, -3.1, 0.0, 4.2, 11.0):
            pair = airy.ai_pair(x)
            a, p = airy.ai_values(np.array([x]))
            assert pair.ai == a[0]
            assert pair.ai_prime == p[0]


def test_determinants_identical_across_backends(restore_backend):
    backend.set_backend("numba")
    d1 = fredholm.joint_det(0.0, -1.0, 4.0, n=60)
    backend.set_backend("numpy")
    d2 = fredholm.joint_det(0.0, -1.0, 4.0, n=60)
    assert d1 == d2


def test_set_backend_validation():
    with pytest.raises(ValueError):
        backend.set_backend("fortran")


def test_fallback_when_numba_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['numba'] = None\n"
        "from airyproc import backend, airy\n"
        "assert backend.HAS_NUMBA is False\n"
        "assert backend.active_backend() == 'numpy'\n"
        "print(f'{airy.ai(0.0):.15f}')\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "0.355028053887817"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "airyproc", "joint", "--s1", "0", "--s2", "0", "--t", "8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.splitlines()[0] == "s1,s2,t,method,probability"
