import math

import numpy as np
import pytest

from xygates import _kernels_py, simcore
from xygates.verifier import oracle_expm

try:
    from xygates import _kernels
except ImportError:
    _kernels = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels is not None:
    BACKENDS.append(pytest.param(_kernels, id="compiled"))


@pytest.mark.parametrize("kernel", BACKENDS)
@pytest.mark.parametrize("n,i,j", [(2, 0, 1), (3, 2, 0), (5, 1, 4), (6, 5, 3)])
def test_kernel_matches_oracle(kernel, n, i, j):
    phi = 0.731
    buf = np.eye(1 << n, dtype=complex)
    kernel.apply_pulse_inplace(buf, n, i, j, phi)
    expected = oracle_expm(simcore.xy_generator_matrix(n, i, j), phi)
    assert np.max(np.abs(buf - expected)) < 1e-12


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
def test_backends_agree_on_random_states(rng):
    n = 7
    for _ in range(20):
        i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
        phi = rng.uniform(-math.pi, math.pi)
        psi = rng.normal(size=(1 << n, 3)) + 1j * rng.normal(size=(1 << n, 3))
        a, b = psi.copy(), psi.copy()
        _kernels_py.apply_pulse_inplace(a, n, i, j, phi)
        _kernels.apply_pulse_inplace(b, n, i, j, phi)
        assert np.max(np.abs(a - b)) < 1e-14


def test_backend_name():
    assert simcore.BACKEND in ("compiled", "python")


def test_fallback_selected_without_extension():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['xygates._kernels'] = None\n"
        "from xygates import simcore; print(simcore.BACKEND)"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
@pytest.mark.parametrize("i,j", [(0, 1), (0, 11), (5, 6), (3, 9), (10, 11)])
def test_compiled_matches_fallback_many_columns(i, j, rng):
    n = 12
    buf = rng.normal(size=(1 << n, 3)) + 1j * rng.normal(size=(1 << n, 3))
    a, b = buf.copy(), buf.copy()
    _kernels.apply_pulse_inplace(a, n, i, j, 0.77)
    _kernels_py.apply_pulse_inplace(b, n, i, j, 0.77)
    assert np.max(np.abs(a - b)) < 1e-13
