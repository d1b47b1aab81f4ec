"""Dense statevector and unitary machinery for small XY-coupled registers.

Basis convention: qubit 0 is the leftmost ket label and the most significant
bit of the index, so ``|100>`` on three qubits is index 4.

A pulse ``exp(i*phi*A_ij)`` with ``A_ij = (X_i X_j + Y_i Y_j) / 2`` is applied
in closed form: it is the identity where bits ``i`` and ``j`` agree and the
rotation ``cos(phi) I + i sin(phi) SWAP`` on the ``{01, 10}`` pair otherwise.
The inner loop runs in a compiled kernel when the extension is built and
falls back to numpy otherwise; ``BACKEND`` tells which one was picked.
"""

from __future__ import annotations

from math import comb

import numpy as np

try:
    from xygates._kernels import apply_pulse_inplace as _apply_inplace

    BACKEND = "compiled"
except ImportError:  # extension not built
    from xygates._kernels_py import apply_pulse_inplace as _apply_inplace

    BACKEND = "python"

MAX_QUBITS = 16


def num_qubits_of(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension, which must be a power of 2."""
    n = int(dim).bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of 2")
    return n


def _check_pair(n: int, i: int, j: int) -> None:
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"qubit pair ({i}, {j}) out of range for {n} qubits")
    if i == j:
        raise ValueError(f"pulse needs two distinct qubits, got ({i}, {j})")


def basis_state(bits: str | tuple[int, ...] | list[int]) -> np.ndarray:
    """Computational basis state from a bit string such as ``"010"``."""
    bits = [int(b) for b in bits]
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"basis label must be made of 0/1, got {bits}")
    index = 0
    for b in bits:
        index = (index << 1) | b
    state = np.zeros(1 << len(bits), dtype=complex)
    state[index] = 1.0
    return state


def index_of(bits) -> int:
    index = 0
    for b in bits:
        index = (index << 1) | int(b)
    return index


def bits_of(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def apply_xy_pulse(state: np.ndarray, i: int, j: int, phi: float) -> np.ndarray:
    """Return ``exp(i*phi*A_ij) @ state`` without touching the input."""
    state = np.asarray(state)
    n = num_qubits_of(state.shape[0])
    _check_pair(n, i, j)
    out = np.array(state, dtype=complex, order="C", copy=True)
    buf = out.reshape(out.shape[0], -1)
    _apply_inplace(buf, n, i, j, float(phi))
    return out


def apply_pulses_inplace(buf: np.ndarray, n: int, pulses) -> None:
    """Apply ``(i, j, phi)`` triples in order to a C-contiguous (2**n, m) buffer."""
    for i, j, phi in pulses:
        _check_pair(n, i, j)
        _apply_inplace(buf, n, i, j, float(phi))


def xy_generator_matrix(n: int, i: int, j: int) -> np.ndarray:
    """Dense ``A_ij`` on ``n`` qubits, built from Pauli products."""
    _check_pair(n, i, j)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)

    def on(op_i, op_j):
        out = np.ones((1, 1), dtype=complex)
        for q in range(n):
            factor = op_i if q == i else op_j if q == j else np.eye(2)
            out = np.kron(out, factor)
        return out

    return 0.5 * (on(x, x) + on(y, y))


def hamming_weights(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    weights = np.zeros_like(idx)
    for q in range(n):
        weights += (idx >> q) & 1
    return weights


def excitation_number_operator(n: int) -> np.ndarray:
    return np.diag(hamming_weights(n).astype(complex))


def sector_basis(n: int, k: int) -> list[int]:
    """All basis indices of Hamming weight ``k``, ascending."""
    if not 0 <= k <= n:
        raise ValueError(f"excitation count {k} out of range for {n} qubits")
    found = [int(s) for s in np.flatnonzero(hamming_weights(n) == k)]
    assert len(found) == comb(n, k)
    return found


def tensor(state_a: np.ndarray, state_b: np.ndarray) -> np.ndarray:
    """Product state; ``state_a`` occupies the high bits."""
    out = np.kron(np.asarray(state_a, dtype=complex), np.asarray(state_b, dtype=complex))
    num_qubits_of(out.shape[0])
    return out
