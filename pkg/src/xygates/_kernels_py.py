"""Pure numpy fallback for the XY-pulse kernel."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=512)
def _pair_indices(n: int, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(1 << n)
    mi = 1 << (n - 1 - i)
    mj = 1 << (n - 1 - j)
    src = idx[((idx & mi) == 0) & ((idx & mj) != 0)]
    src.setflags(write=False)
    dst = src ^ (mi | mj)
    dst.setflags(write=False)
    return src, dst


def apply_pulse_inplace(buf: np.ndarray, n: int, i: int, j: int, phi: float) -> None:
    """Apply exp(i*phi*A_ij) to every column of ``buf`` (shape (2**n, m)) in place."""
    src, dst = _pair_indices(n, i, j)
    a = buf[src]
    b = buf[dst]
    c = np.cos(phi)
    s = 1j * np.sin(phi)
    buf[src] = c * a + s * b
    buf[dst] = c * b + s * a
