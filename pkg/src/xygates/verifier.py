"""Ground truth for compiled schedules.

Everything here is computed without the closed-form pulse kernel: generators
are exponentiated spectrally, and schedules are compared with targets through
a phase-blind trace fidelity.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from xygates import simcore
from xygates.encoding import CodeSpaceLeakage, Encoding, logical_indices

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class EquivalenceReport:
    fidelity: float
    global_phase: float
    max_entry_deviation: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "pass": self.passed,
            "fidelity": self.fidelity,
            "global_phase": self.global_phase,
            "max_entry_deviation": self.max_entry_deviation,
        }


def oracle_expm(h: np.ndarray, t: float) -> np.ndarray:
    """``exp(i*t*H)`` for Hermitian ``H`` via its eigendecomposition."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if not np.allclose(h, h.conj().T, atol=1e-10, rtol=0):
        raise ValueError("generator is not Hermitian")
    evals, evecs = np.linalg.eigh((h + h.conj().T) / 2)
    return (evecs * np.exp(1j * t * evals)) @ evecs.conj().T


def oracle_schedule_unitary(schedule, num_qubits: int | None = None) -> np.ndarray:
    """Product of exponentiated generators, independent of the pulse kernel."""
    n = schedule.num_qubits if num_qubits is None else num_qubits
    u = np.eye(1 << n, dtype=complex)
    for g in schedule:
        u = oracle_expm(simcore.xy_generator_matrix(n, g.i, g.j), g.phi) @ u
    return u


def equivalent_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = DEFAULT_TOL) -> EquivalenceReport:
    """Compare ``u`` and ``v`` ignoring a global phase.

    ``global_phase`` is the alpha minimising ``||u - exp(i alpha) v||``.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape or u.ndim != 2:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    overlap = np.trace(v.conj().T @ u)
    dim = u.shape[0]
    fidelity = abs(overlap) / dim
    alpha = cmath.phase(overlap) if abs(overlap) > 1e-300 else 0.0
    deviation = float(np.max(np.abs(u - np.exp(1j * alpha) * v))) if dim else 0.0
    return EquivalenceReport(float(fidelity), float(alpha), deviation, bool(fidelity >= 1 - tol))


def restrict_to_logical(
    u: np.ndarray,
    encoding: Encoding,
    blocks: Sequence[Sequence[int]],
    *,
    max_defect: float = 1e-9,
) -> np.ndarray:
    """Matrix elements of ``u`` between encoded basis states of ``blocks``.

    Raises ``CodeSpaceLeakage`` when the restriction is not unitary, i.e.
    ``u`` carries code states out of the code space.
    """
    u = np.asarray(u, dtype=complex)
    n = simcore.num_qubits_of(u.shape[0])
    idx = logical_indices(encoding, blocks, n)
    m = u[np.ix_(idx, idx)]
    defect = float(np.max(np.abs(m.conj().T @ m - np.eye(len(idx))))) if idx else 0.0
    if defect > max_defect:
        raise CodeSpaceLeakage(f"code space not preserved (unitarity defect {defect:.3e})", defect)
    return m


def check_sector_preservation(u: np.ndarray, n: int, tol: float = 1e-12) -> tuple[bool, float]:
    """Whether ``u`` never couples basis states of different Hamming weight."""
    u = np.asarray(u)
    if u.shape != (1 << n, 1 << n):
        raise ValueError(f"expected a {1 << n}-dimensional matrix, got {u.shape}")
    w = simcore.hamming_weights(n)
    cross = w[:, None] != w[None, :]
    worst = float(np.max(np.abs(u[cross]))) if cross.any() else 0.0
    return worst < tol, worst
