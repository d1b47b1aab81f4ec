"""Compile logical gates on encoded qubits and qutrits into XY pulse schedules.

Blocks are tuples of physical sites. A truncated qubit block is
``(q0, q1, ancilla)`` with ``|0_L> = |10>`` and ``|1_L> = |01>`` on the first two
sites; the ancilla may be omitted for gates that never touch it. A qutrit
block is ``(q0, q1, q2)`` with the single-excitation states as its levels.

Matrix conventions: ``X(a) = exp(i a X)`` and ``Z(b) = exp(i b Z)`` on a level
pair, and a product ``A @ B`` runs ``B`` first, so schedules list factors
right to left.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from xygates import simcore
from xygates.encoding import (
    QUTRIT,
    TRUNCATED_QUBIT,
    CodeSpaceLeakage,
    Encoding,
    check_disjoint,
    logical_indices,
    logical_labels,
)
from xygates.pulse import PulseGate, Schedule, p3, pulse, simplify

BLOCK_A = (0, 1, 2)
BLOCK_B = (3, 4, 5)

_EPS = 1e-12

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SQRT_MINUS_ZZ = np.diag(np.exp(1j * np.pi / 4 * np.array([-1, 1, 1, -1])))


def x_rotation(a: float) -> np.ndarray:
    return np.array([[math.cos(a), 1j * math.sin(a)], [1j * math.sin(a), math.cos(a)]])


def z_rotation(b: float) -> np.ndarray:
    return np.diag([cmath.exp(1j * b), cmath.exp(-1j * b)])


def qutrit_entangler_target() -> np.ndarray:
    """sqrt(-ZZ) on levels {0, 1} x {0, 1}, identity wherever a |2_L> appears."""
    phases = np.ones(9, dtype=complex)
    for a in range(2):
        for b in range(2):
            phases[3 * a + b] = SQRT_MINUS_ZZ[2 * a + b, 2 * a + b]
    return np.diag(phases)


def embed_pair(u: np.ndarray, pair: tuple[int, int]) -> np.ndarray:
    """3x3 matrix acting as ``u`` on qutrit levels ``pair`` and fixing the third."""
    p, q = pair
    out = np.eye(3, dtype=complex)
    out[np.ix_([p, q], [p, q])] = u
    return out


def _check_unitary(u: np.ndarray, dim: int, tol: float = 1e-10) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {u.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(dim), atol=tol, rtol=0):
        raise ValueError("target matrix is not unitary")
    return u


def _register(blocks: Sequence[Sequence[int]], num_qubits: int | None) -> int:
    need = max(max(b) for b in blocks) + 1
    if num_qubits is None:
        return need
    if num_qubits < need:
        raise ValueError(f"register of {num_qubits} qubits cannot hold blocks {blocks}")
    return num_qubits


def _code_pair(block: Sequence[int]) -> tuple[int, int]:
    if len(block) not in (2, 3) or len(set(block)) != len(block):
        raise ValueError(f"invalid block placement {tuple(block)}")
    return block[0], block[1]


def _ancilla(block: Sequence[int]) -> int:
    if len(block) != 3:
        raise ValueError(f"block {tuple(block)} has no ancilla site for a Z gate")
    return block[2]


# -- Euler angles ---------------------------------------------------------


def euler_xzx(u: np.ndarray) -> tuple[float, float, float, float]:
    """Split a 2x2 unitary as ``exp(i g) X(a) Z(b) X(c)``, returned as ``(a, b, c, g)``.

    Pure Z rotations come back with ``a = c = 0`` and pure X rotations with
    ``b = c = 0``; ``b`` always lies in (-pi, pi].
    """
    u = _check_unitary(u, 2)
    g = cmath.phase(np.linalg.det(u)) / 2
    w_mat = u * cmath.exp(-1j * g)
    # w_mat = w I + i (x X + y Y + z Z) with real coefficients
    w, z = w_mat[0, 0].real, w_mat[0, 0].imag
    y, x = w_mat[0, 1].real, w_mat[0, 1].imag
    if math.hypot(x, y) < _EPS:
        return 0.0, math.atan2(z, w), 0.0, g
    if math.hypot(y, z) < _EPS:
        return math.atan2(x, w), 0.0, 0.0, g
    # w + i x = cos(b) e^{i(a+c)},  z + i y = sin(b) e^{i(a-c)}
    total = complex(w, x)
    diff = complex(z, y)
    b = math.atan2(abs(diff), abs(total))
    s = cmath.phase(total) if abs(total) > _EPS else 0.0
    d = cmath.phase(diff)
    return (s + d) / 2, b, (s - d) / 2, g


# -- truncated qubit ------------------------------------------------------


def encoded_x(phi: float, block: Sequence[int] = BLOCK_A, num_qubits: int | None = None) -> Schedule:
    """``exp(i phi X_L)``: one pulse on the block's code pair."""
    q0, q1 = _code_pair(block)
    n = _register([block], num_qubits)
    return simplify(pulse(q0, q1, phi, n))


def encoded_z(phi: float, block: Sequence[int] = BLOCK_A, num_qubits: int | None = None) -> Schedule:
    """``diag(e^{i phi/2}, e^{-i phi/2})`` on the truncated qubit, borrowing its ancilla."""
    q0, q1 = _code_pair(block)
    n = _register([block], num_qubits)
    return p3(q0, q1, _ancilla(block), -phi, n)


def compile_su2(u: np.ndarray, block: Sequence[int] = BLOCK_A, num_qubits: int | None = None) -> Schedule:
    """Any single-qubit gate (up to global phase) on a truncated qubit, at most 7 pulses."""
    a, b, c, _ = euler_xzx(u)
    n = _register([block], num_qubits)
    # encoded_z(2b) realises Z(b)
    sched = encoded_x(c, block, n) + (encoded_z(2 * b, block, n) if b else Schedule(n)) + encoded_x(a, block, n)
    return simplify(sched)


def sqrt_minus_zz(
    block_a: Sequence[int] = BLOCK_A,
    block_b: Sequence[int] = BLOCK_B,
    variant: str = "via_123",
    num_qubits: int | None = None,
) -> Schedule:
    """Entangling core ``exp(-i pi/4 Z x Z)`` between two truncated qubits, 5 pulses."""
    a0, a1 = _code_pair(block_a)
    b0, b1 = _code_pair(block_b)
    check_disjoint(block_a, block_b)
    n = _register([block_a, block_b], num_qubits)
    if variant in ("via_123", "123"):
        return p3(a0, a1, b0, -math.pi / 2, n)
    if variant in ("via_124", "124"):
        return p3(a0, a1, b1, math.pi / 2, n)
    raise ValueError(f"unknown sqrt(-ZZ) variant {variant!r}")


def controlled_phase_flip(
    block_a: Sequence[int] = BLOCK_A,
    block_b: Sequence[int] = BLOCK_B,
    num_qubits: int | None = None,
) -> Schedule:
    """Logical ``diag(1, 1, 1, -1)`` up to global phase.

    ``C_z = [Z(pi/4) x Z(pi/4)] sqrt(-ZZ)``. Every factor is diagonal, so the
    block-A correction goes first where its closing pulse cancels the opening
    pulse of the entangler.
    """
    n = _register([block_a, block_b], num_qubits)
    core = sqrt_minus_zz(block_a, block_b, "via_123", n)
    return simplify(encoded_z(math.pi / 2, block_a, n) + core + encoded_z(math.pi / 2, block_b, n))


def compile_cnot(
    block_a: Sequence[int] = BLOCK_A,
    block_b: Sequence[int] = BLOCK_B,
    num_qubits: int | None = None,
) -> Schedule:
    """Logical CNOT, control ``block_a``: Hadamards on the target around ``C_z``."""
    n = _register([block_a, block_b], num_qubits)
    h = compile_su2(HADAMARD, block_b, n)
    return simplify(h + controlled_phase_flip(block_a, block_b, n) + h)


# -- qutrit ---------------------------------------------------------------

_PAIRS = {(0, 1): 2, (1, 2): 0, (0, 2): 1}


def _level_sites(block: Sequence[int], pair: tuple[int, int]) -> tuple[int, int, int]:
    if len(block) != 3 or len(set(block)) != 3:
        raise ValueError(f"qutrit block needs three distinct sites, got {tuple(block)}")
    pair = tuple(pair)
    if pair not in _PAIRS:
        raise ValueError(f"level pair must be one of {sorted(_PAIRS)}, got {pair}")
    p, q = pair
    return block[p], block[q], block[_PAIRS[pair]]


def _two_p3_phase(sp: int, sq: int, sr: int, theta1: float, theta2: float, n: int) -> Schedule:
    # first P3 puts (-t1/2, +t1/2, 0) on excitations at (sp, sq, sr),
    # the second puts (0, -t2/2, +t2/2)
    return p3(sp, sq, sr, theta1, n) + p3(sq, sr, sp, theta2, n)


def qutrit_z(phi: float, block: Sequence[int] = BLOCK_A, num_qubits: int | None = None) -> Schedule:
    """Relative phase ``e^{-i phi}`` of ``|1_L>`` against ``|0_L>`` and ``|2_L>``.

    Net action ``(e^{i phi/3}, e^{-2i phi/3}, e^{i phi/3})`` on
    ``(|100>, |010>, |001>)``; always 10 pulses.
    """
    sp, sq, sr = _level_sites(block, (0, 1))
    n = _register([block], num_qubits)
    return _two_p3_phase(sp, sq, sr, -2 * phi / 3, 2 * phi / 3, n)


def qutrit_phase(
    alpha_p: float,
    alpha_q: float,
    pair: tuple[int, int] = (0, 1),
    block: Sequence[int] = BLOCK_A,
    num_qubits: int | None = None,
) -> Schedule:
    """``diag(e^{i alpha_p}, e^{i alpha_q})`` on a level pair, third level fixed, up to global phase.

    Same two-P3 wiring as ``qutrit_z``. The global phase ``g`` obeys
    ``3 g = alpha_p + alpha_q (mod 2 pi)``; of its three branches the one
    leaving the most central pulses at zero is used, so SU(2) phases cost
    a single P3.
    """
    sp, sq, sr = _level_sites(block, pair)
    n = _register([block], num_qubits)
    best = None
    for k in range(3):
        g = (alpha_p + alpha_q + 2 * math.pi * k) / 3
        sched = simplify(_two_p3_phase(sp, sq, sr, -2 * (alpha_p - g), -2 * g, n))
        if best is None or len(sched) < len(best):
            best = sched
    return best


def qutrit_su2_on_pair(
    u: np.ndarray,
    pair: tuple[int, int] = (0, 1),
    block: Sequence[int] = BLOCK_A,
    num_qubits: int | None = None,
) -> Schedule:
    """Exact ``u`` on levels ``pair`` with the third level untouched, at most 12 pulses.

    ``u = X(a) diag(e^{i(g+b)}, e^{i(g-b)}) X(c)``; the X factors are single
    pulses on the two sites carrying the levels, the diagonal is a
    ``qutrit_phase``.
    """
    a, b, c, g = euler_xzx(u)
    sp, sq, _ = _level_sites(block, pair)
    n = _register([block], num_qubits)
    middle = qutrit_phase(g + b, g - b, pair, block, n)
    return simplify(pulse(sp, sq, c, n) + middle + pulse(sp, sq, a, n))


def _column_rotation(v0: complex, v1: complex) -> np.ndarray:
    """2x2 unitary ``r`` with ``(v0, v1) @ r = (0, *)``."""
    norm = math.hypot(abs(v0), abs(v1))
    if norm < _EPS:
        return np.eye(2, dtype=complex)
    return np.array([[v1, np.conj(v0)], [-v0, np.conj(v1)]]) / norm


def givens_qutrit(u: np.ndarray) -> list[tuple[tuple[int, int], np.ndarray]]:
    """Two-level factors ``[(pair, m), ...]`` in application order, product = ``u`` up to phase.

    Column rotations on levels (0, 2) then (1, 2) clear row 2 of ``u``; what
    is left is a 2x2 block on levels (0, 1).
    """
    u = _check_unitary(u, 3)
    work = u.copy()
    rotations = []
    for pair in ((0, 2), (1, 2)):
        r = _column_rotation(work[2, pair[0]], work[2, pair[1]])
        work = work @ embed_pair(r, pair)
        rotations.append((pair, r))
    # row 2 is now (0, 0, e^{it}); fold e^{it} into the global phase
    t = cmath.phase(work[2, 2])
    rest = work[:2, :2] * cmath.exp(-1j * t)
    # u ~ embed(rest) @ R12^dag @ R02^dag, so R02^dag acts first
    return [(pair, r.conj().T) for pair, r in rotations] + [((0, 1), rest)]


def compile_su3(u: np.ndarray, block: Sequence[int] = BLOCK_A, num_qubits: int | None = None) -> Schedule:
    """Any qutrit gate up to global phase, as at most three two-level factors."""
    n = _register([block], num_qubits)
    sched = Schedule(n)
    for pair, m in givens_qutrit(u):
        if np.allclose(m, m[0, 0] * np.eye(2), atol=_EPS) and abs(m[0, 0] - 1) < _EPS:
            continue
        sched = sched + qutrit_su2_on_pair(m, pair, block, n)
    return simplify(sched)


def qutrit_entangler(
    block_a: Sequence[int] = BLOCK_A,
    block_b: Sequence[int] = BLOCK_B,
    variant: str = "serial_8",
    num_qubits: int | None = None,
) -> Schedule:
    """sqrt(-ZZ) between levels {0, 1} of two qutrits, identity on the rest.

    ``serial_8`` runs P3(-pi/4) on (a0, a1, b0) then P3(+pi/4) on (a0, a1, b1);
    the touching (a0, a1) pulses cancel. ``swap_conjugated_10`` keeps both P3s
    on (a0, a1, b0) and swaps b0 <-> b1 in between; the swap commutes with the
    (a0, a1) pulses it is placed next to, so it is moved ahead of the first
    P3's closing pulse and the same cancellation applies.
    """
    a0, a1, _ = _level_sites(block_a, (0, 1))
    b0, b1, _ = _level_sites(block_b, (0, 1))
    check_disjoint(block_a, block_b)
    n = _register([block_a, block_b], num_qubits)
    first = p3(a0, a1, b0, -math.pi / 4, n)
    if variant in ("serial_8", "serial"):
        return simplify(first + p3(a0, a1, b1, math.pi / 4, n))
    if variant in ("swap_conjugated_10", "swap"):
        swap = PulseGate(b0, b1, math.pi / 2)
        second = p3(a0, a1, b0, math.pi / 4, n)
        gates = first.gates[:-1] + (swap, first.gates[-1]) + second.gates + (swap.inverse(),)
        return simplify(Schedule(n, gates))
    raise ValueError(f"unknown qutrit entangler variant {variant!r}")


# -- preparation and readout ----------------------------------------------


def shift_excitation(frm: int, to: int, num_qubits: int | None = None) -> Schedule:
    """Move a ``|1>`` from ``frm`` to ``to``; the moved excitation picks up a phase i."""
    if frm == to:
        raise ValueError("shift needs two distinct sites")
    if frm < 0 or to < 0:
        raise IndexError(f"negative site index in ({frm}, {to})")
    return pulse(frm, to, math.pi / 2, num_qubits)


def prepare_logical_zero(num_blocks: int, encoding: Encoding = QUTRIT) -> np.ndarray:
    """``|0_L>`` on every block; both encodings give ``|100>`` per block."""
    if num_blocks < 1:
        raise ValueError("need at least one block")
    block = simcore.basis_state(encoding.logical_states[0])
    state = block
    for _ in range(num_blocks - 1):
        state = simcore.tensor(state, block)
    return state


def measure_logical(
    state: np.ndarray,
    blocks: Sequence[int] | Sequence[Sequence[int]],
    encoding: Encoding = QUTRIT,
    tol: float = 1e-10,
) -> dict[str, float]:
    """Born probabilities of logical outcomes on one block or jointly on several.

    Only the block's own sites are read; other qubits are traced out.
    """
    state = np.asarray(state, dtype=complex)
    n = simcore.num_qubits_of(state.shape[0])
    if isinstance(blocks[0], (int, np.integer)):
        blocks = [blocks]
    check_disjoint(*blocks)
    sites = [s for b in blocks for s in b]
    if max(sites) >= n:
        raise IndexError(f"blocks {blocks} exceed register of {n} qubits")
    probs_all = np.abs(state) ** 2
    tensor = probs_all.reshape((2,) * n)
    others = tuple(q for q in range(n) if q not in sites)
    marginal = tensor.sum(axis=others) if others else tensor
    # put the remaining axes in block-site order
    kept = sorted(sites)
    marginal = np.transpose(marginal, [kept.index(s) for s in sites])
    labels = logical_labels(encoding, len(blocks))
    local_blocks = []
    pos = 0
    for b in blocks:
        local_blocks.append(tuple(range(pos, pos + len(b))))
        pos += len(b)
    flat = marginal.reshape(-1)
    idx = logical_indices(encoding, local_blocks, len(sites))
    result = {label: float(flat[i]) for label, i in zip(labels, idx)}
    leakage = float(abs(flat.sum() - sum(result.values())))
    if leakage > tol:
        raise CodeSpaceLeakage(f"state has weight {leakage:.3e} outside the code space", leakage)
    return result


def logical_state(amplitudes: Sequence[complex], blocks: Sequence[Sequence[int]], encoding: Encoding, num_qubits: int) -> np.ndarray:
    """Physical statevector for logical amplitudes given in label order."""
    idx = logical_indices(encoding, blocks, num_qubits)
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape != (len(idx),):
        raise ValueError(f"expected {len(idx)} logical amplitudes, got {amplitudes.shape}")
    state = np.zeros(1 << num_qubits, dtype=complex)
    state[idx] = amplitudes
    return state


__all__ = [
    "QUTRIT",
    "TRUNCATED_QUBIT",
    "CodeSpaceLeakage",
    "compile_cnot",
    "compile_su2",
    "compile_su3",
    "controlled_phase_flip",
    "encoded_x",
    "encoded_z",
    "euler_xzx",
    "givens_qutrit",
    "measure_logical",
    "prepare_logical_zero",
    "qutrit_entangler",
    "qutrit_phase",
    "qutrit_su2_on_pair",
    "qutrit_z",
    "shift_excitation",
    "sqrt_minus_zz",
]
