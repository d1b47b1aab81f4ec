"""XY pulse instruction set: gates, schedules, the P3 sequence and peephole cleanup."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from xygates import simcore

ZERO_PHASE = 1e-14


def normalize_phase(phi: float) -> float:
    """Map an angle onto (-pi, pi]."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"pulse phase must be finite, got {phi}")
    r = math.remainder(phi, 2 * math.pi)
    # + 0.0 folds -0.0 into 0.0
    return math.pi if r == -math.pi else r + 0.0


@dataclass(frozen=True)
class PulseGate:
    """One XY pulse ``exp(i*phi*A_ij)`` on an unordered qubit pair.

    The pair is stored sorted and the phase is stored in (-pi, pi]; the gate
    is 2*pi periodic in ``phi`` so nothing is lost.
    """

    i: int
    j: int
    phi: float

    def __post_init__(self):
        i, j = int(self.i), int(self.j)
        if i == j:
            raise ValueError(f"pulse needs two distinct qubits, got ({i}, {j})")
        if i < 0 or j < 0:
            raise IndexError(f"negative qubit index in ({i}, {j})")
        if i > j:
            i, j = j, i
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "phi", normalize_phase(self.phi))

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    def inverse(self) -> PulseGate:
        return PulseGate(self.i, self.j, -self.phi)


@dataclass(frozen=True)
class Schedule:
    """Ordered pulses on ``num_qubits`` physical qubits, applied first to last."""

    num_qubits: int
    gates: tuple[PulseGate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        gates = tuple(g if isinstance(g, PulseGate) else PulseGate(*g) for g in self.gates)
        object.__setattr__(self, "gates", gates)
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        for k, g in enumerate(gates):
            if g.j >= self.num_qubits:
                raise IndexError(
                    f"gate {k} on pair {g.pair} exceeds register of {self.num_qubits} qubits"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Schedule) -> Schedule:
        # the smaller register embeds into the larger one as low-index qubits
        if not isinstance(other, Schedule):
            return NotImplemented
        return Schedule(max(self.num_qubits, other.num_qubits), self.gates + other.gates)

    def widen(self, num_qubits: int) -> Schedule:
        if num_qubits < self.num_qubits:
            raise ValueError("cannot shrink a schedule's register")
        return Schedule(num_qubits, self.gates)

    def pairs(self) -> list[tuple[int, int]]:
        return [g.pair for g in self.gates]


def _require_distinct(*qubits: int) -> None:
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"qubits must be pairwise distinct, got {qubits}")


def pulse(i: int, j: int, phi: float, num_qubits: int | None = None) -> Schedule:
    n = max(i, j) + 1 if num_qubits is None else num_qubits
    return Schedule(n, (PulseGate(i, j, phi),))


def p3(a: int, b: int, c: int, phi: float, num_qubits: int | None = None) -> Schedule:
    """Five-pulse diagonal sequence on qubits ``(a, b, c)``.

    Imprints ``exp(+i phi/2)`` on ``|010>`` and ``|101>``, ``exp(-i phi/2)`` on
    ``|100>`` and ``|011>`` (bits read in the order a, b, c) and leaves the
    other four basis states alone.
    """
    _require_distinct(a, b, c)
    n = max(a, b, c) + 1 if num_qubits is None else num_qubits
    quarter, half = math.pi / 4, math.pi / 2
    return Schedule(
        n,
        (
            PulseGate(a, b, quarter),
            PulseGate(b, c, half),
            PulseGate(a, c, phi / 2),
            PulseGate(b, c, -half),
            PulseGate(a, b, -quarter),
        ),
    )


def _check_fits(schedule: Schedule, n: int) -> None:
    if schedule.num_qubits > n:
        raise ValueError(
            f"schedule needs {schedule.num_qubits} qubits, state has {n}"
        )


def simulate(schedule: Schedule, state: np.ndarray) -> np.ndarray:
    """Evolve a statevector (or the columns of a matrix) through the schedule."""
    state = np.asarray(state)
    n = simcore.num_qubits_of(state.shape[0])
    _check_fits(schedule, n)
    out = np.array(state, dtype=complex, order="C", copy=True)
    simcore.apply_pulses_inplace(out.reshape(out.shape[0], -1), n, ((g.i, g.j, g.phi) for g in schedule))
    return out


def schedule_unitary(schedule: Schedule, num_qubits: int | None = None) -> np.ndarray:
    """Full ``2**n x 2**n`` matrix of the schedule."""
    n = schedule.num_qubits if num_qubits is None else num_qubits
    _check_fits(schedule, n)
    if n > simcore.MAX_QUBITS:
        raise ValueError(f"register of {n} qubits exceeds the dense cap of {simcore.MAX_QUBITS}")
    return simulate(schedule, np.eye(1 << n, dtype=complex))


def inverse(schedule: Schedule) -> Schedule:
    return Schedule(schedule.num_qubits, tuple(g.inverse() for g in reversed(schedule.gates)))


def simplify(schedule: Schedule) -> Schedule:
    """Merge runs of adjacent same-pair pulses and drop the ones that vanish.

    Merging happens on a stack, so a cancellation exposes the next pair of
    neighbours and the result is a fixpoint. No reordering across gates on
    other pairs is attempted.
    """
    out: list[PulseGate] = []
    for g in schedule.gates:
        if out and out[-1].pair == g.pair:
            g = PulseGate(g.i, g.j, out.pop().phi + g.phi)
        if abs(g.phi) >= ZERO_PHASE:
            out.append(g)
    return Schedule(schedule.num_qubits, tuple(out))
