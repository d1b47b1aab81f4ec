"""Logical encodings into blocks of three physical qubits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence


class CodeSpaceLeakage(ValueError):
    """Raised when weight outside the encoded subspace exceeds tolerance."""

    def __init__(self, message: str, leakage: float):
        super().__init__(message)
        self.leakage = leakage


@dataclass(frozen=True)
class Encoding:
    """Map from logical labels to bit patterns on a block's sites.

    ``logical_states[k]`` is the bit pattern (one bit per block site) of the
    logical level ``k``. A truncated qubit keeps its ancilla at ``|0>``, which
    is part of its pattern whenever the block carries the ancilla site.
    """

    kind: str
    logical_states: tuple[tuple[int, ...], ...]
    ancilla_index: int | None = None
    block_size: int = 3

    @property
    def dim(self) -> int:
        return len(self.logical_states)

    def patterns(self, block: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """Patterns restricted to the sites the block actually has."""
        size = len(block)
        if self.ancilla_index is None and size != self.block_size:
            raise ValueError(f"{self.kind} block needs {self.block_size} sites, got {tuple(block)}")
        if self.ancilla_index is not None and size not in (self.block_size - 1, self.block_size):
            raise ValueError(f"{self.kind} block needs 2 or 3 sites, got {tuple(block)}")
        if len(set(block)) != size:
            raise ValueError(f"block sites must be distinct, got {tuple(block)}")
        return tuple(p[:size] for p in self.logical_states)


TRUNCATED_QUBIT = Encoding("truncated_qubit", ((1, 0, 0), (0, 1, 0)), ancilla_index=2)
QUTRIT = Encoding("qutrit", ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

ENCODINGS = {"truncated": TRUNCATED_QUBIT, "truncated_qubit": TRUNCATED_QUBIT, "qutrit": QUTRIT}


def check_disjoint(*blocks: Sequence[int]) -> None:
    seen: set[int] = set()
    for block in blocks:
        if seen & set(block):
            raise ValueError(f"blocks overlap: {[tuple(b) for b in blocks]}")
        seen |= set(block)


def logical_indices(encoding: Encoding, blocks: Sequence[Sequence[int]], num_qubits: int) -> list[int]:
    """Physical basis index for every joint logical label, in lexicographic order.

    Qubits outside every block are taken to be ``|0>``.
    """
    check_disjoint(*blocks)
    per_block = [encoding.patterns(b) for b in blocks]
    for b in blocks:
        if max(b) >= num_qubits:
            raise IndexError(f"block {tuple(b)} exceeds register of {num_qubits} qubits")
    out = []
    for choice in itertools.product(*per_block):
        index = 0
        for block, bits in zip(blocks, choice):
            for site, bit in zip(block, bits):
                if bit:
                    index |= 1 << (num_qubits - 1 - site)
        out.append(index)
    return out


def logical_labels(encoding: Encoding, num_blocks: int) -> list[str]:
    return ["".join(map(str, c)) for c in itertools.product(range(encoding.dim), repeat=num_blocks)]
