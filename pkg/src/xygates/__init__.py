"""Exact XY-exchange pulse sequences for encoded qubits and qutrits."""

from xygates.simcore import BACKEND, apply_xy_pulse, sector_basis, tensor, xy_generator_matrix
from xygates.pulse import PulseGate, Schedule, inverse, p3, schedule_unitary, simplify, simulate
from xygates.encoding import QUTRIT, TRUNCATED_QUBIT, CodeSpaceLeakage, Encoding
from xygates.verifier import (
    EquivalenceReport,
    check_sector_preservation,
    equivalent_up_to_phase,
    oracle_expm,
    restrict_to_logical,
)

__version__ = "0.1.0"
