import math

import numpy as np
import pytest

from xygates.pulse import PulseGate, Schedule

ACCEPTANCE_LINES: list[str] = []


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def haar_special_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    u = haar_unitary(rng, dim)
    return u / np.linalg.det(u) ** (1 / dim)


def random_schedule(rng, n=None, length=None):
    n = int(rng.integers(2, 6)) if n is None else n
    length = int(rng.integers(0, 15)) if length is None else length
    gates = []
    for _ in range(length):
        i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
        phi = float(rng.choice([math.pi / 4, -math.pi / 4, math.pi / 2, -math.pi / 2, rng.uniform(-4, 4)]))
        gates.append(PulseGate(i, j, phi))
    return Schedule(n, tuple(gates))


@pytest.fixture
def rng():
    return np.random.default_rng(20260114)


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
