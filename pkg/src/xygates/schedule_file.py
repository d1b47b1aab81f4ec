"""Versioned JSON text format for schedules.

Field order is fixed and phases are written with 17 significant digits, so
``dumps(loads(text)) == text`` for anything ``dumps`` produced.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from xygates.pulse import PulseGate, Schedule

FORMAT_VERSION = 1


class ScheduleFormatError(ValueError):
    pass


def _number(x: float) -> str:
    return format(x, ".17g")


def dumps(schedule: Schedule) -> str:
    lines = [
        "{",
        f'  "version": {FORMAT_VERSION},',
        f'  "num_qubits": {schedule.num_qubits},',
    ]
    if not schedule.gates:
        lines.append('  "gates": []')
    else:
        lines.append('  "gates": [')
        body = [
            f'    {{"pair": [{g.i}, {g.j}], "phi": {_number(g.phi)}}}' for g in schedule.gates
        ]
        lines.append(",\n".join(body))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Schedule:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScheduleFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ScheduleFormatError("schedule file must hold a JSON object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise ScheduleFormatError(f"unsupported schedule version {version!r}")
    try:
        n = data["num_qubits"]
        raw = data["gates"]
    except KeyError as exc:
        raise ScheduleFormatError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ScheduleFormatError(f"num_qubits must be a non-negative integer, got {n!r}")
    if not isinstance(raw, list):
        raise ScheduleFormatError("gates must be a list")
    gates = []
    for k, entry in enumerate(raw):
        try:
            i, j = entry["pair"]
            phi = float(entry["phi"])
            if not (isinstance(i, int) and isinstance(j, int)) or not math.isfinite(phi):
                raise TypeError
            gates.append(PulseGate(i, j, phi))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ScheduleFormatError(f"gate {k} is malformed: {entry!r}") from exc
    try:
        return Schedule(n, tuple(gates))
    except (ValueError, IndexError) as exc:
        raise ScheduleFormatError(str(exc)) from exc


def write(schedule: Schedule, path: str | Path) -> None:
    Path(path).write_text(dumps(schedule))


def read(path: str | Path) -> Schedule:
    return loads(Path(path).read_text())
