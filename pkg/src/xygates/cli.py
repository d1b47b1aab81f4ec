"""Command-line front end.

    xygates compile TARGET [options] -o FILE
    xygates simulate FILE (--state BITS | --amplitudes FILE)
    xygates verify FILE TARGET [options] [--tol TOL]
    xygates layout-check FILE --layout {triangular,linear,linear-nnn,two-plane}

Exit status: 0 success or pass, 1 verification failure or layout violations,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from xygates import compiler, layout, schedule_file, simcore, verifier
from xygates.encoding import ENCODINGS, QUTRIT, TRUNCATED_QUBIT, CodeSpaceLeakage, Encoding
from xygates.pulse import Schedule, p3, schedule_unitary, simulate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class Target:
    """What a compile subcommand builds and what its schedule must implement.

    ``encoding`` of ``None`` means the target is the full physical unitary.
    """

    build: Callable[[], Schedule]
    matrix: np.ndarray
    encoding: Encoding | None
    blocks: tuple[tuple[int, ...], ...]
    num_qubits: int
    tol: float = verifier.DEFAULT_TOL


# -- argument parsing helpers ---------------------------------------------

_COMPLEX_TOKEN = re.compile(r"[,\s;]+")


def parse_complex(token: str) -> complex:
    t = token.strip().replace(" ", "")
    if not t:
        raise InputError("empty matrix entry")
    t = t.replace("I", "i")
    if t.endswith("i"):
        t = t[:-1] + "j"
        # bare "i" / "-i"
        if t in ("j", "+j", "-j"):
            t = t.replace("j", "1j")
    try:
        return complex(t)
    except ValueError:
        raise InputError(f"cannot read complex entry {token!r}") from None


def parse_matrix(text: str) -> np.ndarray:
    """Row-major complex literals such as ``"0.6+0i,0.8i,0.8i,0.6"``."""
    tokens = [t for t in _COMPLEX_TOKEN.split(text.strip()) if t]
    entries = [parse_complex(t) for t in tokens]
    dim = math.isqrt(len(entries))
    if dim * dim != len(entries) or dim == 0:
        raise InputError(f"{len(entries)} entries do not form a square matrix")
    return np.array(entries, dtype=complex).reshape(dim, dim)


def _matrix_arg(args, dim: int | None = None) -> np.ndarray:
    if getattr(args, "matrix_file", None):
        m = parse_matrix(Path(args.matrix_file).read_text())
    elif getattr(args, "matrix", None):
        m = parse_matrix(args.matrix)
    else:
        raise InputError("a matrix is required (--matrix or --matrix-file)")
    if dim is not None and m.shape != (dim, dim):
        raise InputError(f"expected a {dim}x{dim} matrix, got {m.shape[0]}x{m.shape[1]}")
    if not np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=1e-10, rtol=0):
        raise InputError("matrix is not unitary")
    return m


def _angle(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def _pair(text: str) -> tuple[int, int]:
    try:
        p, q = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated levels, got {text!r}") from None
    return (p, q) if p < q else (q, p)


def _blocks(count: int, with_ancilla: bool = True) -> tuple[tuple[int, ...], ...]:
    if with_ancilla:
        return tuple((3 * k, 3 * k + 1, 3 * k + 2) for k in range(count))
    return tuple((2 * k, 2 * k + 1) for k in range(count))


def _register(blocks) -> int:
    return max(max(b) for b in blocks) + 1


# -- targets --------------------------------------------------------------


def _target_su2(args) -> Target:
    if args.identity:
        u = np.eye(2, dtype=complex)
    elif args.euler:
        a, b, c = (_angle(args, v) for v in args.euler)
        u = compiler.x_rotation(a) @ compiler.z_rotation(b) @ compiler.x_rotation(c)
    else:
        u = _matrix_arg(args, 2)
    blocks = _blocks(1)
    return Target(lambda: compiler.compile_su2(u, blocks[0]), u, TRUNCATED_QUBIT, blocks, 3)


def _target_encoded_x(args) -> Target:
    phi = _angle(args, args.phi)
    blocks = _blocks(1)
    return Target(lambda: compiler.encoded_x(phi, blocks[0], 3), compiler.x_rotation(phi), TRUNCATED_QUBIT, blocks, 3)


def _target_encoded_z(args) -> Target:
    phi = _angle(args, args.phi)
    blocks = _blocks(1)
    return Target(lambda: compiler.encoded_z(phi, blocks[0]), compiler.z_rotation(phi / 2), TRUNCATED_QUBIT, blocks, 3)


def _target_p3(args) -> Target:
    phi = _angle(args, args.phi)
    a, b, c = args.qubits
    n = args.num_qubits or max(args.qubits) + 1
    phases = np.ones(1 << n, dtype=complex)
    for idx in range(1 << n):
        bits = simcore.bits_of(idx, n)
        key = bits[a] + bits[b] + bits[c]
        phases[idx] = {"010": cmath.exp(0.5j * phi), "101": cmath.exp(0.5j * phi),
                       "100": cmath.exp(-0.5j * phi), "011": cmath.exp(-0.5j * phi)}.get(key, 1)
    return Target(lambda: p3(a, b, c, phi, n), np.diag(phases), None, (), n)


def _target_sqrt_zz(args) -> Target:
    blocks = _blocks(2, not args.no_ancilla)
    variant = "via_" + args.variant
    n = _register(blocks)
    return Target(lambda: compiler.sqrt_minus_zz(*blocks, variant, n), compiler.SQRT_MINUS_ZZ, TRUNCATED_QUBIT, blocks, n)


def _target_cz(args) -> Target:
    blocks = _blocks(2)
    return Target(lambda: compiler.controlled_phase_flip(*blocks), compiler.CZ, TRUNCATED_QUBIT, blocks, 6)


def _target_cnot(args) -> Target:
    blocks = _blocks(2)
    return Target(lambda: compiler.compile_cnot(*blocks), compiler.CNOT, TRUNCATED_QUBIT, blocks, 6)


def _target_qutrit_z(args) -> Target:
    phi = _angle(args, args.phi)
    blocks = _blocks(1)
    return Target(lambda: compiler.qutrit_z(phi, blocks[0]), np.diag([1, cmath.exp(-1j * phi), 1]), QUTRIT, blocks, 3)


def _target_qutrit_su2(args) -> Target:
    u = _matrix_arg(args, 2)
    blocks = _blocks(1)
    pair = args.pair
    return Target(lambda: compiler.qutrit_su2_on_pair(u, pair, blocks[0]), compiler.embed_pair(u, pair), QUTRIT, blocks, 3)


def _target_qutrit_su3(args) -> Target:
    u = _matrix_arg(args, 3)
    blocks = _blocks(1)
    return Target(lambda: compiler.compile_su3(u, blocks[0]), u, QUTRIT, blocks, 3, tol=1e-9)


def _target_qutrit_entangler(args) -> Target:
    blocks = _blocks(2)
    variant = {"serial": "serial_8", "swap": "swap_conjugated_10"}[args.variant]
    return Target(lambda: compiler.qutrit_entangler(*blocks, variant), compiler.qutrit_entangler_target(), QUTRIT, blocks, 6)


def _target_shift(args) -> Target:
    n = args.num_qubits or max(args.frm, args.to) + 1
    target = verifier.oracle_expm(simcore.xy_generator_matrix(n, args.frm, args.to), math.pi / 2)
    return Target(lambda: compiler.shift_excitation(args.frm, args.to, n), target, None, (), n)


def _target_identity(args) -> Target:
    enc = ENCODINGS[args.encoding]
    blocks = _blocks(args.blocks)
    dim = enc.dim ** args.blocks
    return Target(lambda: Schedule(_register(blocks)), np.eye(dim, dtype=complex), enc, blocks, _register(blocks))


def _target_matrix(args) -> Target:
    enc = ENCODINGS[args.encoding]
    m = _matrix_arg(args)
    count = round(math.log(m.shape[0], enc.dim))
    if enc.dim ** count != m.shape[0]:
        raise InputError(f"a {m.shape[0]}-dimensional matrix does not fit {enc.kind} blocks")
    blocks = _blocks(count)

    def build():
        raise InputError("the matrix target is for verify only; use a named compile target")

    return Target(build, m, enc, blocks, _register(blocks), tol=1e-9)


def _add_matrix_opts(p):
    p.add_argument("--matrix", help='row-major complex entries, e.g. "0.6,0.8i,0.8i,0.6"')
    p.add_argument("--matrix-file", help="file holding the same complex literals")


def add_target_parsers(sub, *, verify_only: bool = False) -> None:
    def target(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--degrees", action="store_true", help="angles are in degrees")
        p.set_defaults(target_fn=fn)
        return p

    p = target("su2", _target_su2, "single truncated-qubit gate")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--euler", nargs=3, type=float, metavar=("A", "B", "C"), help="U = X(A) Z(B) X(C)")
    g.add_argument("--identity", action="store_true")
    _add_matrix_opts(g)

    target("encoded-x", _target_encoded_x, "exp(i phi X) on a truncated qubit").add_argument("--phi", type=float, required=True)
    target("encoded-z", _target_encoded_z, "diag(e^{i phi/2}, e^{-i phi/2}) on a truncated qubit").add_argument(
        "--phi", type=float, required=True
    )

    p = target("p3", _target_p3, "bare five-pulse P3 sequence")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--qubits", type=lambda s: tuple(int(v) for v in s.split(",")), default=(0, 1, 2))
    p.add_argument("--num-qubits", type=int)

    p = target("sqrt-zz", _target_sqrt_zz, "5-pulse entangling core exp(-i pi/4 ZZ)")
    p.add_argument("--variant", choices=["123", "124"], default="123")
    p.add_argument("--no-ancilla", action="store_true", help="pack the two code pairs on 4 qubits")

    target("cz", _target_cz, "controlled phase-flip between two truncated qubits")
    target("cnot", _target_cnot, "CNOT between two truncated qubits")
    target("qutrit-z", _target_qutrit_z, "two-P3 qutrit Z").add_argument("--phi", type=float, required=True)

    p = target("qutrit-su2", _target_qutrit_su2, "2x2 unitary on one level pair of a qutrit")
    p.add_argument("--pair", type=_pair, default=(0, 1))
    _add_matrix_opts(p)

    _add_matrix_opts(target("qutrit-su3", _target_qutrit_su3, "3x3 unitary on a qutrit"))
    target("qutrit-entangler", _target_qutrit_entangler, "sqrt(-ZZ) between two qutrits").add_argument(
        "--variant", choices=["serial", "swap"], default="serial"
    )

    p = target("shift", _target_shift, "move an excitation between two sites")
    p.add_argument("--from", dest="frm", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--num-qubits", type=int)

    if verify_only:
        for name, fn in (("identity", _target_identity), ("matrix", _target_matrix)):
            p = target(name, fn, f"{name} on encoded blocks")
            p.add_argument("--encoding", choices=sorted(ENCODINGS), default="truncated")
            if name == "identity":
                p.add_argument("--blocks", type=int, default=1)
            else:
                _add_matrix_opts(p)


# -- verification ---------------------------------------------------------


def check(schedule: Schedule, tgt: Target, tol: float | None = None) -> dict:
    """Report dictionary for ``schedule`` against ``tgt``; raises CodeSpaceLeakage."""
    tol = tgt.tol if tol is None else tol
    n = max(schedule.num_qubits, tgt.num_qubits)
    u = schedule_unitary(schedule, n)
    if tgt.encoding is None:
        if tgt.matrix.shape != u.shape:
            raise InputError(f"schedule acts on {n} qubits, target has dimension {tgt.matrix.shape[0]}")
        logical = u
    else:
        logical = verifier.restrict_to_logical(u, tgt.encoding, tgt.blocks)
    report = verifier.equivalent_up_to_phase(logical, tgt.matrix, tol)
    out = report.as_dict()
    out["pulses"] = len(schedule)
    return out


# -- commands -------------------------------------------------------------


def cmd_compile(args) -> int:
    tgt = args.target_fn(args)
    sched = tgt.build()
    result = check(sched, tgt)
    schedule_file.write(sched, args.output)
    print(f"wrote {args.output}: {len(sched)} pulses on {sched.num_qubits} qubits, fidelity {result['fidelity']:.15f}")
    return EXIT_OK if result["pass"] else EXIT_FAIL


def _read_state(args, n: int) -> np.ndarray:
    if args.state is not None:
        bits = args.state.strip().strip("|>")
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise InputError(f"basis label {args.state!r} does not match a {n}-qubit schedule")
        return simcore.basis_state(bits)
    text = Path(args.amplitudes).read_text()
    amps = np.array([parse_complex(t) for t in _COMPLEX_TOKEN.split(text.strip()) if t], dtype=complex)
    if amps.shape[0] != 1 << n:
        raise InputError(f"{amps.shape[0]} amplitudes given, a {n}-qubit schedule needs {1 << n}")
    norm = np.linalg.norm(amps)
    if not math.isclose(norm, 1.0, abs_tol=1e-10):
        raise InputError(f"input state has norm {norm}, expected 1")
    return amps


def cmd_simulate(args) -> int:
    sched = schedule_file.read(args.schedule)
    n = sched.num_qubits
    out = simulate(sched, _read_state(args, n))
    for idx in np.flatnonzero(np.abs(out) >= 1e-12):
        amp = out[idx]
        print(f"|{simcore.bits_of(int(idx), n)}>  magnitude {abs(amp):.12f}  phase {cmath.phase(amp):+.12f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    sched = schedule_file.read(args.schedule)
    tgt = args.target_fn(args)
    try:
        result = check(sched, tgt, args.tol)
    except CodeSpaceLeakage as exc:
        result = {"pass": False, "error": str(exc), "leakage": exc.leakage, "pulses": len(sched)}
    print(json.dumps(result, sort_keys=True))
    return EXIT_OK if result["pass"] else EXIT_FAIL


def _layout_for(args, sched: Schedule) -> layout.LayoutGraph:
    if args.layout == "triangular":
        count = args.blocks or max(1, math.ceil(sched.num_qubits / 3))
        return layout.triangular_layout(count, args.kind)
    if args.layout in ("linear", "linear-nnn"):
        return layout.linear_layout(args.sites or max(2, sched.num_qubits), args.layout == "linear-nnn")
    count = args.blocks or max(1, math.ceil(sched.num_qubits / 3))
    return layout.two_plane_layout(count, args.ancilla_mode)


def cmd_layout_check(args) -> int:
    sched = schedule_file.read(args.schedule)
    graph = _layout_for(args, sched)
    violations = layout.validate_schedule(sched, graph)
    for v in violations:
        print(v)
    if graph.mobile_ancilla:
        print(f"ancilla relocations: {layout.ancilla_relocations(sched, graph)}")
    if not violations:
        print(f"ok: all {len(sched)} pulses use couplings of the {args.layout} layout")
    return EXIT_FAIL if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xygates", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a logical gate to a schedule file")
    p.add_argument("-o", "--output", required=True)
    add_target_parsers(p.add_subparsers(dest="target", required=True))
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="run a schedule on an input state")
    p.add_argument("schedule")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--state", help="basis label such as 010")
    g.add_argument("--amplitudes", help="file with 2**n complex amplitudes")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check a schedule against a logical target")
    p.add_argument("schedule")
    p.add_argument("--tol", type=float, help="fidelity tolerance (default 1e-10, 1e-9 for multi-stage targets)")
    add_target_parsers(p.add_subparsers(dest="target", required=True), verify_only=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("layout-check", help="list pulses that need missing couplings")
    p.add_argument("schedule")
    p.add_argument("--layout", choices=["triangular", "linear", "linear-nnn", "two-plane"], required=True)
    p.add_argument("--blocks", type=int, help="block count for triangular / two-plane layouts")
    p.add_argument("--kind", choices=["qutrit", "truncated"], default="qutrit")
    p.add_argument("--sites", type=int, help="site count for linear layouts")
    p.add_argument("--ancilla-mode", choices=["static_row", "mobile"], default="static_row")
    p.set_defaults(func=cmd_layout_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, schedule_file.ScheduleFormatError, ValueError, IndexError, OSError) as exc:
        print(f"xygates: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
