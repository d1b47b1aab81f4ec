"""Time the compiled pulse kernel against the numpy fallback.

    python benchmarks/bench_kernels.py [--qubits 4 8 12 16] [--pulses 200] [--columns 1]

Both backends run the same random pulse list on the same buffer; the script
checks that they agree before reporting timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from xygates import _kernels_py

try:
    from xygates import _kernels
except ImportError:
    _kernels = None


def random_pulses(rng, n, count):
    out = []
    for _ in range(count):
        i, j = sorted(int(v) for v in rng.choice(n, size=2, replace=False))
        out.append((i, j, float(rng.uniform(-np.pi, np.pi))))
    return out


def run(kernel, buf, n, pulses, repeats):
    best = float("inf")
    for _ in range(repeats):
        work = buf.copy()
        t0 = time.perf_counter()
        for i, j, phi in pulses:
            kernel.apply_pulse_inplace(work, n, i, j, phi)
        best = min(best, time.perf_counter() - t0)
    return best, work


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--qubits", type=int, nargs="+", default=[4, 8, 12, 16])
    ap.add_argument("--pulses", type=int, default=200)
    ap.add_argument("--columns", type=int, default=1, help="state columns evolved together")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernel not built; only the fallback is available")
    rng = np.random.default_rng(args.seed)

    print(f"{'n':>3} {'python us/pulse':>16} {'compiled us/pulse':>18} {'speedup':>8}")
    for n in args.qubits:
        buf = rng.normal(size=(1 << n, args.columns)) + 1j * rng.normal(size=(1 << n, args.columns))
        buf = np.ascontiguousarray(buf / np.linalg.norm(buf, axis=0))
        pulses = random_pulses(rng, n, args.pulses)
        t_py, out_py = run(_kernels_py, buf, n, pulses, args.repeats)
        per_py = 1e6 * t_py / len(pulses)
        if _kernels is None:
            print(f"{n:>3} {per_py:>16.2f} {'-':>18} {'-':>8}")
            continue
        t_c, out_c = run(_kernels, buf, n, pulses, args.repeats)
        diff = np.max(np.abs(out_py - out_c))
        if diff > 1e-10:
            raise SystemExit(f"backends disagree at n={n}: {diff:.2e}")
        print(f"{n:>3} {per_py:>16.2f} {1e6 * t_c / len(pulses):>18.2f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
