"""Time the hot kernels under the numba and numpy backends.

The backend is fixed at import time, so each backend runs in its own
subprocess with SWTLG_DISABLE_NUMBA set accordingly.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from swtlg import _kernels
from swtlg.materials import load_preset
from swtlg.dispersion import k_of_omega, FieldPoint
from swtlg.compiler import compile_netlist
from swtlg.netlist import builtin_full_adder
from swtlg.simulator import exhaustive_report, shifter_phases
from swtlg.phase_shifter import _k_cached

repeat = int(sys.argv[1])
stack = load_preset("cofeb-paper")
k = np.geomspace(1e4, 1e9, 200_000)
w = np.arange(1, 19, dtype=np.int64) % 5 - 2


def best(fn):
    fn()  # warm-up, includes JIT compile on the numba backend
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def roots():
    for f in np.linspace(30e9, 40e9, 50):
        for b in np.linspace(-0.1, 0.1, 10):
            k_of_omega(float(f), FieldPoint(float(b)), stack)


def fa_cold():
    _k_cached.cache_clear()
    shifter_phases.cache_clear()
    exhaustive_report(compile_netlist(builtin_full_adder(), 35e9, 0.0, stack), "physical")


results = {
    "backend": _kernels.BACKEND,
    "omega_sq_grid_200k": best(lambda: _kernels.omega_sq_grid(k, 0.02, *stack.kernel_args())),
    "k_of_omega_500": best(roots),
    "weighted_sums_18in": best(lambda: _kernels.weighted_sums(w, np.int64(3))),
    "fa_compile_simulate": best(fa_cold),
}
print(json.dumps(results))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, SWTLG_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'kernel':<22}{fast['backend']:>12}{slow['backend']:>12}{'ratio':>9}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:<22}{fast[key] * 1e3:>10.2f}ms{slow[key] * 1e3:>10.2f}ms{slow[key] / fast[key]:>8.1f}x")


if __name__ == "__main__":
    main()
