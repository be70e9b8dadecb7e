import math
import os
import subprocess
import sys

import numpy as np
import pytest

from swtlg import _kernels
from swtlg.materials import load_preset

STACK = load_preset()
ARGS = STACK.kernel_args()


def test_grid_forms_agree():
    ks = np.geomspace(1e4, 1e9, 777)
    for b in (-0.1, 0.0, 0.0147, 0.3):
        loop = _kernels._omega_sq_grid_loop(ks, b, *ARGS)
        vec = _kernels._omega_sq_grid_numpy(ks, b, *ARGS)
        np.testing.assert_allclose(loop, vec, rtol=1e-13, atol=0)


def test_grid_forms_agree_off_axis():
    args = STACK.with_(theta_k_from_geometry=True, theta_m=0.3).kernel_args()
    ks = np.geomspace(1e5, 1e9, 300)
    np.testing.assert_allclose(_kernels._omega_sq_grid_loop(ks, 0.02, *args),
                               _kernels._omega_sq_grid_numpy(ks, 0.02, *args), rtol=1e-13)


@pytest.mark.parametrize("f, b", [(30e9, 0.0), (35e9, -0.05), (40e9, 0.1)])
def test_scan_forms_agree(f, b):
    target = (2 * math.pi * f) ** 2
    loop = _kernels._scan_roots_loop(target, 1e4, 1e9, 512, b, *ARGS)
    vec = _kernels._scan_roots_numpy(target, 1e4, 1e9, 512, b, *ARGS)
    assert loop.shape == vec.shape == (1,)
    assert loop[0] == pytest.approx(vec[0], rel=1e-12)


def test_weighted_sums_agree():
    rng = np.random.default_rng(0)
    for n in range(1, 9):
        w = rng.integers(-5, 6, n).astype(np.int64)
        psi = int(rng.integers(-6, 7))
        assert np.array_equal(_kernels._weighted_sums_loop(w, np.int64(psi)),
                              _kernels._weighted_sums_numpy(w, psi))


def test_env_flag_selects_numpy_backend():
    code = ("import swtlg, swtlg._kernels as k; from swtlg import *;"
            "s = load_preset(); c = compile(builtin_full_adder(), 35e9, 0.0, s);"
            "r = exhaustive_report(c, 'physical');"
            "print(k.BACKEND, repr(r.gate_rows('sum')[7][1].net_phase_deg))")
    env = dict(os.environ, SWTLG_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, phase = out.stdout.split()
    assert backend == "numpy"
    from swtlg import builtin_full_adder, compile_netlist, exhaustive_report
    ref = exhaustive_report(compile_netlist(builtin_full_adder(), 35e9, 0.0, STACK), "physical")
    assert float(phase) == pytest.approx(ref.gate_rows("sum")[7][1].net_phase_deg, abs=1e-9)
