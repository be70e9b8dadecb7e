"""Spin-wave threshold-logic gates.

Analytical dispersion model, phase-shifter calibration, threshold netlists,
netlist-to-layout compilation and phase-accumulation simulation.
"""
from ._kernels import BACKEND
from .compiler import (CircuitLayout, CostReport, GateLayout, LayoutShifter, compile_netlist,
                       cost_report, maj3_full_adder_reference, validate_phase_budget)
from .dispersion import (DispersionPoint, FieldPoint, dipole_factor_F, dispersion_point,
                         ellipsoid_factor_g, frequency_curve, k_of_omega, k_roots, omega_of_k)
from .errors import *  # noqa: F401,F403
from .materials import MaterialStack, load_material_file, load_preset, preset_names
from .netlist import (ThresholdGate, ThresholdNetlist, builtin_full_adder, eval_gate, eval_netlist,
                      truth_table)
from .phase_shifter import (ShifterSpec, SweepTable, calibrate_field, phase_shift, sweep_field,
                            sweep_frequency, sweep_length)
from .simulator import ExhaustiveReport, PhaseResult, exhaustive_report, simulate_circuit, simulate_gate

compile = compile_netlist

__version__ = "0.1.0"
