"""Evaluate compiled layouts by summing shifter phases and reading the sign.

Gates are cascaded by their decoded bit only; every gate launches a fresh
wave, so no analog phase crosses a gate boundary.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Mapping

import numpy as np

from .compiler import CircuitLayout, GateLayout
from .errors import AmbiguousBranchError, EvanescentError, InvalidArgumentError, UnresolvedSignalError
from .materials import MaterialStack
from .netlist import input_vectors
from .phase_shifter import phase_shift

MODES = ("ideal", "physical")
WRAP_LIMIT_DEG = 180.0


@dataclass(frozen=True)
class PhaseResult:
    gate_id: str
    inputs: tuple
    net_phase_deg: float
    logic_output: int
    mode: str

    @property
    def margin_deg(self) -> float:
        return abs(self.net_phase_deg)

    @property
    def wraps(self) -> bool:
        """True when the readout would be ambiguous modulo 360 degrees."""
        return abs(self.net_phase_deg) > WRAP_LIMIT_DEG

    def to_dict(self) -> dict:
        return {"gate_id": self.gate_id, "inputs": list(self.inputs), "net_phase_deg": self.net_phase_deg,
                "logic_output": self.logic_output, "mode": self.mode, "margin_deg": self.margin_deg,
                "wraps": self.wraps}


def decode(net_phase_deg: float) -> int:
    return 1 if net_phase_deg >= 0 else 0


@lru_cache(maxsize=1024)
def shifter_phases(layout: GateLayout, stack: MaterialStack) -> tuple:
    """Physical phase (deg) of each shifter in layout order, threshold last."""
    out = []
    for s in layout.shifters:
        try:
            out.append(phase_shift(s.spec(), layout.frequency_hz, layout.baseline_t, stack))
        except EvanescentError as exc:
            raise EvanescentError(f"gate {layout.gate_id!r}, shifter {s.source!r}: {exc}",
                                  radicand=exc.radicand, field_t=exc.field_t) from exc
        except AmbiguousBranchError as exc:
            raise AmbiguousBranchError(f"gate {layout.gate_id!r}, shifter {s.source!r}: {exc}",
                                       exc.roots) from exc
    return tuple(out)


def _check_mode(mode):
    if mode not in MODES:
        raise InvalidArgumentError(f"mode must be one of {MODES}, got {mode!r}")


def simulate_gate(layout: GateLayout, enables, mode: str = "ideal",
                  stack: MaterialStack | None = None) -> PhaseResult:
    """Net phase and decoded bit for one vector of input-shifter enables."""
    _check_mode(mode)
    inputs = layout.input_shifters
    bits = tuple(int(b) for b in enables)
    if len(bits) != len(inputs):
        raise UnresolvedSignalError(
            f"gate {layout.gate_id!r} has {len(inputs)} input shifters, got {len(bits)} enables")
    if any(b not in (0, 1) for b in bits):
        raise InvalidArgumentError(f"enables must be bits, got {enables!r}")
    if mode == "ideal":
        units = sum(s.weight * b for s, b in zip(inputs, bits)) + layout.threshold_shifter.weight
        net = units * layout.unit_phase_deg
    else:
        if stack is None:
            raise InvalidArgumentError("physical mode needs a material stack")
        phases = shifter_phases(layout, stack)
        enabled = iter(bits)
        net = 0.0
        for s, p in zip(layout.shifters, phases):
            if s.always_on or next(enabled):
                net += p
    return PhaseResult(layout.gate_id, bits, float(net), decode(net), mode)


def simulate_circuit(circuit: CircuitLayout, primary_assignment, mode: str = "ideal") -> dict:
    """Gate id -> PhaseResult, evaluated in topological order."""
    _check_mode(mode)
    netlist = circuit.netlist
    if isinstance(primary_assignment, Mapping):
        values = {k: int(v) for k, v in primary_assignment.items()}
    else:
        bits = [int(b) for b in primary_assignment]
        if len(bits) != len(netlist.primary_inputs):
            raise UnresolvedSignalError(
                f"expected {len(netlist.primary_inputs)} primary input bits, got {len(bits)}")
        values = dict(zip(netlist.primary_inputs, bits))
    missing = [p for p in netlist.primary_inputs if p not in values]
    if missing:
        raise UnresolvedSignalError(f"primary inputs not assigned: {missing}")
    results = {}
    for layout in circuit.layouts:
        gate = netlist.gate(layout.gate_id)
        enables = [values[src] for src in gate.inputs]
        res = simulate_gate(layout, enables, mode, circuit.stack)
        results[layout.gate_id] = res
        values[layout.gate_id] = res.logic_output
    return results


@dataclass
class ExhaustiveReport:
    circuit: CircuitLayout
    mode: str
    rows: list  # [(primary bits, {gate_id: PhaseResult})]

    @property
    def min_margin_deg(self) -> float:
        return min((r.margin_deg for _, res in self.rows for r in res.values()), default=float("inf"))

    @property
    def wrapped(self) -> list:
        return [r for _, res in self.rows for r in res.values() if r.wraps]

    def outputs(self) -> list:
        outs = self.circuit.netlist.outputs
        return [(bits, tuple(res[o].logic_output for o in outs)) for bits, res in self.rows]

    def gate_rows(self, gate_id: str) -> list:
        return [(bits, res[gate_id]) for bits, res in self.rows]

    def write_gate_csv(self, gate_id: str, path, fmt="{:.6g}"):
        """One row per primary vector: gate inputs, delta_phi_deg, output."""
        gate = self.circuit.netlist.gate(gate_id)
        path = Path(path)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([*gate.inputs, "delta_phi_deg", gate_id])
            for _, res in self.gate_rows(gate_id):
                writer.writerow([*res.inputs, fmt.format(res.net_phase_deg), res.logic_output])
        return path

    def to_dict(self) -> dict:
        netlist = self.circuit.netlist
        return {
            "mode": self.mode,
            "primary_inputs": list(netlist.primary_inputs),
            "outputs": list(netlist.outputs),
            "min_margin_deg": self.min_margin_deg,
            "wrapped_results": len(self.wrapped),
            "rows": [{"inputs": list(bits), "gates": {g: r.to_dict() for g, r in res.items()}}
                     for bits, res in self.rows],
        }

    def write_json(self, path):
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), indent=2) + "\n")
        return path


def exhaustive_report(circuit: CircuitLayout, mode: str = "ideal") -> ExhaustiveReport:
    _check_mode(mode)
    vectors = input_vectors(len(circuit.netlist.primary_inputs))
    rows = [(tuple(v.tolist()), simulate_circuit(circuit, v.tolist(), mode)) for v in vectors]
    return ExhaustiveReport(circuit, mode, rows)


def net_phase_matrix(report: ExhaustiveReport, gate_id: str) -> np.ndarray:
    return np.array([r.net_phase_deg for _, r in report.gate_rows(gate_id)])
