"""Netlist -> physical gate layouts.

Each gate becomes one waveguide carrying one shifter per input (enabled when
that input is 1) followed by an always-on threshold shifter worth
``-threshold`` weight units.

Two field rules are available:

``scaled`` (default)
    One unit field is calibrated for ``unit_phase_deg`` and every shifter gets
    ``weight * unit_field``. Because the dispersion is asymmetric in the field,
    the realized phases deviate slightly from exact multiples; this is the
    regime that gives the boundary vectors a positive margin.
``exact``
    Every distinct weight is calibrated separately, so each enabled shifter
    realizes ``weight * unit_phase_deg`` to calibration tolerance.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .dispersion import as_field
from .errors import CapacityError, InvalidArgumentError, NetlistError, PhaseBudgetError
from .materials import MaterialStack
from .netlist import (MAX_EXHAUSTIVE_INPUTS, ThresholdNetlist, builtin_full_adder, input_vectors,
                      reachable_gate_inputs)
from .phase_shifter import DEFAULT_FIELD_BOUND, ShifterSpec, calibrate_field, phase_shift

THRESHOLD = "THRESHOLD"
PHASE_BUDGET_DEG = 360.0
DEFAULT_UNIT_PHASE_DEG = 10.0
DEFAULT_SHIFTER_LENGTH = 100e-9
DEFAULT_SPACING = 200e-9
FIELD_RULES = ("scaled", "exact")


@dataclass(frozen=True)
class LayoutShifter:
    source: str
    weight: int
    length_m: float
    field_t: float
    always_on: bool = False
    position_m: float = 0.0

    def spec(self) -> ShifterSpec:
        return ShifterSpec(self.length_m, self.field_t, self.source)


@dataclass(frozen=True)
class GateLayout:
    gate_id: str
    frequency_hz: float
    baseline_t: float
    unit_phase_deg: float
    shifters: tuple
    field_rule: str = "scaled"
    read_position_m: float = 0.0

    @property
    def input_shifters(self) -> tuple:
        return tuple(s for s in self.shifters if not s.always_on)

    @property
    def threshold_shifter(self) -> LayoutShifter:
        return next(s for s in self.shifters if s.always_on)

    @property
    def threshold(self) -> int:
        return -self.threshold_shifter.weight

    @property
    def weights(self) -> tuple:
        return tuple(s.weight for s in self.input_shifters)

    def to_dict(self) -> dict:
        return {"id": self.gate_id, "frequency_hz": self.frequency_hz, "baseline_t": self.baseline_t,
                "unit_phase_deg": self.unit_phase_deg, "field_rule": self.field_rule,
                "read_position_m": self.read_position_m,
                "shifters": [asdict(s) for s in self.shifters]}

    @classmethod
    def from_dict(cls, data) -> "GateLayout":
        shifters = tuple(LayoutShifter(**s) for s in data["shifters"])
        layout = cls(str(data["id"]), float(data["frequency_hz"]), float(data["baseline_t"]),
                     float(data["unit_phase_deg"]), shifters, data.get("field_rule", "scaled"),
                     float(data.get("read_position_m", 0.0)))
        if sum(s.always_on for s in shifters) != 1:
            raise NetlistError(f"layout {layout.gate_id!r} needs exactly one always-on threshold shifter")
        return layout


@dataclass(frozen=True)
class CircuitLayout:
    layouts: tuple
    netlist: ThresholdNetlist
    stack: MaterialStack
    meta: dict = field(default_factory=dict, compare=False)

    def layout(self, gate_id: str) -> GateLayout:
        for lay in self.layouts:
            if lay.gate_id == gate_id:
                return lay
        raise KeyError(gate_id)

    def to_dict(self) -> dict:
        return {"gates": [lay.to_dict() for lay in self.layouts],
                "netlist": self.netlist.to_dict(),
                "material": asdict(self.stack),
                **({"meta": self.meta} if self.meta else {})}

    @classmethod
    def from_dict(cls, data) -> "CircuitLayout":
        try:
            netlist = ThresholdNetlist.from_dict(data["netlist"])
            stack = MaterialStack(**data["material"])
            layouts = tuple(GateLayout.from_dict(g) for g in data["gates"])
        except (KeyError, TypeError) as exc:
            raise NetlistError(f"malformed layout document: {exc!r}") from exc
        return cls(layouts, netlist, stack, dict(data.get("meta", {})))

    def dump(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "CircuitLayout":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise NetlistError(f"cannot read layout {path}: {exc}") from exc
        return cls.from_dict(data)


def ideal_net_phases(weights, threshold, unit_phase_deg) -> np.ndarray:
    """Ideal net phase (deg) for every input vector, canonical order."""
    if len(weights) > MAX_EXHAUSTIVE_INPUTS:
        raise CapacityError(f"{len(weights)} inputs exceed the exhaustive limit of {MAX_EXHAUSTIVE_INPUTS}")
    sums = _kernels.weighted_sums(np.asarray(weights, dtype=np.int64), np.int64(threshold))
    return sums * float(unit_phase_deg)


def validate_phase_budget(layout: GateLayout, netlist: ThresholdNetlist | None = None,
                          stack: MaterialStack | None = None, strict: bool = False) -> float:
    """Worst-case ``|net phase|`` in degrees; raises when it reaches 360.

    With a netlist only the input vectors reachable from the primary inputs
    are enumerated; without one, all ``2**n`` vectors. ``strict`` swaps the
    ideal integer multiples for physical shifter phases (needs ``stack``).
    """
    n = len(layout.input_shifters)
    names = [s.source for s in layout.input_shifters]
    if netlist is not None:
        vectors = reachable_gate_inputs(netlist, layout.gate_id)
    else:
        vectors = input_vectors(n)
    if strict:
        if stack is None:
            raise InvalidArgumentError("strict budget check needs the material stack")
        phases = np.array([phase_shift(s.spec(), layout.frequency_hz, layout.baseline_t, stack)
                           for s in layout.input_shifters])
        base = phase_shift(layout.threshold_shifter.spec(), layout.frequency_hz, layout.baseline_t, stack)
        nets = vectors @ phases + base
    elif netlist is None:
        nets = ideal_net_phases(layout.weights, layout.threshold, layout.unit_phase_deg)
    else:
        nets = (vectors @ np.asarray(layout.weights, dtype=np.int64) - layout.threshold) * layout.unit_phase_deg
    worst = int(np.argmax(np.abs(nets)))
    max_abs = float(abs(nets[worst]))
    if max_abs >= PHASE_BUDGET_DEG:
        vector = tuple(vectors[worst].tolist())
        named = ", ".join(f"{k}={v}" for k, v in zip(names, vector))
        raise PhaseBudgetError(
            f"gate {layout.gate_id!r}: net phase {nets[worst]:.6g} deg at ({named}) "
            f"reaches the {PHASE_BUDGET_DEG:g} deg budget", layout.gate_id, vector, float(nets[worst]))
    return max_abs


def compile_netlist(netlist: ThresholdNetlist, f: float, baseline, stack: MaterialStack,
                    unit_phase_deg: float = DEFAULT_UNIT_PHASE_DEG,
                    shifter_length: float = DEFAULT_SHIFTER_LENGTH, field_rule: str = "scaled",
                    strict: bool = False, spacing: float = DEFAULT_SPACING,
                    bound: float = DEFAULT_FIELD_BOUND) -> CircuitLayout:
    """Compile every gate of ``netlist`` into a calibrated layout.

    Gate annotations ``unit_phase_deg`` and ``shifter_length_m`` override the
    global values for that gate.
    """
    if field_rule not in FIELD_RULES:
        raise InvalidArgumentError(f"field_rule must be one of {FIELD_RULES}, got {field_rule!r}")
    baseline = as_field(baseline)
    cache = {}

    def field_for(weight, unit, length):
        target = weight * unit if field_rule == "exact" else unit
        key = (target, length)
        if key not in cache:
            cache[key] = calibrate_field(target, length, f, baseline, stack, bound=bound)
        return cache[key] if field_rule == "exact" else weight * cache[key]

    layouts = []
    for gate in netlist.topological_order:
        unit = float(gate.annotations.get("unit_phase_deg", unit_phase_deg))
        length = float(gate.annotations.get("shifter_length_m", shifter_length))
        if unit <= 0 or length <= 0:
            raise InvalidArgumentError(f"gate {gate.id!r}: unit phase and shifter length must be > 0")
        shifters = []
        pos = spacing
        for src, w in zip(gate.inputs, gate.weights):
            shifters.append(LayoutShifter(src, w, length, 0.0, False, pos))
            pos += length + spacing
        shifters.append(LayoutShifter(THRESHOLD, -gate.threshold, length, 0.0, True, pos))
        draft = GateLayout(gate.id, float(f), baseline.b_eff, unit, tuple(shifters), field_rule,
                           pos + length + spacing)
        # budget before calibration: it is cheap and names the offending vector
        validate_phase_budget(draft, netlist)
        shifters = [LayoutShifter(s.source, s.weight, s.length_m,
                                  field_for(s.weight, unit, length) if s.weight else 0.0,
                                  s.always_on, s.position_m) for s in shifters]
        layout = GateLayout(gate.id, float(f), baseline.b_eff, unit, tuple(shifters), field_rule,
                            draft.read_position_m)
        if strict:
            validate_phase_budget(layout, netlist, stack, strict=True)
        else:
            # surfaces evanescent shifters now rather than at simulation time
            for s in shifters:
                phase_shift(s.spec(), f, baseline, stack)
        layouts.append(layout)
    meta = {"field_rule": field_rule, "spacing_m": spacing}
    return CircuitLayout(tuple(layouts), netlist, stack, meta)


@dataclass(frozen=True)
class CostReport:
    gate_count: int
    transducer_count: int
    shifter_count: int
    gate_depth: int
    maj3_reference: dict | None = None

    def to_dict(self) -> dict:
        out = {"gate_count": self.gate_count, "transducer_count": self.transducer_count,
               "shifter_count": self.shifter_count, "gate_depth": self.gate_depth}
        if self.maj3_reference is not None:
            out["maj3_reference"] = dict(self.maj3_reference)
        return out


def maj3_full_adder_reference() -> dict:
    """Interference-based adder: carry = MAJ3(a,b,c), sum = MAJ3(~carry, MAJ3(a,b,~carry), c)."""
    # 3 input transducers + 1 reader per gate; an extra reader for the inverted carry is not counted
    return {"gate_count": 3, "transducer_count": 12, "gate_depth": 2}


def _is_builtin_full_adder(netlist: ThresholdNetlist) -> bool:
    return netlist.to_dict() == builtin_full_adder().to_dict()


def cost_report(netlist: ThresholdNetlist) -> CostReport:
    gates = len(netlist.gates)
    shifters = sum(len(g.inputs) + 1 for g in netlist.gates)
    ref = maj3_full_adder_reference() if _is_builtin_full_adder(netlist) else None
    return CostReport(gates, 2 * gates, shifters, netlist.depth(), ref)
