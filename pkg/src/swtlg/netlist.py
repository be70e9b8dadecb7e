"""Integer threshold-logic gates and acyclic gate networks.

A gate outputs 1 when ``sum(w_i * x_i) - threshold >= 0`` and 0 otherwise.
"""
from __future__ import annotations

import csv
import heapq
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import (CapacityError, CyclicNetlistError, NetlistError, UnresolvedSignalError)

MAX_EXHAUSTIVE_INPUTS = 20


def _as_int(value, what):
    if isinstance(value, bool) or int(value) != value:
        raise NetlistError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class ThresholdGate:
    id: str
    inputs: tuple
    weights: tuple
    threshold: int
    annotations: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(str(s) for s in self.inputs))
        object.__setattr__(self, "weights", tuple(_as_int(w, f"gate {self.id!r} weight") for w in self.weights))
        object.__setattr__(self, "threshold", _as_int(self.threshold, f"gate {self.id!r} threshold"))
        if not self.inputs:
            raise NetlistError(f"gate {self.id!r} has no inputs")
        if len(self.inputs) != len(self.weights):
            raise NetlistError(
                f"gate {self.id!r}: {len(self.inputs)} inputs but {len(self.weights)} weights")

    def excess(self, bits: Sequence[int]) -> int:
        """``sum(w*x) - threshold`` for input bits given in ``inputs`` order."""
        return sum(w * x for w, x in zip(self.weights, bits)) - self.threshold


@dataclass(frozen=True)
class ThresholdNetlist:
    primary_inputs: tuple
    gates: tuple
    outputs: tuple

    def __post_init__(self):
        object.__setattr__(self, "primary_inputs", tuple(self.primary_inputs))
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        names = set()
        for name in self.primary_inputs:
            if name in names:
                raise NetlistError(f"duplicate primary input {name!r}")
            names.add(name)
        for gate in self.gates:
            if gate.id in names:
                raise NetlistError(f"gate id {gate.id!r} collides with another signal")
            names.add(gate.id)
        for gate in self.gates:
            for src in gate.inputs:
                if src not in names:
                    raise UnresolvedSignalError(f"gate {gate.id!r} reads unknown signal {src!r}")
        gate_ids = {g.id for g in self.gates}
        for out in self.outputs:
            if out not in gate_ids:
                raise UnresolvedSignalError(f"output {out!r} is not a gate")
        object.__setattr__(self, "_order", self._topological_order())

    def _topological_order(self):
        by_id = {g.id: g for g in self.gates}
        indegree = {g.id: sum(1 for s in g.inputs if s in by_id) for g in self.gates}
        readers = {g.id: [] for g in self.gates}
        for g in self.gates:
            for s in g.inputs:
                if s in by_id:
                    readers[s].append(g.id)
        ready = [gid for gid, deg in indegree.items() if deg == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            gid = heapq.heappop(ready)
            order.append(by_id[gid])
            for reader in readers[gid]:
                indegree[reader] -= 1
                if indegree[reader] == 0:
                    heapq.heappush(ready, reader)
        if len(order) != len(self.gates):
            stuck = sorted(gid for gid, deg in indegree.items() if deg > 0)
            raise CyclicNetlistError(f"netlist has a cycle through gates {stuck}")
        return tuple(order)

    @property
    def topological_order(self) -> tuple:
        """Gates in dependency order; ties broken by gate id."""
        return self._order

    def gate(self, gate_id: str) -> ThresholdGate:
        for g in self.gates:
            if g.id == gate_id:
                return g
        raise UnresolvedSignalError(f"no gate {gate_id!r}")

    def depth(self) -> int:
        level = {}
        for g in self._order:
            level[g.id] = 1 + max((level.get(s, 0) for s in g.inputs), default=0)
        return max(level.values(), default=0)

    # ------------------------------------------------------------------ JSON

    def to_dict(self) -> dict:
        gates = []
        for g in self.gates:
            entry = {"id": g.id, "inputs": list(g.inputs), "weights": list(g.weights),
                     "threshold": g.threshold}
            if g.annotations:
                entry["annotations"] = dict(g.annotations)
            gates.append(entry)
        return {"primary_inputs": list(self.primary_inputs), "gates": gates,
                "outputs": list(self.outputs)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "ThresholdNetlist":
        try:
            gates = [ThresholdGate(str(g["id"]), g["inputs"], g["weights"], g["threshold"],
                                   dict(g.get("annotations", {})))
                     for g in data["gates"]]
            return cls(tuple(str(p) for p in data["primary_inputs"]), gates,
                       tuple(str(o) for o in data.get("outputs", [g.id for g in gates])))
        except (KeyError, TypeError) as exc:
            raise NetlistError(f"malformed netlist document: {exc!r}") from exc

    @classmethod
    def load(cls, path) -> "ThresholdNetlist":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise NetlistError(f"cannot read netlist {path}: {exc}") from exc
        return cls.from_dict(data)

    def dump(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


def _check_bit(name, value):
    if value not in (0, 1):
        raise NetlistError(f"signal {name!r} must be 0 or 1, got {value!r}")
    return int(value)


def eval_gate(gate: ThresholdGate, assignment: Mapping[str, int]) -> int:
    bits = []
    for src in gate.inputs:
        if src not in assignment:
            raise UnresolvedSignalError(f"gate {gate.id!r}: no value for input {src!r}")
        bits.append(_check_bit(src, assignment[src]))
    return 1 if gate.excess(bits) >= 0 else 0


def _primary_map(netlist, primary_assignment):
    if isinstance(primary_assignment, Mapping):
        values = dict(primary_assignment)
    else:
        bits = list(primary_assignment)
        if len(bits) != len(netlist.primary_inputs):
            raise UnresolvedSignalError(
                f"expected {len(netlist.primary_inputs)} primary input bits, got {len(bits)}")
        values = dict(zip(netlist.primary_inputs, bits))
    for name in netlist.primary_inputs:
        if name not in values:
            raise UnresolvedSignalError(f"primary input {name!r} not assigned")
        values[name] = _check_bit(name, values[name])
    return values


def eval_netlist(netlist: ThresholdNetlist, primary_assignment) -> dict:
    """Gate id -> output bit for one primary-input assignment (mapping or ordered bits)."""
    values = _primary_map(netlist, primary_assignment)
    out = {}
    for gate in netlist.topological_order:
        out[gate.id] = values[gate.id] = eval_gate(gate, values)
    return out


def input_vectors(n: int) -> np.ndarray:
    """All ``2**n`` bit vectors in canonical binary order, first input most significant."""
    if n > MAX_EXHAUSTIVE_INPUTS:
        raise CapacityError(f"{n} inputs exceed the exhaustive limit of {MAX_EXHAUSTIVE_INPUTS}")
    masks = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((masks[:, None] >> shifts[None, :]) & 1).astype(np.int64)


def signal_columns(netlist: ThresholdNetlist) -> tuple:
    """``(vectors, columns)``: every signal's value over all primary assignments."""
    vectors = input_vectors(len(netlist.primary_inputs))
    columns = {name: vectors[:, i] for i, name in enumerate(netlist.primary_inputs)}
    for gate in netlist.topological_order:
        stacked = np.stack([columns[s] for s in gate.inputs], axis=1)
        columns[gate.id] = (stacked @ np.asarray(gate.weights, dtype=np.int64)
                            - gate.threshold >= 0).astype(np.int64)
    return vectors, columns


def reachable_gate_inputs(netlist: ThresholdNetlist, gate_id: str) -> np.ndarray:
    """Distinct input vectors a gate can actually see, in canonical order."""
    gate = netlist.gate(gate_id)
    _, columns = signal_columns(netlist)
    seen = np.stack([columns[s] for s in gate.inputs], axis=1)
    return np.unique(seen, axis=0)


def truth_table(netlist: ThresholdNetlist) -> list:
    """``[(input_bits, output_bits), ...]`` over every primary assignment."""
    vectors, columns = signal_columns(netlist)
    outs = np.stack([columns[o] for o in netlist.outputs], axis=1) if netlist.outputs else \
        np.zeros((len(vectors), 0), dtype=np.int64)
    return [(tuple(v.tolist()), tuple(o.tolist())) for v, o in zip(vectors, outs)]


def write_truth_table_csv(netlist: ThresholdNetlist, path):
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([*netlist.primary_inputs, *netlist.outputs])
        for ins, outs in truth_table(netlist):
            writer.writerow([*ins, *outs])
    return path


def builtin_full_adder() -> ThresholdNetlist:
    """Two-gate adder: carry = [a+b+cin >= 2], sum = [a+b+cin-2*carry >= 1]."""
    cout = ThresholdGate("cout", ("a", "b", "cin"), (1, 1, 1), 2)
    total = ThresholdGate("sum", ("a", "b", "cin", "cout"), (1, 1, 1, -2), 1)
    return ThresholdNetlist(("a", "b", "cin"), (cout, total), ("cout", "sum"))
