"""Command-line front end: ``swtlg <command> [options]``.

Every command writes deterministic data files into ``--out``; nothing is
plotted. Failures exit with status 1 and print a one-line JSON object
``{"error": <category>, "message": ...}`` on stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .compiler import CircuitLayout, compile_netlist, cost_report, validate_phase_budget
from .dispersion import frequency_curve
from .errors import SwtlgError
from .materials import DEFAULT_PRESET, MaterialStack, resolve_material
from .netlist import ThresholdNetlist, write_truth_table_csv
from .phase_shifter import (ShifterSpec, calibrate_field, phase_shift, sweep_field, sweep_frequency,
                            sweep_length)
from .simulator import exhaustive_report, simulate_circuit

FLOAT_FMT = "{:.6g}"
BUILTIN_NETLISTS = {"builtin:fa": "data/fa.json"}


@dataclass(frozen=True)
class RunConfig:
    stack: MaterialStack
    frequency_hz: float
    baseline_t: float
    unit_phase_deg: float
    shifter_length_m: float
    out_dir: Path
    fmt: str

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        if not args.freq_ghz > 0:
            raise SystemExit("--freq-ghz must be positive")
        return cls(resolve_material(args.preset), args.freq_ghz * 1e9, args.baseline_t,
                   args.unit_deg, args.shifter_nm * 1e-9, Path(args.out), args.format)

    def prepare(self) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir


def _fmt(x) -> str:
    return FLOAT_FMT.format(float(x))


def _write_csv(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _write_json(path: Path, data):
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def _load_netlist(spec: str) -> ThresholdNetlist:
    if spec in BUILTIN_NETLISTS:
        text = resources.files("swtlg").joinpath(BUILTIN_NETLISTS[spec]).read_text()
        return ThresholdNetlist.from_dict(json.loads(text))
    return ThresholdNetlist.load(spec)


def _float_list(text: str):
    return [float(v) for v in text.split(",") if v.strip()]


def _report(paths):
    for p in paths:
        print(p)


# -------------------------------------------------------------------- commands

def cmd_dispersion(args):
    cfg = RunConfig.from_args(args)
    fields = _float_list(args.fields)
    if not fields:
        raise SystemExit("dispersion: --fields needs at least one value")
    ks = np.exp(np.linspace(np.log(args.k_min), np.log(args.k_max), args.k_points))
    curves = [(b, frequency_curve(ks, b, cfg.stack)) for b in fields]
    out = cfg.prepare()
    if cfg.fmt == "json":
        data = {"k_rad_per_m": ks.tolist(),
                "curves": [{"field_t": b, "f_ghz": [None if np.isnan(v) else v / 1e9 for v in f]}
                           for b, f in curves]}
        return [_write_json(out / "dispersion.json", data)]
    paths = []
    for i, (b, f) in enumerate(curves):
        rows = [(_fmt(k), _fmt(v / 1e9) if np.isfinite(v) else "nan") for k, v in zip(ks, f)]
        paths.append(_write_csv(out / f"dispersion_{i}_{b:+.4f}T.csv", ("k_rad_per_m", "f_ghz"), rows))
    return paths


def _emit_table(out: Path, stem: str, table, fmt: str):
    if fmt == "json":
        return [_write_json(out / f"{stem}.json",
                            {"samples": [[x, y] for x, y in table.samples], "summary": table.summary()})]
    return [table.write_csv(out / f"{stem}.csv"), table.write_summary(out / f"{stem}.summary.json")]


def cmd_sweep(args):
    cfg = RunConfig.from_args(args)
    out = cfg.prepare()
    if args.kind == "field":
        table = sweep_field(cfg.shifter_length_m, cfg.frequency_hz, cfg.baseline_t, cfg.stack,
                            (args.b_min, args.b_max), args.steps)
        return _emit_table(out, "sweep_field", table, cfg.fmt)
    if args.kind == "frequency":
        freqs = [f * 1e9 for f in _float_list(args.freqs_ghz)]
        if not freqs:
            raise SystemExit("sweep frequency: --freqs-ghz needs at least one value")
        paths = []
        for f, table in sweep_frequency(cfg.shifter_length_m, freqs, cfg.baseline_t, cfg.stack,
                                        (args.b_min, args.b_max), args.steps):
            paths += _emit_table(out, f"sweep_frequency_{f / 1e9:g}GHz", table, cfg.fmt)
        return paths
    lengths = [v * 1e-9 for v in _float_list(args.lengths_nm)]
    table = sweep_length(lengths, args.field_t, cfg.frequency_hz, cfg.baseline_t, cfg.stack)
    return _emit_table(out, "sweep_length", table, cfg.fmt)


def cmd_calibrate(args):
    cfg = RunConfig.from_args(args)
    field = calibrate_field(args.target_deg, cfg.shifter_length_m, cfg.frequency_hz, cfg.baseline_t,
                            cfg.stack, bound=args.bound)
    achieved = phase_shift(ShifterSpec(cfg.shifter_length_m, field), cfg.frequency_hz, cfg.baseline_t,
                           cfg.stack)
    record = {"target_deg": args.target_deg, "field_t": field, "achieved_deg": achieved,
              "length_m": cfg.shifter_length_m, "frequency_hz": cfg.frequency_hz,
              "baseline_t": cfg.baseline_t}
    if cfg.fmt == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print(_fmt(field))
    return []


def cmd_compile(args):
    cfg = RunConfig.from_args(args)
    netlist = _load_netlist(args.netlist)
    circuit = compile_netlist(netlist, cfg.frequency_hz, cfg.baseline_t, cfg.stack,
                              unit_phase_deg=cfg.unit_phase_deg, shifter_length=cfg.shifter_length_m,
                              field_rule=args.field_rule, strict=args.strict)
    budgets = {lay.gate_id: validate_phase_budget(lay, netlist) for lay in circuit.layouts}
    circuit.meta["max_abs_net_phase_deg"] = budgets
    out = cfg.prepare()
    path = out / args.layout_name
    circuit.dump(path)
    return [path]


def cmd_simulate(args):
    circuit = CircuitLayout.load(args.layout)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.input is not None:
        bits = [int(c) for c in args.input.replace(",", "")]
        results = simulate_circuit(circuit, bits, args.mode)
        data = {"mode": args.mode, "inputs": bits, "gates": {g: r.to_dict() for g, r in results.items()}}
        return [_write_json(out / f"simulate_{args.mode}_{''.join(map(str, bits))}.json", data)]
    report = exhaustive_report(circuit, args.mode)
    paths = [report.write_json(out / f"report_{args.mode}.json")]
    if args.format == "csv":
        for gate_id in circuit.netlist.outputs or [lay.gate_id for lay in circuit.layouts]:
            paths.append(report.write_gate_csv(gate_id, out / f"report_{args.mode}_{gate_id}.csv"))
    return paths


def cmd_cost(args):
    netlist = _load_netlist(args.netlist)
    report = cost_report(netlist).to_dict()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        return [_write_json(out / "cost.json", report)]
    rows = [("tlg", report["gate_count"], report["transducer_count"], report["shifter_count"],
             report["gate_depth"])]
    ref = report.get("maj3_reference")
    if ref:
        rows.append(("maj3", ref["gate_count"], ref["transducer_count"], "", ref["gate_depth"]))
    return [_write_csv(out / "cost.csv", ("implementation", "gates", "transducers", "shifters", "depth"), rows)]


def cmd_truth_table(args):
    netlist = _load_netlist(args.netlist)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return [write_truth_table_csv(netlist, out / "truth_table.csv")]


# ---------------------------------------------------------------------- parser

def _config_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--preset", default=DEFAULT_PRESET, help="material preset or file[:section]")
    g.add_argument("--freq-ghz", type=float, default=35.0)
    g.add_argument("--baseline-t", type=float, default=0.0, help="effective internal field, tesla")
    g.add_argument("--unit-deg", type=float, default=10.0, help="phase per weight unit")
    g.add_argument("--shifter-nm", type=float, default=100.0)
    g.add_argument("--out", default="out")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def build_parser() -> argparse.ArgumentParser:
    cfg = _config_parent()
    parser = argparse.ArgumentParser(prog="swtlg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dispersion", parents=[cfg], help="dispersion curves f(k) per field")
    p.add_argument("--fields", required=True, help="comma-separated fields in tesla")
    p.add_argument("--k-min", type=float, default=1e6)
    p.add_argument("--k-max", type=float, default=5e8)
    p.add_argument("--k-points", type=int, default=200)
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("sweep", parents=[cfg], help="phase-shift sweeps over field, frequency or length")
    p.add_argument("kind", choices=("field", "frequency", "length"))
    p.add_argument("--b-min", type=float, default=-0.1)
    p.add_argument("--b-max", type=float, default=0.1)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--freqs-ghz", default="30,35,40")
    p.add_argument("--lengths-nm", default="100,150,200,250,300")
    p.add_argument("--field-t", type=float, default=0.01)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("calibrate", parents=[cfg], help="field for a target phase shift")
    p.add_argument("target_deg", type=float)
    p.add_argument("--bound", type=float, default=0.5, help="field search bound, tesla")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("compile", parents=[cfg], help="netlist JSON -> layout JSON")
    p.add_argument("netlist", help="netlist file or builtin:fa")
    p.add_argument("--field-rule", choices=("scaled", "exact"), default="scaled")
    p.add_argument("--strict", action="store_true", help="re-check the budget with physical phases")
    p.add_argument("--layout-name", default="layout.json")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="simulate a compiled layout")
    p.add_argument("layout")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--input", help="primary input bits, e.g. 101")
    p.add_argument("--mode", choices=("ideal", "physical"), default="physical")
    p.add_argument("--out", default="out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("cost", help="transducer/shifter cost table")
    p.add_argument("netlist")
    p.add_argument("--out", default="out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("truth-table", help="ideal truth table as CSV")
    p.add_argument("netlist")
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_truth_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _report(args.func(args) or [])
    except SwtlgError as exc:
        print(json.dumps({"error": exc.category, "message": str(exc)}), file=sys.stderr)
        return 1
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(json.dumps({"error": "usage", "message": exc.code}), file=sys.stderr)
            return 2
        raise
    return 0


if __name__ == "__main__":
    sys.exit(main())
