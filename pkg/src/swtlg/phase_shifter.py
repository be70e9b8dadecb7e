"""Phase rotation imparted by a uniform-field strip on a propagating spin wave.

A strip of length ``L`` carrying an extra field ``delta_B`` changes the local
wavenumber from ``k0`` to ``k'``; the wave leaves the strip advanced by
``(k0 - k') * L``. Fields along the magnetization shorten ``k`` and give a
positive (forward) shift.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .dispersion import (DEFAULT_BRACKET, DEFAULT_GRID_POINTS, FieldPoint, as_field,
                         k_of_omega)
from .errors import (CalibrationAmbiguityError, CalibrationRangeError, EvanescentError,
                     InvalidArgumentError)
from .materials import MaterialStack

RAD2DEG = 180.0 / math.pi
DEFAULT_FIELD_BOUND = 0.5
CALIBRATION_TOL_DEG = 1e-9
_MONOTONE_PROBES = 17


@dataclass(frozen=True)
class ShifterSpec:
    length: float
    delta_b: float
    label: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.length) and self.length >= 0):
            raise InvalidArgumentError(f"shifter length must be finite and >= 0, got {self.length!r}")
        if not math.isfinite(self.delta_b):
            raise InvalidArgumentError(f"shifter field must be finite, got {self.delta_b!r}")


@lru_cache(maxsize=4096)
def _k_cached(f, b_eff, stack, bracket, grid_points):
    return k_of_omega(f, FieldPoint(b_eff), stack, bracket, grid_points)


def wavenumber_shift(delta_b: float, f: float, baseline, stack: MaterialStack,
                     bracket=DEFAULT_BRACKET, grid_points=DEFAULT_GRID_POINTS, label="") -> float:
    """``k0 - k'`` in rad/m for a strip field ``delta_b`` on top of ``baseline``."""
    baseline = as_field(baseline)
    bracket = tuple(bracket)
    k0 = _k_cached(f, baseline.b_eff, stack, bracket, grid_points)
    if delta_b == 0:
        return 0.0
    local = baseline.b_eff + delta_b
    try:
        k1 = _k_cached(f, local, stack, bracket, grid_points)
    except EvanescentError as exc:
        name = f" {label!r}" if label else ""
        raise EvanescentError(
            f"evanescent under shifter{name}: B_local={local:.6g} T at f={f / 1e9:.6g} GHz ({exc})",
            radicand=exc.radicand, field_t=local) from exc
    return k0 - k1


def phase_shift(shifter: ShifterSpec, f: float, baseline, stack: MaterialStack,
                bracket=DEFAULT_BRACKET, grid_points=DEFAULT_GRID_POINTS) -> float:
    """Phase advance in degrees after the wave crosses ``shifter``."""
    if shifter.length == 0:
        return 0.0
    dk = wavenumber_shift(shifter.delta_b, f, baseline, stack, bracket, grid_points, shifter.label)
    return dk * RAD2DEG * shifter.length


def _phase_at(delta_b, length, f, baseline, stack, bracket, grid_points):
    return phase_shift(ShifterSpec(length, delta_b), f, baseline, stack, bracket, grid_points)


def calibrate_field(target_deg: float, length: float, f: float, baseline, stack: MaterialStack,
                    bound: float = DEFAULT_FIELD_BOUND, tol_deg: float = CALIBRATION_TOL_DEG,
                    bracket=DEFAULT_BRACKET, grid_points=DEFAULT_GRID_POINTS) -> float:
    """Strip field (tesla) whose phase shift equals ``target_deg``.

    Searches ``[0, bound]`` for positive targets and ``[-bound, 0]`` for
    negative ones. If the wave is cut off before ``bound`` the search range is
    halved until it propagates at the edge.
    """
    if not math.isfinite(target_deg):
        raise InvalidArgumentError(f"target must be finite, got {target_deg!r}")
    if target_deg == 0:
        return 0.0
    if not length > 0:
        raise CalibrationRangeError(f"a {length!r} m shifter cannot produce {target_deg} deg")
    args = (length, f, baseline, stack, tuple(bracket), grid_points)
    sign = 1.0 if target_deg > 0 else -1.0

    edge = sign * bound
    for _ in range(40):
        try:
            edge_phase = _phase_at(edge, *args)
            break
        except EvanescentError:
            edge *= 0.5
    else:
        raise CalibrationRangeError(f"no propagating field found within +/-{bound} T")

    probes = np.linspace(0.0, edge, _MONOTONE_PROBES)
    values = np.array([_phase_at(b, *args) for b in probes])
    steps = np.diff(values) * sign
    if not np.all(steps > 0):
        raise CalibrationAmbiguityError(
            f"phase shift is not monotone in the field over [0, {edge:.6g}] T; bisection would be ambiguous")
    if abs(target_deg) > abs(edge_phase):
        raise CalibrationRangeError(
            f"target {target_deg} deg unreachable: {edge:.6g} T gives only {edge_phase:.6g} deg")

    # start from the probe interval that brackets the target
    idx = int(np.searchsorted(values * sign, target_deg * sign))
    lo, hi = probes[idx - 1], probes[idx]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        err = _phase_at(mid, *args) - target_deg
        if abs(err) < tol_deg or mid in (lo, hi):
            return float(mid)
        if (err < 0) == (sign > 0):
            lo = mid
        else:
            hi = mid
    return float(0.5 * (lo + hi))


@dataclass
class SweepTable:
    """Samples of phase shift against one swept variable, with a least-squares line."""

    x_values: np.ndarray
    phase_deg: np.ndarray
    slope: float
    intercept: float
    r_squared: float
    x_name: str = "x_value"
    meta: dict = dc_field(default_factory=dict)

    @classmethod
    def fit(cls, x, y, x_name="x_value", **meta) -> "SweepTable":
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        order = np.argsort(x, kind="stable")
        x, y = x[order], y[order]
        slope, intercept = np.polyfit(x, y, 1)
        resid = y - (slope * x + intercept)
        ss_res = float(resid @ resid)
        centered = y - y.mean()
        ss_tot = float(centered @ centered)
        r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
        return cls(x, y, float(slope), float(intercept), r2, x_name, dict(meta))

    @property
    def samples(self):
        return list(zip(self.x_values.tolist(), self.phase_deg.tolist()))

    @property
    def r_squared_rounded(self) -> float:
        return round(self.r_squared, 4)

    def summary(self) -> dict:
        return {"x_name": self.x_name, "n_samples": int(self.x_values.size), "slope": self.slope,
                "intercept": self.intercept, "r_squared": self.r_squared, **self.meta}

    def write_csv(self, path, fmt="{:.6g}"):
        path = Path(path)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x_value", "phase_shift_deg"])
            for x, y in self.samples:
                writer.writerow([fmt.format(x), fmt.format(y)])
        return path

    def write_summary(self, path):
        path = Path(path)
        path.write_text(json.dumps(self.summary(), indent=2, sort_keys=True) + "\n")
        return path


def sweep_field(length: float, f: float, baseline, stack: MaterialStack, b_range, steps: int,
                bracket=DEFAULT_BRACKET, grid_points=DEFAULT_GRID_POINTS) -> SweepTable:
    if steps < 3:
        raise InvalidArgumentError(f"steps must be >= 3, got {steps}")
    b_lo, b_hi = b_range
    fields = np.linspace(b_lo, b_hi, int(steps))
    phases = [_phase_at(float(b), length, f, baseline, stack, tuple(bracket), grid_points)
              for b in fields]
    return SweepTable.fit(fields, phases, x_name="field_t", frequency_hz=f, length_m=length,
                          baseline_t=as_field(baseline).b_eff)


def sweep_frequency(length: float, freqs, baseline, stack: MaterialStack, b_range, steps: int,
                    bracket=DEFAULT_BRACKET, grid_points=DEFAULT_GRID_POINTS):
    return [(float(f), sweep_field(length, f, baseline, stack, b_range, steps, bracket, grid_points))
            for f in freqs]


def sweep_length(lengths, delta_b: float, f: float, baseline, stack: MaterialStack,
                 bracket=DEFAULT_BRACKET, grid_points=DEFAULT_GRID_POINTS) -> SweepTable:
    lengths = np.asarray(lengths, dtype=np.float64)
    if lengths.size == 0 or np.any(lengths <= 0):
        raise InvalidArgumentError("lengths must be non-empty and > 0")
    per_metre = wavenumber_shift(delta_b, f, baseline, stack, bracket, grid_points) * RAD2DEG
    return SweepTable.fit(lengths, per_metre * lengths, x_name="length_m", frequency_hz=f,
                          field_t=delta_b, baseline_t=as_field(baseline).b_eff)
