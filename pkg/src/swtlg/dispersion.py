"""Analytical spin-wave dispersion and its inversion.

Backward-volume geometry with a dipole-exchange approximation::

    omega(k)^2 = (wH + wM*lex*ktot) * (wH + wM*lex*ktot + wM*F)
    ktot = k^2 + (n*pi/w)^2,   wH = gamma*B_eff,   wM = gamma*mu0*Ms

``B_eff`` (tesla) is the effective internal field along the magnetization;
negative values point against it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (AmbiguousBranchError, BelowBandError, EvanescentError,
                     InvalidArgumentError, SingularityError)
from .materials import MaterialStack

DEFAULT_BRACKET = (1e4, 1e9)
DEFAULT_GRID_POINTS = 512
MIN_GRID_POINTS = 64


@dataclass(frozen=True)
class FieldPoint:
    """Effective internal field mu0*H_eff in tesla."""

    b_eff: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.b_eff):
            raise InvalidArgumentError(f"field must be finite, got {self.b_eff!r}")

    def omega_h(self, stack: MaterialStack) -> float:
        return stack.gyromagnetic_ratio * self.b_eff

    def shifted(self, delta_b: float) -> "FieldPoint":
        return FieldPoint(self.b_eff + delta_b)


@dataclass(frozen=True)
class DispersionPoint:
    k: float
    omega: float
    k_tot: float
    f_factor: float
    g: float
    lambda_ex: float

    @property
    def frequency_hz(self) -> float:
        return self.omega / (2 * math.pi)


def as_field(field) -> FieldPoint:
    return field if isinstance(field, FieldPoint) else FieldPoint(float(field))


def _finite(*values):
    for v in values:
        if not math.isfinite(v):
            raise InvalidArgumentError(f"non-finite argument {v!r}")


def ellipsoid_factor_g(k_tot: float, d: float) -> float:
    """Thickness form factor ``1 - (1 - exp(-d*sqrt(ktot))) / (d*sqrt(ktot))``.

    Lies in [0, 1); below ``d*sqrt(ktot) = 1e-6`` the series ``x/2 - x^2/6``
    replaces the closed form.
    """
    _finite(k_tot, d)
    if k_tot <= 0 or d <= 0:
        raise InvalidArgumentError(f"need k_tot > 0 and d > 0, got k_tot={k_tot!r}, d={d!r}")
    return _kernels.g_factor(float(k_tot), float(d))


def dipole_factor_F(k_tot: float, g: float, omega_h: float, omega_m: float,
                    theta_k: float, theta_m: float, lambda_ex: float) -> float:
    _finite(k_tot, g, omega_h, omega_m, theta_k, theta_m, lambda_ex)
    if omega_h + omega_m * lambda_ex * k_tot == 0.0:
        raise SingularityError("omega_H + omega_M*lambda_ex*k_tot vanishes")
    return _kernels.f_factor(float(k_tot), float(g), float(omega_h), float(omega_m),
                             float(lambda_ex), float(theta_k), float(theta_m))


def omega_squared(k: float, field, stack: MaterialStack) -> float:
    """Radicand of the dispersion relation (rad^2/s^2); negative when evanescent."""
    field = as_field(field)
    return _kernels.omega_sq(float(k), field.b_eff, *stack.kernel_args())


def omega_of_k(k: float, field, stack: MaterialStack) -> float:
    """Angular frequency (rad/s) at wavenumber ``k`` (rad/m)."""
    _finite(k)
    if k < 0:
        raise InvalidArgumentError(f"k must be >= 0, got {k!r}")
    field = as_field(field)
    radicand = omega_squared(k, field, stack)
    if radicand < 0:
        raise EvanescentError(
            f"no real frequency at k={k:.6g} rad/m, B_eff={field.b_eff:.6g} T "
            f"(radicand {radicand:.6g})", radicand=radicand, field_t=field.b_eff)
    return math.sqrt(radicand)


def dispersion_point(k: float, field, stack: MaterialStack) -> DispersionPoint:
    field = as_field(field)
    omega = omega_of_k(k, field, stack)
    k_tot = k * k + stack.kn2
    g = ellipsoid_factor_g(k_tot, stack.waveguide_thickness)
    theta_k = math.atan2(math.sqrt(stack.kn2), k) if stack.theta_k_from_geometry else stack.theta_k
    f = _kernels.f_factor(k_tot, g, field.omega_h(stack), stack.omega_m, stack.lambda_ex,
                          theta_k, stack.theta_m)
    return DispersionPoint(k=float(k), omega=omega, k_tot=k_tot, f_factor=f, g=g,
                           lambda_ex=stack.lambda_ex)


def frequency_curve(ks, field, stack: MaterialStack) -> np.ndarray:
    """Frequencies in Hz over an array of wavenumbers; NaN where evanescent."""
    field = as_field(field)
    ks = np.ascontiguousarray(ks, dtype=np.float64)
    radicand = _kernels.omega_sq_grid(ks, field.b_eff, *stack.kernel_args())
    out = np.full_like(radicand, np.nan)
    ok = radicand >= 0
    out[ok] = np.sqrt(radicand[ok]) / (2 * math.pi)
    return out


def k_roots(f: float, field, stack: MaterialStack, bracket=DEFAULT_BRACKET,
            grid_points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """All wavenumbers in ``bracket`` where omega(k) = 2*pi*f, ascending."""
    _finite(f)
    if f <= 0:
        raise InvalidArgumentError(f"frequency must be > 0, got {f!r}")
    k_min, k_max = (float(b) for b in bracket)
    if not (0 < k_min < k_max) or not math.isfinite(k_max):
        raise InvalidArgumentError(f"invalid bracket {bracket!r}")
    if grid_points < MIN_GRID_POINTS:
        raise InvalidArgumentError(f"grid_points must be >= {MIN_GRID_POINTS}, got {grid_points}")
    field = as_field(field)
    target = (2 * math.pi * f) ** 2
    # scanning the radicand keeps the evanescent stretch real-valued and sign-correct
    return _kernels.scan_roots(target, k_min, k_max, int(grid_points), field.b_eff,
                               *stack.kernel_args())


def k_of_omega(f: float, field, stack: MaterialStack, bracket=DEFAULT_BRACKET,
               grid_points: int = DEFAULT_GRID_POINTS) -> float:
    """Wavenumber (rad/m) of the unique propagating mode at frequency ``f`` (Hz)."""
    field = as_field(field)
    roots = k_roots(f, field, stack, bracket, grid_points)
    if roots.size == 0:
        raise BelowBandError(
            f"no propagating mode at f={f / 1e9:.6g} GHz, B_eff={field.b_eff:.6g} T "
            f"in k-bracket {bracket}", field_t=field.b_eff)
    if roots.size > 1:
        listed = ", ".join(f"{r:.6g}" for r in roots)
        raise AmbiguousBranchError(
            f"{roots.size} roots at f={f / 1e9:.6g} GHz, B_eff={field.b_eff:.6g} T: {listed}; "
            "narrow the bracket", roots)
    return float(roots[0])
