"""Numeric inner loops.

Every public kernel exists twice: a scalar-loop form compiled with numba
and a vectorized numpy form. ``HAS_NUMBA`` (see ``_jit``) decides which
one the rest of the package binds to. Both forms must agree to rounding.
"""
import math

import numpy as np

from ._jit import HAS_NUMBA, njit

G_SERIES_CUTOFF = 1e-6
BISECT_RTOL = 1e-12
BISECT_MAXITER = 200


# ---------------------------------------------------------------- scalar terms

@njit
def g_factor(k_tot, d):
    x = d * math.sqrt(k_tot)
    if x < G_SERIES_CUTOFF:
        return x / 2.0 - x * x / 6.0
    # 1 - (1 - e^-x)/x, written with expm1 to keep precision for small x
    return 1.0 + math.expm1(-x) / x


@njit
def f_factor(k_tot, g, omega_h, omega_m, lam_ex, theta_k, theta_m):
    delta = theta_k - theta_m
    c = math.cos(delta)
    s = math.sin(delta)
    out = 1.0 - g * c * c
    s2 = s * s
    if s2 != 0.0:
        out += omega_m * g * (1.0 - g) * s2 / (omega_h + omega_m * lam_ex * k_tot)
    return out


@njit
def omega_sq(k, b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, theta_from_geometry):
    """Radicand of the dispersion relation.

    Negative means no propagating wave. When ``wH + wM*lex*ktot < 0`` the
    bare product can turn positive again; that branch is reported negative.
    """
    k_tot = k * k + kn2
    g = g_factor(k_tot, d)
    th_k = theta_k
    if theta_from_geometry:
        th_k = math.atan2(math.sqrt(kn2), k)
    omega_h = gamma * b_eff
    f = f_factor(k_tot, g, omega_h, omega_m, lam_ex, th_k, theta_m)
    a = omega_h + omega_m * lam_ex * k_tot
    if a < 0.0:
        # reversed-field side: both factors can be negative, which is not a wave
        return a * abs(a + omega_m * f)
    return a * (a + omega_m * f)


# ------------------------------------------------------------ numba loop forms

@njit
def _omega_sq_grid_loop(ks, b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, geom):
    out = np.empty(ks.shape[0])
    for i in range(ks.shape[0]):
        out[i] = omega_sq(ks[i], b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, geom)
    return out


@njit
def _bisect(target, lo, hi, h_lo, b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, geom):
    for _ in range(BISECT_MAXITER):
        if hi - lo <= BISECT_RTOL * hi:
            break
        mid = 0.5 * (lo + hi)
        h_mid = omega_sq(mid, b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, geom) - target
        if h_mid == 0.0:
            return mid
        if (h_mid > 0.0) == (h_lo > 0.0):
            lo = mid
            h_lo = h_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@njit
def _scan_roots_loop(target, k_min, k_max, n_grid, b_eff, gamma, omega_m, lam_ex, d, kn2,
                     theta_k, theta_m, geom):
    ks = np.exp(np.linspace(math.log(k_min), math.log(k_max), n_grid))
    hs = _omega_sq_grid_loop(ks, b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, geom) - target
    roots = np.empty(n_grid)
    n = 0
    for i in range(n_grid - 1):
        if hs[i] == 0.0:
            roots[n] = ks[i]
            n += 1
        elif hs[i] * hs[i + 1] < 0.0:
            roots[n] = _bisect(target, ks[i], ks[i + 1], hs[i], b_eff, gamma, omega_m, lam_ex,
                               d, kn2, theta_k, theta_m, geom)
            n += 1
    if hs[n_grid - 1] == 0.0:
        roots[n] = ks[n_grid - 1]
        n += 1
    return roots[:n]


@njit
def _weighted_sums_loop(weights, threshold):
    n = weights.shape[0]
    out = np.empty(1 << n, dtype=np.int64)
    for mask in range(1 << n):
        acc = -threshold
        for i in range(n):
            # bit for input 0 is the most significant: canonical truth-table order
            if (mask >> (n - 1 - i)) & 1:
                acc += weights[i]
        out[mask] = acc
    return out


# ---------------------------------------------------------------- numpy forms

def _omega_sq_grid_numpy(ks, b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, geom):
    ks = np.asarray(ks, dtype=np.float64)
    k_tot = ks * ks + kn2
    x = d * np.sqrt(k_tot)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(x < G_SERIES_CUTOFF, x / 2.0 - x * x / 6.0, 1.0 + np.expm1(-x) / x)
    th_k = np.arctan2(np.sqrt(kn2), ks) if geom else np.full_like(ks, theta_k)
    omega_h = gamma * b_eff
    delta = th_k - theta_m
    s2 = np.sin(delta) ** 2
    f = 1.0 - g * np.cos(delta) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        extra = omega_m * g * (1.0 - g) * s2 / (omega_h + omega_m * lam_ex * k_tot)
    f = f + np.where(s2 != 0.0, extra, 0.0)
    a = omega_h + omega_m * lam_ex * k_tot
    return np.where(a < 0.0, a * np.abs(a + omega_m * f), a * (a + omega_m * f))


def _scan_roots_numpy(target, k_min, k_max, n_grid, b_eff, gamma, omega_m, lam_ex, d, kn2,
                      theta_k, theta_m, geom):
    args = (b_eff, gamma, omega_m, lam_ex, d, kn2, theta_k, theta_m, geom)
    ks = np.exp(np.linspace(math.log(k_min), math.log(k_max), n_grid))
    hs = _omega_sq_grid_numpy(ks, *args) - target
    exact = np.flatnonzero(hs == 0.0)
    crossing = np.flatnonzero(hs[:-1] * hs[1:] < 0.0)
    roots = [float(ks[i]) for i in exact]
    for i in crossing:
        roots.append(_bisect(target, ks[i], ks[i + 1], hs[i], *args))
    return np.sort(np.asarray(roots, dtype=np.float64))


def _weighted_sums_numpy(weights, threshold):
    weights = np.asarray(weights, dtype=np.int64)
    n = weights.shape[0]
    masks = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (masks[:, None] >> shifts[None, :]) & 1
    return bits @ weights - threshold


if HAS_NUMBA:
    omega_sq_grid = _omega_sq_grid_loop
    scan_roots = _scan_roots_loop
    weighted_sums = _weighted_sums_loop
else:
    omega_sq_grid = _omega_sq_grid_numpy
    scan_roots = _scan_roots_numpy
    weighted_sums = _weighted_sums_numpy

BACKEND = "numba" if HAS_NUMBA else "numpy"
