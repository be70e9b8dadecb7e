"""Independent reference implementations used only by the tests.

Written straight from the closed-form expressions in arbitrary precision
(mpmath) or by brute-force enumeration; none of them import the package's
numeric kernels.
"""
import itertools

import mpmath as mp

mp.mp.dps = 50

MS = mp.mpf("1.36e6")
AEX = mp.mpf("18.6e-12")
GAMMA = mp.mpf("1.76e11")
MU0 = 4 * mp.pi * mp.mpf("1e-7")
THICKNESS = mp.mpf("9e-9")


def g_mp(k_tot, d):
    x = mp.mpf(d) * mp.sqrt(mp.mpf(k_tot))
    return 1 - (1 - mp.exp(-x)) / x


def f_mp(k_tot, g, omega_h, omega_m, theta_k, theta_m, lam):
    k_tot, g, omega_h, omega_m, lam = map(mp.mpf, (k_tot, g, omega_h, omega_m, lam))
    delta = mp.mpf(theta_k) - mp.mpf(theta_m)
    first = 1 - g * mp.cos(delta) ** 2
    second = omega_m * g * (1 - g) * mp.sin(delta) ** 2 / (omega_h + omega_m * lam * k_tot)
    return first + second


def omega_mp(k, b_eff, width, ms=MS, aex=AEX, gamma=GAMMA, d=THICKNESS, n=1, theta_k=0, theta_m=0):
    k, b_eff, width = mp.mpf(k), mp.mpf(b_eff), mp.mpf(width)
    lam = 2 * aex / (MU0 * ms ** 2)
    omega_m = gamma * MU0 * ms
    omega_h = gamma * b_eff
    k_tot = k ** 2 + (n * mp.pi / width) ** 2
    g = g_mp(k_tot, d)
    f = f_mp(k_tot, g, omega_h, omega_m, theta_k, theta_m, lam)
    exch = omega_h + omega_m * lam * k_tot
    return mp.sqrt(exch * (exch + omega_m * f))


def threshold_brute(weights, threshold, bits):
    total = 0
    for w, x in zip(weights, bits):
        if x:
            total += w
    return int(total - threshold >= 0)


def all_vectors(n):
    return list(itertools.product((0, 1), repeat=n))
