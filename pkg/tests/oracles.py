"""Independent oracles used to pin expected values.

Everything here deliberately avoids the library's own evaluation paths:

* zeta via Borwein's alternating (eta-series) scheme in mpmath arbitrary
  precision -- not Euler-Maclaurin, not mpmath.zeta;
* mu via per-integer trial division;
* rho_a at rational x via fractions.Fraction;
* L2 integrals via breakpoint-aware dense trapezoid sums on naive
  pointwise evaluations -- no Gauss nodes, no marching panel constants;
* the rho_1 norm via the closed per-panel integrals of t^2/(k+t)^2.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp
import numpy as np


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------


def mu_trial_division(n: int) -> int:
    """Mobius function by trial factorization."""
    if n == 1:
        return 1
    sign = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            sign = -sign
        d += 1
    if n > 1:
        sign = -sign
    return sign


def mertens_direct(limit: int) -> list[int]:
    """M(1..limit) by direct summation of trial-division mu."""
    out = []
    acc = 0
    for n in range(1, limit + 1):
        acc += mu_trial_division(n)
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# zeta / log-gamma references
# ---------------------------------------------------------------------------


def zeta_eta_series(s: complex, dps: int = 50) -> complex:
    """zeta(s) from the eta function by Borwein's accelerated alternating
    series, carried out in mpmath arbitrary precision."""
    with mp.workdps(dps):
        sm = mp.mpc(s)
        n = int(80 + 3 * dps + 1.6 * abs(float(sm.imag)))
        d = [mp.mpf(0)] * (n + 1)
        acc = mp.mpf(0)
        for i in range(n + 1):
            acc += mp.factorial(n + i - 1) * mp.mpf(4) ** i / (
                mp.factorial(n - i) * mp.factorial(2 * i)
            )
            d[i] = n * acc
        alt = mp.mpf(0)
        for k in range(n):
            alt += (-1) ** k * (d[k] - d[n]) / mp.power(k + 1, sm)
        eta = -alt / d[n]
        return complex(eta / (1 - mp.power(2, 1 - sm)))


def log_gamma_reference(s: complex, dps: int = 50) -> complex:
    with mp.workdps(dps):
        return complex(mp.loggamma(complex(s)))


def zeta_reference(s: complex, dps: int = 40) -> complex:
    """mpmath's own zeta; used only to cross-validate the eta oracle."""
    with mp.workdps(dps):
        return complex(mp.zeta(complex(s)))


# ---------------------------------------------------------------------------
# pointwise approximants at rational x
# ---------------------------------------------------------------------------


def rho_a_rational(a: int, x: Fraction) -> Fraction:
    """frac(1/(a x)) in exact rational arithmetic."""
    y = Fraction(1, 1) / (a * x)
    return y - Fraction(math.floor(y))


def dilation_sum_rational(coeffs: dict[int, Fraction], x: Fraction) -> Fraction:
    return sum((c * rho_a_rational(a, x) for a, c in coeffs.items()), Fraction(0))


# ---------------------------------------------------------------------------
# brute-force L2 integrals
# ---------------------------------------------------------------------------


def naive_dilation_value(coeff: np.ndarray, x: np.ndarray, kappa: float = 0.0) -> np.ndarray:
    """sum_a coeff[a] frac(1/(a x)) + kappa chi(x), vectorized over x."""
    total = np.zeros_like(x)
    for a in range(1, len(coeff)):
        c = coeff[a]
        if c != 0.0:
            y = 1.0 / (a * x)
            total += c * (y - np.floor(y))
    if kappa:
        total = total + kappa * (x <= 1.0)
    return total


def trapezoid_norm_sq(
    coeff: np.ndarray,
    kappa: float,
    x_min: float,
    density: float = 1e6,
    min_pts: int = 65,
) -> float:
    """integral over (x_min, inf) of (sum_a c_a rho_a + kappa chi)^2 dx.

    Panels split at every breakpoint 1/(a k) of any active dilation, then a
    uniform trapezoid rule inside each panel (so only smooth curvature
    error remains).  The (1, inf) piece is q^2 with q = sum c_a/a, exact
    because every floor vanishes there.
    """
    a_top = len(coeff) - 1
    m_top = int(math.floor(1.0 / x_min))
    marked = np.zeros(m_top + 2, dtype=bool)
    for a in range(1, min(a_top, m_top) + 1):
        if coeff[a] != 0.0:
            marked[a::a] = True
    ms = np.flatnonzero(marked)
    walls = sorted(set([x_min, 1.0] + [1.0 / m for m in ms if 1.0 / m > x_min]))
    total = 0.0
    for lo, hi in zip(walls, walls[1:]):
        pts = max(min_pts, int(density * (hi - lo)) + 1)
        xs = np.linspace(lo, hi, pts)
        # The walls are the discontinuities; sample the endpoint values a
        # hair inside the panel so the one-sided limits are used.
        nudge = 1e-9 * (hi - lo)
        xe = xs.copy()
        xe[0] += nudge
        xe[-1] -= nudge
        vals = naive_dilation_value(coeff, xe, kappa) ** 2
        total += float(np.trapezoid(vals, xs))
    q = math.fsum(coeff[a] / a for a in range(1, len(coeff)))
    return total + q * q  # integral_1^inf (q/x)^2 dx = q^2


def rho1_norm_sq_closed(x_min: float) -> float:
    """integral over (x_min, inf) of rho_1^2, from closed per-panel pieces.

    Substituting u = 1/x maps the integral to sum over integer panels of
    integral_0^1 t^2/(k+t)^2 dt, whose antiderivative in u is
    u - 2k log u - k^2/u; the full panel k contributes
    1 - 2k log(1 + 1/k) + k/(k+1).
    """
    u_max = 1.0 / x_min
    k_full = int(math.floor(u_max)) - 1  # panels [k, k+1] fully inside
    total = 1.0  # k = 0 panel: integrand is 1 on (0, 1)  (the x > 1 region)
    if k_full >= 1:
        k = np.arange(1, k_full + 1, dtype=np.float64)
        pieces = 1.0 - 2.0 * k * np.log1p(1.0 / k) + k / (k + 1.0)
        total += math.fsum(pieces.tolist())
    k = float(k_full + 1)
    if u_max > k:  # partial panel [k, u_max]
        anti = lambda u: u - 2.0 * k * math.log(u) - k * k / u
        total += anti(u_max) - anti(k)
    return total
