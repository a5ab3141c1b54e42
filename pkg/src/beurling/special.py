"""Complex special functions on and around the critical strip.

Provides:
    log_gamma(s)            principal-branch log Gamma via recurrence shift
                            plus the Stirling asymptotic series
    zeta(s, target_error)   Euler-Maclaurin evaluation with a certified
                            truncation bound
    zeta_ratio(eps, tau)    |zeta(1/2-eps+i tau) / zeta(1/2+eps+i tau)|
                            through the functional-equation chi-factor,
                            never by dividing two zeta values
    inv_zeta_partial(...)   partial sums sum_{a<=n} mu(a) a^{-s}

Everything is a pure function of its inputs and deterministic for fixed
inputs; the Bernoulli table is computed once at import from exact
rationals.  Arbitrary precision is deliberately out of scope here: the
high-precision oracle lives in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import MoebiusTable
from .errors import CapabilityError, DomainError, RejectedInputError

_EPS = 2.0**-52
_LOG_2PI = math.log(2.0 * math.pi)


def _bernoulli_even(count: int) -> list[float]:
    # B_2, B_4, ..., B_{2*count} via the defining recurrence, exact until
    # the single final conversion to float.
    b = [Fraction(0)] * (2 * count + 1)
    b[0] = Fraction(1)
    for m in range(1, 2 * count + 1):
        acc = Fraction(0)
        for j in range(m):
            if b[j]:
                acc += Fraction(math.comb(m + 1, j)) * b[j]
        b[m] = -acc / (m + 1)
    return [float(b[2 * j]) for j in range(1, count + 1)]


# First 30 even-index Bernoulli numbers; plenty for both series below.
_B_EVEN = _bernoulli_even(30)


@dataclass(frozen=True)
class SpecialValue:
    """A computed value together with a claimed absolute error bound.

    abs_error_bound is an upper bound produced by the evaluation routine's
    own truncation/rounding analysis; the test suite checks it against an
    arbitrary-precision oracle.
    """

    value: complex
    abs_error_bound: float


def _require_finite(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise RejectedInputError(f"s must be finite, got {s}")
    return s


# ---------------------------------------------------------------------------
# log Gamma
# ---------------------------------------------------------------------------

_LG_RADIUS = 25.0  # shift until |z| >= this before applying the series
_LG_TERMS = 12


def log_gamma(s: complex) -> SpecialValue:
    """Principal-branch log Gamma(s).

    Uses the recurrence log Gamma(s) = log Gamma(s+k) - sum log(s+i) to
    move the argument to |z| >= 25, then the Stirling series with 12
    Bernoulli terms.  The series truncation error is far below float64
    resolution; the reported bound is dominated by rounding of the
    result, which scales with |log Gamma(s)| (so the *absolute* accuracy
    degrades for |s| ~ 1e6 even though the series itself does not).

    Raises:
        DomainError: At the poles s = 0, -1, -2, ...
    """
    s = _require_finite(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == int(s.real):
        raise DomainError(f"log_gamma pole at s={s.real:g}")

    z = s
    shift = 0.0 + 0.0j
    shifts = 0
    while abs(z) < _LG_RADIUS:
        shift += cmath.log(z)
        z += 1.0
        shifts += 1

    val = (z - 0.5) * cmath.log(z) - z + 0.5 * _LOG_2PI
    zpow = z
    z2 = z * z
    for j in range(1, _LG_TERMS + 1):
        val += _B_EVEN[j - 1] / ((2 * j) * (2 * j - 1) * zpow)
        zpow *= z2
    val -= shift

    # Series remainder: |B_{2J+2}| / ((2J+2)(2J+1)|z|^{2J+1}) * sec factor.
    j = _LG_TERMS
    arg_half = abs(cmath.phase(z)) / 2.0
    sec = 1.0 / max(math.cos(arg_half), 0.1) ** (2 * j + 2)
    trunc = abs(_B_EVEN[j]) / ((2 * j + 2) * (2 * j + 1) * abs(z) ** (2 * j + 1)) * sec
    rounding = 4.0 * _EPS * (abs(val) + abs(shift) + shifts * _EPS)
    return SpecialValue(value=val, abs_error_bound=trunc + rounding)


# ---------------------------------------------------------------------------
# zeta via Euler-Maclaurin
# ---------------------------------------------------------------------------

_ZETA_N_CAP = 4_000_000  # |tau| beyond ~1e6 is out of scope


def _zeta_em_once(s: complex, n_cut: int, depth: int) -> tuple[complex, float]:
    """One Euler-Maclaurin evaluation; returns (value, truncation bound)."""
    k = np.arange(1, n_cut, dtype=np.float64)
    terms = np.exp(-s * np.log(k))
    val = complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))
    val += 0.5 * n_cut ** (-s) + n_cut ** (1.0 - s) / (s - 1.0)
    rising = s  # s(s+1)...(s+2j-2), maintained incrementally
    for j in range(1, depth + 1):
        val += _B_EVEN[j - 1] / math.factorial(2 * j) * rising * n_cut ** (1.0 - s - 2 * j)
        rising *= (s + (2 * j - 1)) * (s + 2 * j)
    # Remainder: |first omitted term| * |(s+2J+1)/(sigma+2J+1)|.
    t_next = abs(
        _B_EVEN[depth] / math.factorial(2 * depth + 2) * rising
    ) * n_cut ** (1.0 - s.real - 2 * (depth + 1))
    bound = t_next * abs((s + 2 * depth + 1) / (s.real + 2 * depth + 1))
    return val, bound


def _zeta_rounding(s: complex, n_cut: int) -> float:
    # Dominant rounding source: the phase tau*log(k) of each power carries
    # ~|tau|*log(n)*eps absolute error.  Worst-case linear accumulation
    # over sum |k^{-sigma}|; deliberately conservative.
    sigma = s.real
    if sigma > 1.0:
        abs_sum = 1.0 + (1.0 - n_cut ** (1.0 - sigma)) / (sigma - 1.0)
    elif sigma == 1.0:
        abs_sum = 1.0 + math.log(n_cut)
    else:
        abs_sum = 1.0 + (n_cut ** (1.0 - sigma) - 1.0) / (1.0 - sigma)
    phase = abs(s.imag) * math.log(n_cut + 1.0) + 10.0
    return _EPS * phase * abs_sum


def zeta(s: complex, target_error: float = 1e-12) -> SpecialValue:
    """Riemann zeta on sigma > -1 by Euler-Maclaurin summation.

    The cutoff N and Bernoulli depth are chosen adaptively so that the
    certified truncation-plus-rounding bound meets ``target_error``;
    the choice is deterministic for fixed inputs.

    Args:
        s: Evaluation point; must satisfy Re(s) > -1 and s != 1.
        target_error: Requested absolute error, at least 1e-14.

    Returns:
        SpecialValue with abs_error_bound <= target_error.

    Raises:
        DomainError: At the pole s = 1.
        RejectedInputError: Outside the supported window or target too tight.
        CapabilityError: If the target cannot be met in float64 at this s;
            the message reports the achievable bound.
    """
    s = _require_finite(s)
    if s == 1.0:
        raise DomainError("zeta pole at s=1")
    if s.real <= -1.0:
        raise RejectedInputError(
            f"sigma={s.real:g} outside supported window sigma > -1"
        )
    if not (target_error > 0.0):
        raise RejectedInputError("target_error must be positive")
    if target_error < 1e-14:
        raise RejectedInputError(
            f"target_error={target_error:g} below the 1e-14 floor"
        )

    n_cut = max(20, int(0.6 * abs(s.imag)) + 8)
    best: tuple[complex, float] | None = None
    while True:
        rounding = _zeta_rounding(s, n_cut)
        # Try increasing Bernoulli depth at this cutoff.
        for depth in (4, 6, 8, 10, 12, 14, 16, 20, 24):
            val, trunc = _zeta_em_once(s, n_cut, depth)
            bound = trunc + rounding
            if best is None or bound < best[1]:
                best = (val, bound)
            if bound <= target_error:
                return SpecialValue(value=val, abs_error_bound=bound)
        if n_cut >= _ZETA_N_CAP:
            break
        n_cut = min(2 * n_cut, _ZETA_N_CAP)
    assert best is not None
    raise CapabilityError(
        f"zeta target_error={target_error:g} unreachable at s={s}; "
        f"achievable bound ~{best[1]:.3g}"
    )


# ---------------------------------------------------------------------------
# functional-equation ratio
# ---------------------------------------------------------------------------


def _log_abs_sin(z: complex) -> float:
    # log|sin(z)|, stable for large |Im z| (sinh overflows past ~710).
    y = abs(z.imag)
    if y > 20.0:
        return y - math.log(2.0)  # relative correction < exp(-40)
    return 0.5 * math.log(math.sinh(y) ** 2 + math.sin(z.real) ** 2)


def zeta_ratio(eps: float, tau: float) -> float:
    """|zeta(1/2-eps+i tau) / zeta(1/2+eps+i tau)| without cancellation.

    Because zeta(1 - s) at s = 1/2-eps+i tau is the conjugate of the
    denominator, the ratio equals the modulus of the functional-equation
    factor chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) exactly, so it is
    computed from that product (in log space) rather than by dividing two
    zeta evaluations.  On the critical line (eps = 0) the two moduli agree
    identically and 1.0 is returned outright.

    Raises:
        RejectedInputError: If eps is outside [0, 1/4).
    """
    eps = float(eps)
    tau = float(tau)
    if not (0.0 <= eps < 0.25):
        raise RejectedInputError(f"eps={eps:g} outside [0, 1/4)")
    if not math.isfinite(tau):
        raise RejectedInputError(f"tau must be finite, got {tau!r}")
    if eps == 0.0:
        return 1.0
    sigma = 0.5 - eps
    s = complex(sigma, tau)
    log_ratio = (
        sigma * math.log(2.0)
        + (sigma - 1.0) * math.log(math.pi)
        + _log_abs_sin(math.pi * s / 2.0)
        + log_gamma(1.0 - s).value.real
    )
    return math.exp(log_ratio)


# ---------------------------------------------------------------------------
# Mobius-weighted Dirichlet partial sums
# ---------------------------------------------------------------------------


def inv_zeta_partial(s: complex, n: int, table: MoebiusTable) -> complex:
    """sum_{a=1}^{n} mu(a) a^{-s}, accumulated with compensated summation.

    Powers are computed as exp(-s log a) with the real log precomputed per
    a, which fixes the evaluation scheme and hence the result bit-for-bit.

    Raises:
        RejectedInputError: If n is outside [1, table.limit].
    """
    s = _require_finite(s)
    n = int(n)
    if n < 1 or n > table.limit:
        raise RejectedInputError(
            f"n={n} out of range [1, {table.limit}] for this table"
        )
    mu = table.mu[1 : n + 1].astype(np.float64)
    a = np.arange(1, n + 1, dtype=np.float64)
    terms = mu * np.exp(-s * np.log(a))
    return complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))
