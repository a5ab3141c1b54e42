"""Pointwise evaluation of the approximant families and their breakpoints.

The four families, all built from the dilated fractional part
rho_a(x) = frac(1/(a x)):

    natural             F_n  = sum_{a<=n} mu(a) rho_a
    selberg             S_n  = sum_{a<=n} mu(a) (1 - log a / log n) rho_a
    regularized         f_{eps,n} = sum_{a<=n} mu(a) a^{-eps} rho_a
    regularized_limit   f_eps = 1/(x zeta(1+eps))
                               - sum_{a<=1/x} mu(a) a^{-eps} floor(1/(a x))

For the truncated families the canonical evaluation path is the split
form  (1/x) sum_a c_a/a - sum_{a<=1/x} c_a floor(1/(a x)),  which costs
O(min(n, 1/x)) instead of O(n); the naive term-by-term sum is kept only
as a test oracle.  All floors frac/floor decisions are made exactly on
the dyadic rational actually stored in the float arguments, so values at
breakpoints are exact and reproducible.

Every discontinuity of an approximant sits at x = 1/(a k); the
breakpoints() enumeration deduplicates those points by exact integer
comparison of the products a*k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .arith import MoebiusTable
from .errors import CapabilityError, RejectedInputError
from .special import SpecialValue, zeta

DEFAULT_BREAKPOINT_CAP = 10_000_000

ZetaFn = Callable[[complex, float], SpecialValue]


class ApproximantKind(str, Enum):
    NATURAL = "natural"
    SELBERG = "selberg"
    REGULARIZED = "regularized"
    REGULARIZED_LIMIT = "regularized_limit"


@dataclass(frozen=True)
class ApproximantSpec:
    """Which approximant, at which truncation order n and damping eps.

    Invariants (checked at construction):
      * natural / selberg: eps == 0 and n >= 1 (selberg additionally needs
        n >= 2 at evaluation time, since log n must be positive);
      * regularized: eps > 0 and n >= 1;
      * regularized_limit: eps > 0; n is ignored.
    """

    kind: ApproximantKind
    n: int = 1
    eps: float = 0.0

    def __post_init__(self) -> None:
        kind = ApproximantKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "eps", float(self.eps))
        if kind in (ApproximantKind.NATURAL, ApproximantKind.SELBERG):
            if self.eps != 0.0:
                raise RejectedInputError(f"{kind.value} requires eps=0, got {self.eps}")
            if self.n < 1:
                raise RejectedInputError(f"{kind.value} requires n>=1, got {self.n}")
        elif kind is ApproximantKind.REGULARIZED:
            if self.eps <= 0.0:
                raise RejectedInputError(f"regularized requires eps>0, got {self.eps}")
            if self.n < 1:
                raise RejectedInputError(f"regularized requires n>=1, got {self.n}")
        else:
            if self.eps <= 0.0:
                raise RejectedInputError(
                    f"regularized_limit requires eps>0, got {self.eps}"
                )

    @property
    def truncated(self) -> bool:
        return self.kind is not ApproximantKind.REGULARIZED_LIMIT


@dataclass(frozen=True)
class Breakpoints:
    """Sorted, deduplicated discontinuity locations 1/(a k) in [x_min, 1]."""

    x_min: float
    points: np.ndarray  # ascending float64


def chi(x: float) -> float:
    """Indicator of (0, 1].  chi(1) = 1 by convention; no L2 quantity
    depends on that single point."""
    return 1.0 if 0.0 < x <= 1.0 else 0.0


# ---------------------------------------------------------------------------
# exact dyadic floor/frac of 1/(a x)
# ---------------------------------------------------------------------------


def _recip_floor_frac(a: float, x: float) -> tuple[int, float]:
    """floor and frac of 1/(a*x), exact for the dyadic rationals a and x.

    Both arguments are IEEE doubles and hence dyadic rationals p/2^e, so
    1/(a x) is an exact integer ratio; floor is integer division and frac
    one correctly-rounded float division.  This removes any off-by-one at
    points where 1/(a x) is an integer -- exactly where quadrature panels
    have their walls.
    """
    na, da = float(a).as_integer_ratio()
    nx, dx = float(x).as_integer_ratio()
    num = da * dx          # 1/(a x) = num / den
    den = na * nx
    m, r = divmod(num, den)
    return int(m), r / den


def rho_a(a: float, x: float) -> float:
    """Dilated fractional part rho_a(x) = frac(1/(a x)), in [0, 1).

    Exactly 0 whenever 1/(a x) is an integer (for the dyadic values the
    floats actually represent).
    """
    a = float(a)
    x = float(x)
    if not (a >= 1.0):
        raise RejectedInputError(f"a must be >= 1, got {a}")
    if not (x > 0.0) or not math.isfinite(x):
        raise RejectedInputError(f"x must be positive and finite, got {x}")
    return _recip_floor_frac(a, x)[1]


# ---------------------------------------------------------------------------
# coefficient vectors (shared with the quadrature engine)
# ---------------------------------------------------------------------------


def dilation_coefficients(
    spec: ApproximantSpec, table: MoebiusTable, a_max: int | None = None
) -> np.ndarray:
    """Coefficient c_a of rho_a for each active dilation, indexed 0..A.

    For the truncated families A = spec.n.  For regularized_limit the
    active set is unbounded, so the caller must pass ``a_max`` (typically
    floor(1/x) or floor(1/x_min)); the returned c_a = mu(a) a^{-eps} are
    the floor-sum weights of the closed form.
    """
    if spec.truncated:
        a_top = spec.n
    else:
        if a_max is None:
            raise RejectedInputError("regularized_limit needs an explicit a_max")
        a_top = int(a_max)
    if a_top > table.limit:
        raise RejectedInputError(
            f"table.limit={table.limit} too small; need mu up to {a_top}"
        )
    mu = table.mu[: a_top + 1].astype(np.float64)
    a = np.arange(a_top + 1, dtype=np.float64)
    a[0] = 1.0  # avoid 0**negative; index 0 is zeroed below
    if spec.kind is ApproximantKind.NATURAL:
        coeff = mu
    elif spec.kind is ApproximantKind.SELBERG:
        if spec.n < 2:
            raise RejectedInputError(f"selberg requires n >= 2, got {spec.n}")
        coeff = mu * (1.0 - np.log(a) / math.log(spec.n))
    else:
        coeff = mu * a ** (-spec.eps)
    coeff[0] = 0.0
    return coeff


def one_over_x_coefficient(
    spec: ApproximantSpec,
    table: MoebiusTable,
    zeta_fn: ZetaFn = zeta,
) -> float:
    """The constant c with f(x) = c/x on (1, infinity).

    Every family is exactly c/x beyond 1 because all floors vanish there:
    c = sum_a c_a / a for the truncated families and c = 1/zeta(1+eps)
    for the limit family.
    """
    if spec.truncated:
        coeff = dilation_coefficients(spec, table)
        a = np.arange(len(coeff), dtype=np.float64)
        a[0] = 1.0
        return math.fsum((coeff / a).tolist())
    return float((1.0 / zeta_fn(complex(1.0 + spec.eps), 1e-13).value).real)


# ---------------------------------------------------------------------------
# pointwise evaluators
# ---------------------------------------------------------------------------


def _check_x(x: float) -> float:
    x = float(x)
    if not (x > 0.0) or not math.isfinite(x):
        raise RejectedInputError(f"x must be positive and finite, got {x}")
    return x


def _split_eval(coeff: np.ndarray, x: float) -> float:
    """(1/x) sum_a c_a/a - sum_{a <= 1/x} c_a * floor(1/(a x))."""
    a_top = len(coeff) - 1
    a = np.arange(len(coeff), dtype=np.float64)
    a[0] = 1.0
    lead = math.fsum((coeff / a).tolist()) / x
    # Terms with a > 1/x have floor 0 and drop out.
    floor_terms = []
    a_floor_top = min(a_top, int(_recip_floor_frac(1.0, x)[0]))
    for ai in range(1, a_floor_top + 1):
        ca = coeff[ai]
        if ca != 0.0:
            m, _ = _recip_floor_frac(float(ai), x)
            if m:
                floor_terms.append(ca * m)
    return lead - math.fsum(floor_terms)


def natural_F(n: int, x: float, table: MoebiusTable) -> float:
    """F_n(x) = sum_{a<=n} mu(a) rho_a(x).

    Raises:
        RejectedInputError: If n is outside [1, table.limit].
    """
    x = _check_x(x)
    spec = ApproximantSpec(ApproximantKind.NATURAL, n=n)
    return _split_eval(dilation_coefficients(spec, table), x)


def selberg_S(n: int, x: float, table: MoebiusTable) -> float:
    """S_n(x) = sum_{a<=n} mu(a) (1 - log a/log n) rho_a(x), n >= 2.

    The a = n term carries weight zero.
    """
    x = _check_x(x)
    if int(n) < 2:
        raise RejectedInputError(f"selberg_S requires n >= 2, got {n}")
    spec = ApproximantSpec(ApproximantKind.SELBERG, n=n)
    return _split_eval(dilation_coefficients(spec, table), x)


def f_eps_n(eps: float, n: int, x: float, table: MoebiusTable) -> float:
    """f_{eps,n}(x) = sum_{a<=n} mu(a) a^{-eps} rho_a(x) via the split form.

    For x > 1 the floor sum is empty and the value is exactly
    (1/x) sum_{a<=n} mu(a) a^{-1-eps}.
    """
    x = _check_x(x)
    spec = ApproximantSpec(ApproximantKind.REGULARIZED, n=n, eps=eps)
    return _split_eval(dilation_coefficients(spec, table), x)


def f_eps_naive(eps: float, n: int, x: float, table: MoebiusTable) -> float:
    """Term-by-term oracle sum_{a<=n} mu(a) a^{-eps} rho_a(x).

    O(n) per call; retained to validate the split form, not as a
    production path.
    """
    x = _check_x(x)
    spec = ApproximantSpec(
        ApproximantKind.REGULARIZED if eps > 0 else ApproximantKind.NATURAL,
        n=n,
        eps=eps,
    )
    coeff = dilation_coefficients(spec, table)
    terms = [
        coeff[a] * rho_a(float(a), x)
        for a in range(1, len(coeff))
        if coeff[a] != 0.0
    ]
    return math.fsum(terms)


def f_eps(
    eps: float,
    x: float,
    table: MoebiusTable,
    zeta_fn: ZetaFn = zeta,
) -> float:
    """The n -> infinity limit f_eps(x) = 1/(x zeta(1+eps)) - floor sum.

    Needs mu up to floor(1/x); smaller tables are rejected with the
    required limit named.

    Raises:
        RejectedInputError: If eps <= 0 or the table is too small.
    """
    x = _check_x(x)
    eps = float(eps)
    if eps <= 0.0:
        raise RejectedInputError(f"f_eps requires eps > 0, got {eps}")
    a_top = int(_recip_floor_frac(1.0, x)[0])
    if a_top > table.limit:
        raise RejectedInputError(
            f"table.limit={table.limit} too small for x={x:g}; need mu up to {a_top}"
        )
    lead = (1.0 / zeta_fn(complex(1.0 + eps), 1e-13).value).real / x
    floor_terms = []
    for a in range(1, a_top + 1):
        mu_a = int(table.mu[a])
        if mu_a:
            m, _ = _recip_floor_frac(float(a), x)
            if m:
                floor_terms.append(mu_a * a ** (-eps) * m)
    return lead - math.fsum(floor_terms)


# ---------------------------------------------------------------------------
# breakpoints
# ---------------------------------------------------------------------------

_MARK_LIMIT = 2**28  # largest candidate grid we will materialize


def breakpoints(
    spec: ApproximantSpec,
    x_min: float,
    table: MoebiusTable,
    *,
    cap: int = DEFAULT_BREAKPOINT_CAP,
) -> Breakpoints:
    """All candidate discontinuities 1/(a k) in [x_min, 1], ascending.

    a ranges over the active dilations (a <= n for the truncated
    families, a <= floor(1/x_min) for the limit family) and k >= 1.
    Deduplication compares the integer products a*k exactly, so
    coincidences like 1/(2*3) = 1/(3*2) collapse before any rounding.

    Raises:
        CapabilityError: If the deduplicated count exceeds ``cap`` (the
            count, or a pair-enumeration upper bound when the candidate
            grid itself is too large to mark, is reported).
    """
    x_min = float(x_min)
    if not (0.0 < x_min <= 1.0):
        raise RejectedInputError(f"x_min must lie in (0, 1], got {x_min}")
    m_top, _ = _recip_floor_frac(1.0, x_min)  # largest integer m with 1/m >= x_min
    if spec.truncated:
        a_top = spec.n
    else:
        a_top = m_top
        if a_top > table.limit:
            raise RejectedInputError(
                f"table.limit={table.limit} too small; need limit >= {a_top}"
            )
    if m_top > _MARK_LIMIT:
        est = sum(m_top // a for a in range(1, min(a_top, m_top) + 1))
        raise CapabilityError(
            f"breakpoint enumeration needs a candidate grid of {m_top} integers; "
            f"at most ~{est} points, above what this build will materialize"
        )
    marked = np.zeros(m_top + 1, dtype=bool)
    for a in range(1, min(a_top, m_top) + 1):
        marked[a::a] = True
    ms = np.flatnonzero(marked)  # ascending integers a*k
    count = len(ms)
    if count > cap:
        raise CapabilityError(f"breakpoint count {count} exceeds cap {cap}")
    points = 1.0 / ms[::-1].astype(np.float64)  # ascending x
    points.setflags(write=False)
    return Breakpoints(x_min=x_min, points=points)
