"""L2(0, infinity) norms, inner products, and distances to -chi.

Strategy: between consecutive breakpoints every approximant is exactly
c1/x + c0, so the square (or product) to be integrated is smooth and
low-order there.  The engine therefore

  * places panel walls at every integer u = 1/x up to 1/x_min -- a
    superset of all breakpoints 1/(a k) -- and marches the panel
    constants with a divisor-sum jump sieve,
  * applies fixed-order Gauss-Legendre on each panel (default 16 nodes),
  * covers [1, X] with geometric panels where the integrand is exactly
    (c/x)^2, and closes with the analytic tail integral c^2/X,
  * reports the omitted head integral over (0, x_min) as an explicit
    bound instead of silently ignoring it.

Per-panel contributions are reduced with exact compensated summation
(math.fsum), so results are reproducible bit-for-bit run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .approximants import (
    ApproximantKind,
    ApproximantSpec,
    dilation_coefficients,
    one_over_x_coefficient,
)
from .arith import MoebiusTable
from .errors import CapabilityError, RejectedInputError
from .special import SpecialValue, zeta

ZetaFn = Callable[[complex, float], SpecialValue]

_CHUNK = 250_000  # panels per vectorized block; fixed, so reductions are stable


@dataclass(frozen=True)
class QuadratureConfig:
    """Panel-quadrature parameters.

    Attributes:
        x_min: Truncation of the singular end; panels cover [x_min, 1].
        gauss_order: Gauss-Legendre nodes per panel.
        tail_mode: 'exact_one_over_x' trusts f = c/x beyond x=1 and cuts
            to the analytic tail at X=10; 'numeric' integrates panels out
            to X=1e6 before adding the (then tiny) analytic remainder.
        panel_cap: Hard limit on the number of panels.
    """

    x_min: float = 1e-6
    gauss_order: int = 16
    tail_mode: str = "exact_one_over_x"
    panel_cap: int = 10_000_000

    def __post_init__(self) -> None:
        if not (0.0 < self.x_min < 1.0):
            raise RejectedInputError(f"x_min must lie in (0,1), got {self.x_min}")
        if self.gauss_order < 2:
            raise RejectedInputError(f"gauss_order must be >= 2, got {self.gauss_order}")
        if self.tail_mode not in ("exact_one_over_x", "numeric"):
            raise RejectedInputError(f"unknown tail_mode {self.tail_mode!r}")

    @property
    def tail_cut(self) -> float:
        return 10.0 if self.tail_mode == "exact_one_over_x" else 1e6


@dataclass(frozen=True)
class DistanceReport:
    """An H-norm distance with its quadrature provenance.

    distance**2 = (sum of panel integrals) + tail_contribution, up to
    accumulation precision; the omitted (0, x_min) piece is *not* in the
    distance but bounded by head_truncation_bound.
    """

    spec: ApproximantSpec
    distance: float
    tail_contribution: float
    head_truncation_bound: float
    panel_count: int
    error_estimate: float


# ---------------------------------------------------------------------------
# piecewise representation and the panel engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _PiecewiseForm:
    """g(x) = q/x + kappa*chi(x) - (floor-sum constant per panel)."""

    q: float
    jump_coeffs: np.ndarray  # c_a indexed 0..A; floor-sum jumps at u = a*k
    kappa: float

    @property
    def abs_coeff_sum(self) -> float:
        return float(np.abs(self.jump_coeffs).sum()) + abs(self.kappa)


def _divisor_jumps(coeff: np.ndarray, m_lim: int) -> np.ndarray:
    """J[m] = sum_{a | m} coeff[a] for m = 1..m_lim.

    Two regimes keep the slice-call count at O(sqrt(m_lim)) while the
    total element work stays at sum_a m_lim/a.
    """
    a_top = min(len(coeff) - 1, m_lim)
    jumps = np.zeros(m_lim + 1)
    a0 = min(a_top, max(1, math.isqrt(m_lim)))
    for a in range(1, a0 + 1):
        ca = coeff[a]
        if ca != 0.0:
            jumps[a::a] += ca
    k_max = m_lim // (a0 + 1) if a_top > a0 else 0
    for k in range(1, k_max + 1):
        hi = min(a_top, m_lim // k)
        if hi > a0:
            aa = np.arange(a0 + 1, hi + 1)
            cv = coeff[aa]
            nz = cv != 0.0
            jumps[aa[nz] * k] += cv[nz]  # distinct a -> distinct index at fixed k
    return jumps


def _unit_panels(x_min: float, cap: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Panel walls on [x_min, 1]: x in (1/(m+1), 1/m] for m = 1..floor(1/x_min).

    Returns (xa, xb, m) with the last panel clipped at x_min.
    """
    u_max = 1.0 / x_min
    m_lim = int(u_max)
    if m_lim > cap:
        raise CapabilityError(
            f"{m_lim} panels needed for x_min={x_min:g}, cap is {cap}"
        )
    m = np.arange(1, m_lim + 1)
    xa = np.where(m < m_lim, 1.0 / (m + 1.0), x_min)
    xb = 1.0 / m
    keep = xb > xa
    return xa[keep], xb[keep], m[keep]


def _geometric_panels(x_from: float, x_to: float, per_decade: int = 16) -> tuple[np.ndarray, np.ndarray]:
    n = max(1, int(math.ceil(per_decade * math.log10(x_to / x_from))))
    edges = np.exp(np.linspace(math.log(x_from), math.log(x_to), n + 1))
    return edges[:-1], edges[1:]


_leggauss_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _leggauss_cache:
        _leggauss_cache[order] = leggauss(order)
    return _leggauss_cache[order]


def _inner(
    f: _PiecewiseForm,
    g: _PiecewiseForm,
    config: QuadratureConfig,
    weight: float = 0.0,
) -> tuple[float, float, int, float]:
    """integral over (x_min, inf) of x^{-2 weight} f(x) g(x) dx.

    Returns (value, error_estimate, panel_count, tail_contribution).
    """
    if not (0.0 <= weight < 0.5):
        raise RejectedInputError(f"weight must lie in [0, 1/2), got {weight}")
    xa, xb, m = _unit_panels(config.x_min, config.panel_cap)
    m_lim = int(1.0 / config.x_min)
    pf = np.cumsum(_divisor_jumps(f.jump_coeffs, m_lim))
    pg = pf if g is f else np.cumsum(_divisor_jumps(g.jump_coeffs, m_lim))
    f_const = pf[m]
    g_const = f_const if g is f else pg[m]

    nodes_hi, w_hi = _gl(config.gauss_order)
    nodes_lo, w_lo = _gl(max(2, config.gauss_order // 2))
    weighted = weight != 0.0

    def block(xa_b, xb_b, fc_b, gc_b, kf, kg):
        a_ = xa_b[:, None]
        b_ = xb_b[:, None]
        mid = 0.5 * (a_ + b_)
        half = 0.5 * (b_ - a_)
        out = []
        for nodes, w in ((nodes_hi, w_hi), (nodes_lo, w_lo)):
            x = mid + half * nodes[None, :]
            vf = f.q / x + (kf - fc_b[:, None])
            vg = vf if (g is f and kg == kf) else g.q / x + (kg - gc_b[:, None])
            integrand = vf * vg
            if weighted:
                integrand = integrand * x ** (-2.0 * weight)
            out.append((integrand @ w) * half[:, 0])
        return out

    contribs: list[float] = []
    diffs: list[float] = []
    abs_contribs: list[float] = []
    n_panels = len(xa)
    for i0 in range(0, n_panels, _CHUNK):
        sl = slice(i0, min(i0 + _CHUNK, n_panels))
        hi, lo = block(xa[sl], xb[sl], f_const[sl], g_const[sl], f.kappa, g.kappa)
        contribs.append(float(hi.sum()))
        diffs.append(float(np.abs(hi - lo).sum()))
        abs_contribs.append(float(np.abs(hi).sum()))

    # [1, X]: all floors vanish and chi = 0, so both factors are exactly q/x.
    xa_t, xb_t = _geometric_panels(1.0, config.tail_cut)
    zero = np.zeros(len(xa_t))
    hi, lo = block(xa_t, xb_t, zero, zero, 0.0, 0.0)
    contribs.append(float(hi.sum()))
    diffs.append(float(np.abs(hi - lo).sum()))
    abs_contribs.append(float(np.abs(hi).sum()))
    n_panels += len(xa_t)

    tail = f.q * g.q * config.tail_cut ** (-1.0 - 2.0 * weight) / (1.0 + 2.0 * weight)
    value = math.fsum(contribs) + tail
    err = math.fsum(diffs) + 8.0 * 2.0**-52 * (math.fsum(abs_contribs) + abs(tail))
    return value, err, n_panels, tail


def _head_bound(form: _PiecewiseForm, config: QuadratureConfig, weight: float = 0.0) -> float:
    # |f(x)| <= kappa + sum|c_a| pointwise for the truncated families; for
    # the limit family the same formula is applied to the active set at the
    # cut (heuristic there: dilations beyond 1/x_min keep activating).
    bound_sq = form.abs_coeff_sum ** 2
    if weight == 0.0:
        return config.x_min * bound_sq
    return bound_sq * config.x_min ** (1.0 - 2.0 * weight) / (1.0 - 2.0 * weight)


def build_form(
    spec: ApproximantSpec,
    shift_by_chi: bool,
    config: QuadratureConfig,
    table: MoebiusTable,
    zeta_fn: ZetaFn = zeta,
) -> _PiecewiseForm:
    """Piecewise representation of f (+ chi if shifted) on [x_min, inf)."""
    if spec.truncated:
        coeff = dilation_coefficients(spec, table)
        q = one_over_x_coefficient(spec, table, zeta_fn)
    else:
        a_max = int(1.0 / config.x_min)
        coeff = dilation_coefficients(spec, table, a_max=a_max)
        q = one_over_x_coefficient(spec, table, zeta_fn)
    return _PiecewiseForm(q=q, jump_coeffs=coeff, kappa=1.0 if shift_by_chi else 0.0)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def panel_integrate(
    spec: ApproximantSpec,
    shift_by_chi: bool,
    config: QuadratureConfig = QuadratureConfig(),
    table: MoebiusTable | None = None,
    zeta_fn: ZetaFn = zeta,
) -> DistanceReport:
    """H-norm of f (or f + chi) over [x_min, infinity).

    With shift_by_chi=True this is the distance of the approximant to
    -chi, the central quantity of the whole experiment suite.
    """
    if table is None:
        raise RejectedInputError("panel_integrate needs a MoebiusTable")
    form = build_form(spec, shift_by_chi, config, table, zeta_fn)
    value, err, n_panels, tail = _inner(form, form, config)
    value = max(value, 0.0)
    dist = math.sqrt(value)
    # d(sqrt(v)) = dv / (2 sqrt(v)); guard the zero-distance corner.
    err_dist = err / (2.0 * dist) if dist > 0 else math.sqrt(err)
    return DistanceReport(
        spec=spec,
        distance=dist,
        tail_contribution=tail,
        head_truncation_bound=_head_bound(form, config),
        panel_count=n_panels,
        error_estimate=err_dist,
    )


def coefficient_norm(
    coeff: np.ndarray,
    config: QuadratureConfig = QuadratureConfig(),
    *,
    kappa: float = 0.0,
    weight: float = 0.0,
    q: float | None = None,
) -> tuple[float, float, int]:
    """Norm of an arbitrary dilation sum sum_a coeff[a] rho_a (+ kappa chi).

    The weighted variant integrates x^{-2 weight} times the square.
    Returns (norm, error_estimate, panel_count).  This is the plumbing
    under the Cauchy-increment and Plancherel experiments.
    """
    coeff = np.asarray(coeff, dtype=np.float64)
    if q is None:
        a = np.arange(len(coeff), dtype=np.float64)
        a[0] = 1.0
        q = math.fsum((coeff / a).tolist())
    form = _PiecewiseForm(q=q, jump_coeffs=coeff, kappa=kappa)
    value, err, n_panels, _ = _inner(form, form, config, weight=weight)
    value = max(value, 0.0)
    norm = math.sqrt(value)
    err_norm = err / (2.0 * norm) if norm > 0 else math.sqrt(err)
    return norm, err_norm, n_panels


def gram_inner(
    a: int,
    b: int,
    config: QuadratureConfig = QuadratureConfig(),
) -> float:
    """<rho_a, rho_b> over [x_min, infinity) by the same panel scheme.

    Symmetric in (a, b) by construction: the panel grid at integer u
    contains the breakpoint unions {1/(a k)} and {1/(b k)} of both
    factors.
    """
    a = int(a)
    b = int(b)
    if a < 1 or b < 1:
        raise RejectedInputError(f"dilation indices must be >= 1, got {a}, {b}")
    ca = np.zeros(a + 1)
    ca[a] = 1.0
    cb = np.zeros(b + 1)
    cb[b] = 1.0
    f = _PiecewiseForm(q=1.0 / a, jump_coeffs=ca, kappa=0.0)
    g = _PiecewiseForm(q=1.0 / b, jump_coeffs=cb, kappa=0.0)
    value, _, _, _ = _inner(f, g, config)
    return value


@dataclass(frozen=True)
class SlowBoundRow:
    n: int
    distance: float
    product: float  # distance * sqrt(log n)
    error_estimate: float


def slow_bound_report(
    n_list: Sequence[int],
    config: QuadratureConfig = QuadratureConfig(),
    table: MoebiusTable | None = None,
) -> list[SlowBoundRow]:
    """Distance of F_n to -chi and the normalized product dist*sqrt(log n).

    The normalized product is the empirical witness for the known lower
    bound C/sqrt(log N) on how well any dilation sum can approach chi;
    the constant is not asserted, only reported.
    """
    if table is None:
        raise RejectedInputError("slow_bound_report needs a MoebiusTable")
    rows = []
    for n in n_list:
        n = int(n)
        rep = panel_integrate(
            ApproximantSpec(ApproximantKind.NATURAL, n=n), True, config, table
        )
        product = rep.distance * math.sqrt(math.log(n)) if n > 1 else 0.0
        rows.append(
            SlowBoundRow(
                n=n,
                distance=rep.distance,
                product=product,
                error_estimate=rep.error_estimate,
            )
        )
    return rows


def convergence_curve(
    kind: str,
    grid: Sequence[float] | Sequence[int],
    fixed: ApproximantSpec,
    config: QuadratureConfig = QuadratureConfig(),
    table: MoebiusTable | None = None,
    zeta_fn: ZetaFn = zeta,
) -> list[tuple[object, DistanceReport]]:
    """Distance curves for the two convergence experiments.

    kind='eps_to_zero': grid is a descending eps list; each entry yields
    the distance ||f_eps + chi|| for the limit family at that eps.

    kind='n_to_infinity': grid is an ascending n list; consecutive pairs
    (m, n) yield the Cauchy increment ||f_{eps,n} - f_{eps,m}|| at
    fixed.eps, computed directly on the difference coefficients
    mu(a) a^{-eps}, m < a <= n.

    Returns (grid_value, DistanceReport) pairs; for increments the grid
    value is the pair (m, n).
    """
    if table is None:
        raise RejectedInputError("convergence_curve needs a MoebiusTable")
    out: list[tuple[object, DistanceReport]] = []
    if kind == "eps_to_zero":
        eps_grid = [float(e) for e in grid]
        for eps in eps_grid:
            spec = ApproximantSpec(ApproximantKind.REGULARIZED_LIMIT, eps=eps)
            out.append((eps, panel_integrate(spec, True, config, table, zeta_fn)))
        return out
    if kind == "n_to_infinity":
        n_grid = [int(n) for n in grid]
        if sorted(n_grid) != n_grid:
            raise RejectedInputError("n grid must be ascending")
        eps = fixed.eps
        for m, n in zip(n_grid, n_grid[1:]):
            if n > table.limit:
                raise RejectedInputError(
                    f"table.limit={table.limit} too small for n={n}"
                )
            coeff = np.zeros(n + 1)
            a = np.arange(m + 1, n + 1, dtype=np.float64)
            coeff[m + 1 :] = table.mu[m + 1 : n + 1].astype(np.float64) * (
                a ** (-eps) if eps > 0 else 1.0
            )
            norm, err, n_panels = coefficient_norm(coeff, config)
            spec_hi = ApproximantSpec(
                ApproximantKind.REGULARIZED if eps > 0 else ApproximantKind.NATURAL,
                n=n,
                eps=eps,
            )
            out.append(
                (
                    (m, n),
                    DistanceReport(
                        spec=spec_hi,
                        distance=norm,
                        tail_contribution=0.0,
                        head_truncation_bound=_head_bound(
                            _PiecewiseForm(0.0, coeff, 0.0), config
                        ),
                        panel_count=n_panels,
                        error_estimate=err,
                    ),
                )
            )
        return out
    raise RejectedInputError(f"unknown curve kind {kind!r}")
