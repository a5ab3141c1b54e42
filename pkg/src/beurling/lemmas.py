"""Empirical sweep harnesses for the two supporting bounds and the
Cauchy-in-n experiment.

* ``zratio_bound_sweep`` measures |zeta(1/2-eps+i tau)/zeta(1/2+eps+i tau)|
  against the majorant (1+|tau|)^eps; the sup of the ratio is the
  empirical constant of the bound, and the chi-factor asymptotic
  (tau/2pi)^eps makes the normalized ratio converge to (2pi)^{-eps}.

* ``balazard_saias_error`` measures the partial-sum error
  |sum_{a<=n} mu(a) a^{-s} - 1/zeta(s)| against n^{-delta/3}(1+|tau|)^eps
  on a grid with alpha+delta <= Re(s) <= 1.  The underlying asymptotic is
  conditional on zeta having no zeros with Re(s) > alpha, so the harness
  reports consistency and never asserts the O-constant; all CLI output is
  labeled with the working hypothesis.

* ``f_eps_n_cauchy`` computes consecutive increments
  ||f_{eps,n} - f_{eps,m}||_H; decreasing increments are the desk-scale
  signature of H-convergence, and the eps = 0 (undamped) increments make
  the contrast case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .arith import MoebiusTable
from .errors import RejectedInputError
from .l2engine import QuadratureConfig, coefficient_norm
from .special import SpecialValue, inv_zeta_partial, zeta, zeta_ratio

ZetaFn = Callable[[complex, float], SpecialValue]

HYPOTHESIS_NOTE = (
    "working assumption: zeta(s) != 0 for Re(s) > alpha (not certified here)"
)


def _default_tau_grid() -> tuple[float, ...]:
    # tau = 0 plus a log grid over [1, 1e3]: covers the asymptotic decade
    # cheaply.
    return (0.0,) + tuple(float(t) for t in np.logspace(0.0, 3.0, 31))


@dataclass(frozen=True)
class LemmaSweepConfig:
    """Grids and exponents for the sweep harnesses.

    alpha, delta, eps_exponent parameterize the partial-sum bound
    (non-vanishing abscissa, margin, and tau exponent); eps0 caps the
    zeta-ratio sweep; eps_list and sigma_list pick the actual grid rows.
    """

    alpha: float = 0.5
    delta: float = 0.25
    eps_exponent: float = 0.1
    eps0: float = 0.2
    tau_grid: tuple[float, ...] = field(default_factory=_default_tau_grid)
    n_list: tuple[int, ...] = (100, 1000, 10000)
    eps_list: tuple[float, ...] = (0.0, 0.1, 0.2)
    sigma_list: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if not (0.5 <= self.alpha < 1.0):
            raise RejectedInputError(f"alpha must lie in [1/2, 1), got {self.alpha}")
        if self.delta <= 0.0 or self.alpha + self.delta > 1.0:
            raise RejectedInputError(
                f"need delta > 0 and alpha+delta <= 1, got alpha={self.alpha}, "
                f"delta={self.delta}"
            )
        if self.eps_exponent <= 0.0:
            raise RejectedInputError("eps_exponent must be positive")
        if not (0.0 < self.eps0 < 0.25):
            raise RejectedInputError(f"eps0 must lie in (0, 1/4), got {self.eps0}")
        if len(self.tau_grid) == 0 or list(self.tau_grid) != sorted(self.tau_grid):
            raise RejectedInputError("tau_grid must be nonempty and sorted")
        if len(self.n_list) == 0 or list(self.n_list) != sorted(self.n_list):
            raise RejectedInputError("n_list must be nonempty and sorted")
        for e in self.eps_list:
            if not (0.0 <= e <= self.eps0):
                raise RejectedInputError(
                    f"sweep eps {e} outside [0, eps0={self.eps0}]"
                )

    def sigmas(self) -> tuple[float, ...]:
        if self.sigma_list:
            return self.sigma_list
        lo = self.alpha + self.delta
        return tuple(sorted({lo, min(1.0, (lo + 1.0) / 2.0), 1.0}))


@dataclass(frozen=True)
class BoundSweepReport:
    """measured vs majorant at one grid point; ratio = measured/majorant."""

    grid_point: tuple
    measured: float
    majorant: float
    ratio: float


def sweep_sup(rows: Sequence[BoundSweepReport]) -> float:
    """Sup of measured/majorant over a sweep (the empirical constant)."""
    return max(r.ratio for r in rows) if rows else 0.0


def zratio_bound_sweep(config: LemmaSweepConfig) -> list[BoundSweepReport]:
    """Ratio |zeta(1/2-eps+i tau)/zeta(1/2+eps+i tau)| vs (1+|tau|)^eps
    over the (eps, tau) grid.  At eps = 0 the measured value is
    identically 1 by critical-line modulus symmetry.
    """
    rows = []
    for eps in config.eps_list:
        for tau in config.tau_grid:
            measured = zeta_ratio(eps, tau)
            majorant = (1.0 + abs(tau)) ** eps
            rows.append(
                BoundSweepReport(
                    grid_point=(eps, tau),
                    measured=measured,
                    majorant=majorant,
                    ratio=measured / majorant,
                )
            )
    return rows


def zratio_trend(
    rows: Sequence[BoundSweepReport], eps: float, decade: float = 10.0
) -> tuple[float, float]:
    """(slope, mean) of log(ratio) vs log(tau) over the top decade at one eps.

    A non-positive slope (within tolerance) is the assertable form of
    boundedness; the mean normalized ratio estimates (2pi)^{-eps}.
    """
    pts = [
        (r.grid_point[1], r.ratio)
        for r in rows
        if r.grid_point[0] == eps and r.grid_point[1] > 0.0
    ]
    if not pts:
        raise RejectedInputError(f"no sweep rows at eps={eps}")
    t_max = max(t for t, _ in pts)
    top = [(t, v) for t, v in pts if t >= t_max / decade]
    if len(top) < 2:
        raise RejectedInputError("top decade needs at least two grid points")
    lx = np.log([t for t, _ in top])
    ly = np.log([v for _, v in top])
    slope = float(np.polyfit(lx, ly, 1)[0])
    return slope, float(np.exp(ly.mean()))


def balazard_saias_error(
    config: LemmaSweepConfig,
    table: MoebiusTable,
    zeta_fn: ZetaFn = zeta,
) -> list[BoundSweepReport]:
    """Partial-sum error |sum_{a<=n} mu(a) a^{-s} - 1/zeta(s)| against the
    majorant n^{-delta/3} (1+|tau|)^eps_exponent, per (sigma, tau, n).

    Consistency report only: the asymptotic is conditional on the
    zero-free half-plane Re(s) > alpha (see HYPOTHESIS_NOTE).
    """
    if max(config.n_list) > table.limit:
        raise RejectedInputError(
            f"table.limit={table.limit} below max n {max(config.n_list)}"
        )
    if min(config.n_list) < 2:
        raise RejectedInputError("n_list entries must be >= 2")
    rows = []
    for sigma in config.sigmas():
        for tau in config.tau_grid:
            s = complex(sigma, tau)
            if s == 1.0:
                continue  # the zeta pole sits on the sigma = 1 grid edge
            inv = 1.0 / zeta_fn(s, 1e-12).value
            for n in config.n_list:
                measured = abs(inv_zeta_partial(s, n, table) - inv)
                majorant = n ** (-config.delta / 3.0) * (1.0 + abs(tau)) ** config.eps_exponent
                rows.append(
                    BoundSweepReport(
                        grid_point=(sigma, tau, n),
                        measured=measured,
                        majorant=majorant,
                        ratio=measured / majorant,
                    )
                )
    return rows


@dataclass(frozen=True)
class CauchyIncrement:
    n_pair: tuple[int, int]
    increment_norm: float
    error_estimate: float


def f_eps_n_cauchy(
    eps: float,
    n_list: Sequence[int],
    config: QuadratureConfig = QuadratureConfig(),
    table: MoebiusTable | None = None,
) -> list[CauchyIncrement]:
    """||f_{eps,n} - f_{eps,m}||_H for consecutive (m, n) in n_list.

    The difference is the pure dilation sum with coefficients
    mu(a) a^{-eps} over m < a <= n, so it goes straight to the panel
    engine.  eps = 0 gives the undamped (natural) increments used as the
    divergence contrast.
    """
    if table is None:
        raise RejectedInputError("f_eps_n_cauchy needs a MoebiusTable")
    eps = float(eps)
    if eps < 0.0:
        raise RejectedInputError(f"eps must be >= 0, got {eps}")
    ns = [int(n) for n in n_list]
    if len(ns) < 2 or ns != sorted(ns):
        raise RejectedInputError("n_list must be ascending with >= 2 entries")
    if ns[-1] > table.limit:
        raise RejectedInputError(f"table.limit={table.limit} below max n {ns[-1]}")
    out = []
    for m, n in zip(ns, ns[1:]):
        coeff = np.zeros(n + 1)
        a = np.arange(m + 1, n + 1, dtype=np.float64)
        coeff[m + 1 :] = table.mu[m + 1 : n + 1].astype(np.float64) * a ** (-eps)
        norm, err, _ = coefficient_norm(coeff, config)
        out.append(CauchyIncrement(n_pair=(m, n), increment_norm=norm, error_estimate=err))
    return out
