"""Mobius-weighted Beurling approximants and their L2/Mellin machinery.

The package makes the convergence chain behind the natural-dilation form
of the Nyman-Beurling criterion computable at desk scale:

    arith          Mobius sieve, Mertens function, Mertens zero set
    special        zeta, log Gamma, the functional-equation ratio,
                   Mobius-weighted Dirichlet partial sums
    approximants   rho_a dilations, F_n, S_n, f_{eps,n}, f_eps, breakpoints
    l2engine       panel quadrature: norms, inner products, distance curves
    mellin         numeric and closed-form Mellin transforms, Plancherel check
    lemmas         bound sweeps and the Cauchy-increment experiment
    cli            batch front end with reproducible run manifests
"""

__version__ = "0.1.0"

from .approximants import (
    ApproximantKind,
    ApproximantSpec,
    Breakpoints,
    breakpoints,
    chi,
    f_eps,
    f_eps_n,
    natural_F,
    rho_a,
    selberg_S,
)
from .arith import MoebiusTable, mertens, mertens_zeros, moebius_sieve
from .errors import CapabilityError, DomainError, RejectedInputError
from .l2engine import (
    DistanceReport,
    QuadratureConfig,
    convergence_curve,
    gram_inner,
    panel_integrate,
    slow_bound_report,
)
from .lemmas import (
    BoundSweepReport,
    LemmaSweepConfig,
    balazard_saias_error,
    f_eps_n_cauchy,
    zratio_bound_sweep,
)
from .mellin import (
    MellinSample,
    mellin_closed_f2eps_n,
    mellin_limit,
    mellin_numeric,
    plancherel_check,
    titchmarsh_residual,
)
from .special import SpecialValue, inv_zeta_partial, log_gamma, zeta, zeta_ratio

__all__ = [
    "__version__",
    "ApproximantKind",
    "ApproximantSpec",
    "BoundSweepReport",
    "Breakpoints",
    "CapabilityError",
    "DistanceReport",
    "DomainError",
    "LemmaSweepConfig",
    "MellinSample",
    "MoebiusTable",
    "QuadratureConfig",
    "RejectedInputError",
    "SpecialValue",
    "balazard_saias_error",
    "breakpoints",
    "chi",
    "convergence_curve",
    "f_eps",
    "f_eps_n",
    "f_eps_n_cauchy",
    "gram_inner",
    "inv_zeta_partial",
    "log_gamma",
    "mellin_closed_f2eps_n",
    "mellin_limit",
    "mellin_numeric",
    "mertens",
    "mertens_zeros",
    "moebius_sieve",
    "natural_F",
    "panel_integrate",
    "plancherel_check",
    "rho_a",
    "selberg_S",
    "slow_bound_report",
    "titchmarsh_residual",
    "zeta",
    "zeta_ratio",
    "zratio_bound_sweep",
]
