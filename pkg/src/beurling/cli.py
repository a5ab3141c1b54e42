"""Command-line front end: batch subcommands, CSV/JSON emission, and
reproducible run manifests.

Subcommands: sieve | zeta | eval | distance | mellin | lemma | report.
Exit codes: 0 success, 2 rejected input (including usage errors), 3
capability errors (caps exceeded, unreachable accuracy).

Whenever output goes to a file, a RunManifest JSON is written alongside
(<output>.manifest.json, or manifest.json in a report directory) listing
every output with its SHA-256 digest plus the exact argv; re-running that
argv at the same thread count reproduces identical digests.  Floats in
CSV output are printed with 17 significant digits so they round-trip.

The --threads flag is accepted, validated, and recorded; evaluation is
currently single-threaded and bit-for-bit deterministic at any value.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .approximants import (
    ApproximantKind,
    ApproximantSpec,
    f_eps,
    f_eps_n,
    natural_F,
    selberg_S,
)
from .arith import MoebiusTable, mertens_zeros, moebius_sieve
from .errors import CapabilityError, DomainError, RejectedInputError
from .l2engine import (
    DistanceReport,
    QuadratureConfig,
    convergence_curve,
    panel_integrate,
    slow_bound_report,
)
from .lemmas import (
    HYPOTHESIS_NOTE,
    LemmaSweepConfig,
    balazard_saias_error,
    f_eps_n_cauchy,
    sweep_sup,
    zratio_bound_sweep,
    zratio_trend,
)
from .mellin import mellin_closed_f2eps_n, mellin_limit, mellin_numeric, plancherel_check
from .special import zeta

TABLE_LIMIT_ENV = "BEURLING_TABLE_LIMIT"

EXIT_OK = 0
EXIT_REJECTED = 2
EXIT_CAPABILITY = 3


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _x_grid(text: str) -> np.ndarray:
    """Parse 'start:stop:count' or 'start:stop:count:log'."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(
            f"expected start:stop:count[:log], got {text!r}"
        )
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    log = len(parts) == 4 and parts[3] == "log"
    if len(parts) == 4 and not log:
        raise argparse.ArgumentTypeError(f"unknown grid suffix {parts[3]!r}")
    if count < 1 or start <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}")
    if count == 1:
        return np.array([start])
    if log:
        return np.exp(np.linspace(math.log(start), math.log(stop), count))
    return np.linspace(start, stop, count)


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


@dataclass
class RunManifest:
    """Reproducibility record written next to every file output."""

    subcommand: str
    argv: list[str]
    parameters: dict
    library_version: str
    table_limit: int | None
    quadrature: dict
    wall_time_s: float
    outputs: list[dict] = field(default_factory=list)

    def add_output(self, path: str) -> None:
        digest = hashlib.sha256()
        with open(path, "rb") as fh:
            for chunk in iter(lambda: fh.read(1 << 20), b""):
                digest.update(chunk)
        self.outputs.append({"path": path, "sha256": digest.hexdigest()})

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")


class _Emitter:
    """Collects text output, then lands it on stdout or in a file."""

    def __init__(self, out: str | None):
        self.out = out
        self.buffer = io.StringIO()

    def csv_row(self, cells) -> None:
        self.buffer.write(",".join(str(c) for c in cells) + "\n")

    def comment(self, text: str) -> None:
        self.buffer.write(f"# {text}\n")

    def json_doc(self, doc) -> None:
        self.buffer.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")

    def finish(self, manifest: RunManifest | None) -> None:
        if self.out is None:
            sys.stdout.write(self.buffer.getvalue())
            return
        with open(self.out, "w") as fh:
            fh.write(self.buffer.getvalue())
        if manifest is not None:
            manifest.add_output(self.out)
            manifest.write(self.out + ".manifest.json")


def _quadrature_config(args) -> QuadratureConfig:
    return QuadratureConfig(
        x_min=getattr(args, "x_min", 1e-6),
        gauss_order=getattr(args, "order", 16),
        tail_mode=getattr(args, "tail_mode", "exact_one_over_x"),
    )


def _spec_from_args(args) -> ApproximantSpec:
    kind = ApproximantKind(args.kind)
    return ApproximantSpec(kind=kind, n=args.n, eps=args.eps)


def _default_table_limit(args, fallback: int) -> int:
    if getattr(args, "table_limit", None):
        return args.table_limit
    env = os.environ.get(TABLE_LIMIT_ENV)
    if env:
        return int(env)
    return fallback


def _make_table(limit: int) -> MoebiusTable:
    return moebius_sieve(limit)


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------


def _cmd_sieve(args, emit: _Emitter) -> int | None:
    table = _make_table(args.limit)
    emit.csv_row(["n", "mu", "mertens"])
    for n in range(1, table.limit + 1):
        emit.csv_row([n, int(table.mu[n]), int(table.mertens[n])])
    if args.zeros:
        emit.comment("mertens zeros: " + ",".join(str(z) for z in mertens_zeros(table)))
    return table.limit


def _cmd_zeta(args, emit: _Emitter) -> int | None:
    value = zeta(complex(args.sigma, args.tau), args.error)
    emit.json_doc(
        {
            "sigma": args.sigma,
            "tau": args.tau,
            "re": value.value.real,
            "im": value.value.imag,
            "abs_error_bound": value.abs_error_bound,
        }
    )
    return None


def _cmd_eval(args, emit: _Emitter) -> int | None:
    spec = _spec_from_args(args)
    grid = args.x_grid
    need = spec.n if spec.truncated else int(math.ceil(1.0 / float(grid.min())))
    limit = _default_table_limit(args, max(need, 1))
    if limit < need:
        raise RejectedInputError(
            f"--table-limit {limit} below required {need} for this evaluation"
        )
    table = _make_table(limit)
    emit.csv_row(["x", "value"])
    for x in grid:
        x = float(x)
        if spec.kind is ApproximantKind.NATURAL:
            v = natural_F(spec.n, x, table)
        elif spec.kind is ApproximantKind.SELBERG:
            v = selberg_S(spec.n, x, table)
        elif spec.kind is ApproximantKind.REGULARIZED:
            v = f_eps_n(spec.eps, spec.n, x, table)
        else:
            v = f_eps(spec.eps, x, table)
        emit.csv_row([_fmt(x), _fmt(v)])
    return limit


def _cmd_distance(args, emit: _Emitter) -> int | None:
    config = _quadrature_config(args)
    if args.eps_grid or args.n_grid:
        return _distance_curve(args, emit, config)
    spec = _spec_from_args(args)
    need = spec.n if spec.truncated else int(1.0 / config.x_min)
    limit = _default_table_limit(args, need)
    if limit < need:
        raise RejectedInputError(
            f"--table-limit {limit} below required {need} for this spec"
        )
    table = _make_table(limit)
    report = panel_integrate(spec, not args.no_chi_shift, config, table)
    doc = {
        "kind": spec.kind.value,
        "n": spec.n,
        "eps": spec.eps,
        "shift_by_chi": not args.no_chi_shift,
        "distance": report.distance,
        "error_estimate": report.error_estimate,
        "tail_contribution": report.tail_contribution,
        "head_truncation_bound": report.head_truncation_bound,
        "panel_count": report.panel_count,
        "x_min": config.x_min,
        "gauss_order": config.gauss_order,
        "tail_mode": config.tail_mode,
    }
    if args.format == "json":
        emit.json_doc(doc)
    else:
        keys = list(doc)
        emit.csv_row(keys)
        emit.csv_row(
            [_fmt(v) if isinstance(v, float) else v for v in (doc[k] for k in keys)]
        )
    return limit


def _distance_curve(args, emit: _Emitter, config: QuadratureConfig) -> int | None:
    """Curve mode: distances over an eps grid (limit family) or Cauchy
    increments over an n grid at fixed eps.  The normalized column is
    distance/eps for eps curves and increment*sqrt(log n) for n curves."""
    if args.eps_grid and args.n_grid:
        raise RejectedInputError("pass either --eps-grid or --n-grid, not both")
    emit.csv_row(["n_or_eps", "distance", "error_estimate", "normalized"])
    if args.eps_grid:
        need = int(1.0 / config.x_min)
        limit = _default_table_limit(args, need)
        table = _make_table(limit)
        spec = ApproximantSpec(ApproximantKind.REGULARIZED_LIMIT, eps=args.eps_grid[0])
        for eps, rep in convergence_curve("eps_to_zero", args.eps_grid, spec, config, table):
            emit.csv_row([_fmt(eps), _fmt(rep.distance), _fmt(rep.error_estimate),
                          _fmt(rep.distance / eps)])
        return limit
    limit = _default_table_limit(args, max(args.n_grid))
    table = _make_table(limit)
    kind = ApproximantKind.REGULARIZED if args.eps > 0 else ApproximantKind.NATURAL
    spec = ApproximantSpec(kind, n=args.n_grid[0], eps=args.eps)
    for (m, n), rep in convergence_curve("n_to_infinity", args.n_grid, spec, config, table):
        emit.csv_row([n, _fmt(rep.distance), _fmt(rep.error_estimate),
                      _fmt(rep.distance * math.sqrt(math.log(n)))])
    return limit


def _cmd_mellin(args, emit: _Emitter) -> int | None:
    config = _quadrature_config(args)
    limit = None
    emit.csv_row(["tau", "re", "im", "abs", "provenance"])
    samples = []
    if args.mode in ("numeric", "both"):
        spec = _spec_from_args(args)
        need = spec.n
        limit = _default_table_limit(args, max(need, 1))
        table = _make_table(limit)
        for tau in args.tau:
            samples.append(mellin_numeric(spec, args.weight_eps, tau, config, table))
    if args.mode in ("closed", "both"):
        if args.kind == "regularized_limit":
            for tau in args.tau:
                samples.append(mellin_limit(args.weight_eps, tau))
        else:
            limit = limit or _default_table_limit(args, max(args.n, 1))
            table = _make_table(limit)
            for tau in args.tau:
                samples.append(
                    mellin_closed_f2eps_n(args.weight_eps, args.n, tau, table)
                )
    for s in samples:
        emit.csv_row(
            [
                _fmt(s.tau),
                _fmt(s.value.real),
                _fmt(s.value.imag),
                _fmt(abs(s.value)),
                s.provenance,
            ]
        )
    return limit


def _lemma_summary_doc(which: str, rows, extras: dict) -> dict:
    return {
        "which": which,
        "rows": len(rows),
        "sup_ratio": sweep_sup(rows) if rows and hasattr(rows[0], "ratio") else None,
        **extras,
    }


def _cmd_lemma(args, emit: _Emitter) -> int | None:
    limit = None
    if args.which == "zratio":
        config = LemmaSweepConfig(
            eps0=args.eps0,
            eps_list=tuple(args.eps_list),
            tau_grid=tuple(args.tau_grid),
        )
        rows = zratio_bound_sweep(config)
        emit.csv_row(["eps", "tau", "measured", "majorant", "ratio"])
        for r in rows:
            emit.csv_row(
                [_fmt(r.grid_point[0]), _fmt(r.grid_point[1]), _fmt(r.measured), _fmt(r.majorant), _fmt(r.ratio)]
            )
        trends = {}
        for eps in config.eps_list:
            if eps > 0.0:
                slope, top_mean = zratio_trend(rows, eps)
                trends[str(eps)] = {"trend_slope": slope, "top_decade_mean": top_mean}
        summary = _lemma_summary_doc("zratio", rows, {"trends": trends})
    elif args.which == "bs":
        config = LemmaSweepConfig(
            alpha=args.alpha,
            delta=args.delta,
            eps_exponent=args.eps_exponent,
            tau_grid=tuple(args.tau_grid),
            n_list=tuple(args.n_list),
        )
        limit = _default_table_limit(args, max(config.n_list))
        table = _make_table(limit)
        rows = balazard_saias_error(config, table)
        emit.comment(HYPOTHESIS_NOTE)
        emit.csv_row(["sigma", "tau", "n", "measured", "majorant", "ratio"])
        for r in rows:
            sg, tau, n = r.grid_point
            emit.csv_row([_fmt(sg), _fmt(tau), n, _fmt(r.measured), _fmt(r.majorant), _fmt(r.ratio)])
        summary = _lemma_summary_doc(
            "bs", rows, {"hypothesis": HYPOTHESIS_NOTE, "alpha": config.alpha, "delta": config.delta}
        )
    else:  # cauchy
        limit = _default_table_limit(args, max(args.n_list))
        table = _make_table(limit)
        config = _quadrature_config(args)
        incs = f_eps_n_cauchy(args.eps, args.n_list, config, table)
        emit.csv_row(["m", "n", "increment", "error_estimate"])
        for inc in incs:
            emit.csv_row(
                [inc.n_pair[0], inc.n_pair[1], _fmt(inc.increment_norm), _fmt(inc.error_estimate)]
            )
        vals = [i.increment_norm for i in incs]
        summary = {
            "which": "cauchy",
            "rows": len(incs),
            "eps": args.eps,
            "strictly_decreasing": all(b < a for a, b in zip(vals, vals[1:])),
        }
    if args.out is not None:
        base, _ = os.path.splitext(args.out)
        summary_path = base + ".summary.json"
        with open(summary_path, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
        emit.comment(f"summary written to {summary_path}")
        emit.extra_outputs = [summary_path]  # type: ignore[attr-defined]
    else:
        emit.comment("summary " + json.dumps(summary, sort_keys=True))
    return limit


def _cmd_report(args, emit_unused: _Emitter) -> tuple[int | None, list[str]]:
    out_dir = args.out_dir
    os.makedirs(out_dir, exist_ok=True)
    exp = args.experiment
    csv_path = os.path.join(out_dir, f"{exp}.csv")
    plot_path = os.path.join(out_dir, f"{exp}.plot.csv")
    summary_path = os.path.join(out_dir, f"{exp}.summary.json")
    config = _quadrature_config(args)
    limit: int | None = None
    lines: list[str] = []
    plot_rows: list[tuple[float, float]] = []  # bare two-column plot data
    summary: dict

    if exp == "eps-sweep":
        limit = _default_table_limit(args, int(1.0 / config.x_min))
        table = _make_table(limit)
        spec = ApproximantSpec(ApproximantKind.REGULARIZED_LIMIT, eps=args.eps[0])
        curve = convergence_curve("eps_to_zero", args.eps, spec, config, table)
        lines.append("eps,distance,error_estimate")
        for eps, rep in curve:
            lines.append(f"{_fmt(eps)},{_fmt(rep.distance)},{_fmt(rep.error_estimate)}")
            plot_rows.append((eps, rep.distance))
        dists = [rep.distance for _, rep in curve]
        errs = [rep.error_estimate for _, rep in curve]
        monotone = all(
            b <= a + 2.0 * (ea + eb)
            for (a, b, ea, eb) in zip(dists, dists[1:], errs, errs[1:])
        )
        summary = {"experiment": exp, "eps": list(args.eps), "distances": dists,
                   "monotone_nonincreasing": monotone}
    elif exp == "n-cauchy":
        limit = _default_table_limit(args, max(args.n_list))
        table = _make_table(limit)
        incs = f_eps_n_cauchy(args.eps[0], args.n_list, config, table)
        lines.append("m,n,increment,error_estimate")
        for inc in incs:
            lines.append(
                f"{inc.n_pair[0]},{inc.n_pair[1]},{_fmt(inc.increment_norm)},{_fmt(inc.error_estimate)}"
            )
            plot_rows.append((float(inc.n_pair[1]), inc.increment_norm))
        vals = [i.increment_norm for i in incs]
        summary = {
            "experiment": exp,
            "eps": args.eps[0],
            "increments": vals,
            "strictly_decreasing": all(b < a for a, b in zip(vals, vals[1:])),
        }
    elif exp == "slow-bound":
        limit = _default_table_limit(args, max(args.n_list))
        table = _make_table(limit)
        rows = slow_bound_report(args.n_list, config, table)
        lines.append("n,distance,normalized,error_estimate")
        for r in rows:
            lines.append(f"{r.n},{_fmt(r.distance)},{_fmt(r.product)},{_fmt(r.error_estimate)}")
            plot_rows.append((float(r.n), r.product))
        products = [r.product for r in rows if r.n > 1]
        summary = {
            "experiment": exp,
            "n_list": list(args.n_list),
            "min_normalized": min(products) if products else None,
            "all_positive": all(p > 0 for p in products),
        }
    elif exp == "plancherel":
        weight = args.weight_eps
        spec = ApproximantSpec(ApproximantKind.REGULARIZED, n=args.n, eps=2.0 * weight)
        limit = _default_table_limit(args, args.n)
        table = _make_table(limit)
        lines.append("tau_limit,h_norm,k_norm,defect,defect_fraction")
        defects = []
        for t_cut in args.tau_limits:
            rep = plancherel_check(spec, weight, t_cut, args.tau_step, config, table)
            defect = rep.h_norm - rep.k_norm
            frac = defect / rep.h_norm if rep.h_norm else math.inf
            defects.append(frac)
            lines.append(
                f"{_fmt(t_cut)},{_fmt(rep.h_norm)},{_fmt(rep.k_norm)},{_fmt(defect)},{_fmt(frac)}"
            )
            plot_rows.append((t_cut, frac))
        summary = {
            "experiment": exp,
            "n": args.n,
            "weight_eps": weight,
            "defect_fractions": defects,
            "monotone_approach": all(b < a for a, b in zip(defects, defects[1:])),
            "final_within_2pct": bool(defects and defects[-1] < 0.02),
        }
    elif exp == "zratio":
        config_l = LemmaSweepConfig(
            eps0=args.eps0, eps_list=tuple(args.eps_list), tau_grid=tuple(args.tau_grid)
        )
        rows = zratio_bound_sweep(config_l)
        lines.append("eps,tau,measured,majorant,ratio")
        eps_top = max(config_l.eps_list)
        for r in rows:
            lines.append(
                f"{_fmt(r.grid_point[0])},{_fmt(r.grid_point[1])},{_fmt(r.measured)},{_fmt(r.majorant)},{_fmt(r.ratio)}"
            )
            if r.grid_point[0] == eps_top:
                plot_rows.append((r.grid_point[1], r.ratio))
        trends = {}
        for eps in config_l.eps_list:
            if eps > 0.0:
                slope, top_mean = zratio_trend(rows, eps)
                trends[str(eps)] = {"trend_slope": slope, "top_decade_mean": top_mean}
        summary = {"experiment": exp, "sup_ratio": sweep_sup(rows), "trends": trends}
    elif exp == "bs":
        config_l = LemmaSweepConfig(
            alpha=args.alpha,
            delta=args.delta,
            eps_exponent=args.eps_exponent,
            tau_grid=tuple(args.tau_grid),
            n_list=tuple(args.n_list),
        )
        limit = _default_table_limit(args, max(config_l.n_list))
        table = _make_table(limit)
        rows = balazard_saias_error(config_l, table)
        lines.append(f"# {HYPOTHESIS_NOTE}")
        lines.append("sigma,tau,n,measured,majorant,ratio")
        sg0, tau0 = config_l.sigmas()[0], config_l.tau_grid[0]
        for r in rows:
            sg, tau, n = r.grid_point
            lines.append(f"{_fmt(sg)},{_fmt(tau)},{n},{_fmt(r.measured)},{_fmt(r.majorant)},{_fmt(r.ratio)}")
            if sg == sg0 and tau == tau0:
                plot_rows.append((float(n), r.measured))
        summary = {
            "experiment": exp,
            "sup_ratio": sweep_sup(rows),
            "hypothesis": HYPOTHESIS_NOTE,
        }
    else:  # pragma: no cover - argparse restricts choices
        raise RejectedInputError(f"unknown experiment {exp!r}")

    with open(csv_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(plot_path, "w") as fh:
        for x, y in plot_rows:
            fh.write(f"{_fmt(x)},{_fmt(y)}\n")
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return limit, [csv_path, plot_path, summary_path]


# ---------------------------------------------------------------------------
# parser assembly and dispatch
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, *, table_limit: bool = True) -> None:
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--threads", type=_positive_int, default=1,
                   help="worker pool size; recorded for reproducibility "
                        "(evaluation is deterministic at any value)")
    if table_limit:
        p.add_argument("--table-limit", type=_positive_int, default=None,
                       help=f"Mobius table size (default: derived; env {TABLE_LIMIT_ENV})")


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in ApproximantKind])
    p.add_argument("--n", type=_positive_int, default=1)
    p.add_argument("--eps", type=float, default=0.0)


def _add_quadrature_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x-min", dest="x_min", type=float, default=1e-6)
    p.add_argument("--order", type=_positive_int, default=16)
    p.add_argument("--tail-mode", dest="tail_mode", default="exact_one_over_x",
                   choices=["exact_one_over_x", "numeric"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beurling",
        description="Mobius-weighted Beurling approximants: distances to "
                    "-chi, Mellin transforms, and bound sweeps.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("sieve", help="emit n, mu(n), Mertens M(n) as CSV")
    p.add_argument("--limit", type=_positive_int, required=True)
    p.add_argument("--zeros", action="store_true", help="append Mertens zero list")
    _add_common(p, table_limit=False)

    p = sub.add_parser("zeta", help="zeta(sigma + i tau) with certified bound")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--error", type=float, default=1e-12)
    _add_common(p, table_limit=False)

    p = sub.add_parser("eval", help="pointwise approximant values on an x grid")
    _add_spec_flags(p)
    p.add_argument("--x-grid", dest="x_grid", type=_x_grid, required=True,
                   help="start:stop:count[:log]")
    _add_common(p)

    p = sub.add_parser("distance", help="H-norm distance of an approximant to -chi")
    _add_spec_flags(p)
    _add_quadrature_flags(p)
    p.add_argument("--no-chi-shift", action="store_true",
                   help="plain norm of f instead of ||f + chi||")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--eps-grid", dest="eps_grid", type=_float_list, default=None,
                   help="curve mode: descending eps list for the limit family")
    p.add_argument("--n-grid", dest="n_grid", type=_int_list, default=None,
                   help="curve mode: ascending n list of Cauchy increments")
    _add_common(p)

    p = sub.add_parser("mellin", help="Mellin transform samples")
    _add_spec_flags(p)
    _add_quadrature_flags(p)
    p.add_argument("--weight-eps", dest="weight_eps", type=float, default=0.0)
    p.add_argument("--tau-grid", "--tau", dest="tau", type=_float_list, required=True,
                   help="comma-separated frequencies")
    p.add_argument("--mode", choices=["numeric", "closed", "both"], default="numeric")
    _add_common(p)

    p = sub.add_parser("lemma", help="bound sweeps and Cauchy increments")
    p.add_argument("--which", choices=["zratio", "bs", "cauchy"], required=True)
    p.add_argument("--eps", type=float, default=0.1, help="damping for cauchy")
    p.add_argument("--eps0", type=float, default=0.2)
    p.add_argument("--eps-list", dest="eps_list", type=_float_list,
                   default=[0.0, 0.1, 0.2])
    p.add_argument("--tau-grid", dest="tau_grid", type=_float_list, default=None,
                   help="comma-separated; default 0 plus log grid over [1, 1e3]")
    p.add_argument("--n-list", dest="n_list", type=_int_list, default=[100, 1000, 10000])
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--eps-exponent", dest="eps_exponent", type=float, default=0.1)
    _add_quadrature_flags(p)
    _add_common(p)

    p = sub.add_parser("report", help="one CSV + summary JSON per experiment")
    p.add_argument("--experiment", required=True,
                   choices=["eps-sweep", "n-cauchy", "slow-bound", "plancherel",
                            "zratio", "bs"])
    p.add_argument("--eps", type=_float_list, default=[0.4, 0.2, 0.1, 0.05])
    p.add_argument("--n", type=_positive_int, default=1)
    p.add_argument("--n-list", dest="n_list", type=_int_list, default=[10, 100, 1000])
    p.add_argument("--weight-eps", dest="weight_eps", type=float, default=0.25)
    p.add_argument("--tau-limits", dest="tau_limits", type=_float_list,
                   default=[125.0, 250.0, 500.0])
    p.add_argument("--tau-step", dest="tau_step", type=float, default=0.05)
    p.add_argument("--eps0", type=float, default=0.2)
    p.add_argument("--eps-list", dest="eps_list", type=_float_list,
                   default=[0.0, 0.1, 0.2])
    p.add_argument("--tau-grid", dest="tau_grid", type=_float_list, default=None)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--eps-exponent", dest="eps_exponent", type=float, default=0.1)
    p.add_argument("--out-dir", dest="out_dir", default=".")
    _add_quadrature_flags(p)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--table-limit", type=_positive_int, default=None)

    return parser


_DISPATCH = {
    "sieve": _cmd_sieve,
    "zeta": _cmd_zeta,
    "eval": _cmd_eval,
    "distance": _cmd_distance,
    "mellin": _cmd_mellin,
    "lemma": _cmd_lemma,
}


def run(argv: list[str]) -> int:
    """Parse argv, execute, emit, manifest.  Returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_REJECTED if exc.code not in (0, None) else EXIT_OK

    if getattr(args, "tau_grid", "skip") is None:
        args.tau_grid = [0.0] + list(np.logspace(0.0, 3.0, 31))

    started = time.monotonic()
    try:
        if args.subcommand == "report":
            limit, outputs = _cmd_report(args, None)
            manifest = _manifest_for(args, limit, time.monotonic() - started, argv)
            for path in outputs:
                manifest.add_output(path)
            manifest.write(os.path.join(args.out_dir, "manifest.json"))
            return EXIT_OK
        emit = _Emitter(getattr(args, "out", None))
        limit = _DISPATCH[args.subcommand](args, emit)
        manifest = None
        if emit.out is not None:
            manifest = _manifest_for(args, limit, time.monotonic() - started, argv)
            for path in getattr(emit, "extra_outputs", []):
                manifest.add_output(path)
        emit.finish(manifest)
        return EXIT_OK
    except (RejectedInputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY


def _manifest_for(args, table_limit: int | None, wall: float, argv: list[str]) -> RunManifest:
    params = {}
    for key, value in sorted(vars(args).items()):
        if key in ("subcommand",):
            continue
        if isinstance(value, np.ndarray):
            value = [float(v) for v in value]
        params[key] = value
    quad = {
        "x_min": getattr(args, "x_min", None),
        "gauss_order": getattr(args, "order", None),
        "tail_mode": getattr(args, "tail_mode", None),
    }
    return RunManifest(
        subcommand=args.subcommand,
        argv=list(argv),
        parameters=params,
        library_version=__version__,
        table_limit=table_limit,
        quadrature=quad,
        wall_time_s=wall,
    )


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
