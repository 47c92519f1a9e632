"""Command line front end.

Every subcommand executes one deterministic seeded experiment and writes
a JSON report plus CSV companions (and a figure when there is a table to
draw).  Exit codes: 0 success, 1 usage or invalid input, 2 numerical
failure (a verification that missed its tolerance, or quadrature that
could not reach the requested accuracy; a partial report is still
written when possible).
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from .ball import DEFAULT_RADIAL_GRID, SamplingScheme
from .cesaro import apply_coefficient_route, apply_quadrature_route, verify_radial_identity
from .criteria import (
    TREND_POLICY,
    boundary_family,
    check_embedding_bound,
    check_growth_bound,
    compactness_probe,
    compactness_scan,
    criterion_statistic,
    empirical_operator_ratio,
    log_kernel_ratio,
)
from .errors import InvalidParameter
from .quadrature import BallIntegralSpec, ball_integral, monomial_ball_integral
from .reports import make_table, report_document, write_report
from .series import TruncatedSeries, random_series
from .spaces import AnalyticFunction, SpaceParams, besov_norm_info, bloch_seminorm

# -- function selectors ---------------------------------------------------------


def log_kernel_function(dimension: int) -> AnalyticFunction:
    """g(z) = log 1/(1 - z_1), the standard unbounded Bloch-type symbol."""

    def value(pts):
        return -np.log(1.0 - pts[:, 0])

    def gradient(pts):
        grad = np.zeros(pts.shape, dtype=complex)
        grad[:, 0] = 1.0 / (1.0 - pts[:, 0])
        return grad

    return AnalyticFunction(dimension, value, gradient, label="log-kernel")


def parse_polynomial_expr(text: str, dimension: int) -> TruncatedSeries:
    """Parse expressions like "1 + 0.5*z1^2*z2 - 2e-3*z3" into a series."""
    compact = text.replace(" ", "")
    if not compact:
        raise InvalidParameter("empty polynomial expression")
    chunks = []
    start = 0
    for i in range(1, len(compact)):
        if compact[i] in "+-" and compact[i - 1] not in "eE+-*^":
            chunks.append(compact[start:i])
            start = i
    chunks.append(compact[start:])
    terms: dict[tuple[int, ...], complex] = {}
    for chunk in chunks:
        sign = 1.0
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise InvalidParameter(f"dangling sign in polynomial expression {text!r}")
        coeff = sign
        alpha = [0] * dimension
        for factor in body.split("*"):
            match = re.fullmatch(r"z(\d+)(?:\^(\d+))?", factor)
            if match:
                index = int(match.group(1)) - 1
                if not 0 <= index < dimension:
                    raise InvalidParameter(
                        f"variable z{index + 1} out of range for dimension {dimension}"
                    )
                alpha[index] += int(match.group(2) or 1)
            else:
                try:
                    coeff *= float(factor)
                except ValueError:
                    raise InvalidParameter(
                        f"cannot parse factor {factor!r} in polynomial expression"
                    ) from None
        key = tuple(alpha)
        terms[key] = terms.get(key, 0j) + coeff
    return TruncatedSeries(dimension, terms)


def resolve_function(selector: str, dimension: int):
    """Series file path or named closed form: coordinate | log-kernel | polynomial:<expr>."""
    if selector == "coordinate":
        return TruncatedSeries.coordinate(dimension)
    if selector == "log-kernel":
        return log_kernel_function(dimension)
    if selector.startswith("polynomial:"):
        return parse_polynomial_expr(selector[len("polynomial:"):], dimension)
    path = Path(selector)
    if path.exists():
        series = TruncatedSeries.load(path)
        if series.dimension != dimension:
            raise InvalidParameter(
                f"series file has dimension {series.dimension}, expected {dimension}"
            )
        return series
    raise InvalidParameter(
        f"unknown function selector {selector!r} "
        "(expected a series file, coordinate, log-kernel or polynomial:<expr>)"
    )


# -- shared argument plumbing -----------------------------------------------------


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InvalidParameter(f"cannot parse grid {text!r}") from None


def _scheme_from(args) -> SamplingScheme:
    return SamplingScheme(
        radial_grid=_parse_grid(args.radial_grid),
        sphere_samples=args.sphere_samples,
        seed=args.seed,
        refinement_levels=args.refinements,
    )


def _quad_spec_from(args, dimension: int, weight: float) -> BallIntegralSpec:
    return BallIntegralSpec(
        dimension=dimension,
        weight=weight,
        rule=args.rule,
        sphere_samples=args.quad_samples,
        radial_order=args.radial_order,
        seed=args.seed,
    )


def _config_from(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "handler"}


def _emit(args, command: str, results: dict, tables: dict | None = None,
          policy: dict | None = None) -> None:
    doc = report_document(command, _config_from(args), results, tables, policy)
    paths = write_report(doc, args.out, figure=not args.no_figure)
    for path in paths:
        print(path)


# -- subcommand handlers ------------------------------------------------------------


def _handle_norm(args) -> int:
    if args.f is None:
        raise InvalidParameter("--f is required")
    f = resolve_function(args.f, args.n)
    if args.space == "besov":
        params = SpaceParams(n=args.n, p=args.p, q=args.q)
        spec = _quad_spec_from(args, params.n, params.q)
        info = besov_norm_info(f, params, spec)
        results = {
            "space": "besov",
            "params": {"n": params.n, "p": params.p, "q": params.q},
            "value": info.value,
            "seminorm": info.seminorm,
            "origin_value": info.origin_value,
            "error_estimate": info.quad_error,
            "refinement_trace": None,
        }
        _emit(args, "norm", results)
    else:
        scheme = _scheme_from(args)
        scan = bloch_seminorm(f, args.alpha, scheme, variant=args.variant)
        origin = abs(complex(f.evaluate(np.zeros(args.n, dtype=complex))))
        results = {
            "space": "bloch",
            "params": {"n": args.n, "alpha": args.alpha, "variant": args.variant},
            "value": origin + scan.value,
            "seminorm": scan.value,
            "origin_value": origin,
            "error_estimate": None,
            "refinement_trace": list(scan.trace),
        }
        tables = {"trace": make_table(["level", "supremum"], list(enumerate(scan.trace)))}
        _emit(args, "norm", results, tables)
    return 0


def _handle_apply(args) -> int:
    f = TruncatedSeries.load(args.f)
    g = resolve_function(args.g, f.dimension)
    if not isinstance(g, TruncatedSeries):
        raise InvalidParameter("apply needs polynomial data for g (series file or polynomial:<expr>)")
    result = apply_coefficient_route(f, g)
    out_series = Path(args.out_series) if args.out_series else Path(args.out).with_suffix(".series.json")
    out_series.parent.mkdir(parents=True, exist_ok=True)
    result.save(out_series)

    # spot check the two routes against each other at a few interior points
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(args.seed)))
    worst = 0.0
    for _ in range(args.probes):
        direction = rng.standard_normal(f.dimension) + 1j * rng.standard_normal(f.dimension)
        direction /= np.linalg.norm(direction)
        z = 0.7 * rng.random() * direction
        a = complex(result.evaluate(z))
        b = apply_quadrature_route(f, g, z)
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))

    orders: dict[int, float] = {}
    for alpha, coeff in result.terms.items():
        k = sum(alpha)
        orders[k] = orders.get(k, 0.0) + abs(coeff) ** 2
    order_rows = [(k, float(np.sqrt(v))) for k, v in sorted(orders.items())]
    results = {
        "series_file": str(out_series),
        "degree": result.degree,
        "degree_cap": result.degree_cap,
        "terms": len(result.terms),
        "route_deviation": worst,
    }
    _emit(args, "apply", results, {"orders": make_table(["order", "coeff_norm"], order_rows)})
    return 0


def _handle_criterion(args) -> int:
    params = SpaceParams(n=args.n, p=args.p, q=args.q, alpha=args.alpha)
    g = resolve_function(args.g, args.n)
    scheme = _scheme_from(args)
    report = criterion_statistic(g, params, scheme)
    results = {
        "kind": report.kind,
        "symbol": report.symbol,
        "params": {"n": params.n, "p": params.p, "q": params.q, "alpha": params.alpha,
                   "embedding_exponent": params.embedding_exponent},
        "trend": report.trend,
        "growth_factor": report.growth_factor,
        "peak": report.peak,
    }
    tables = {"statistic": make_table(["radius", "statistic"], report.rows())}
    _emit(args, "criterion", results, tables, policy=report.policy)
    return 0


def _handle_compactness(args) -> int:
    params = SpaceParams(n=args.n, p=args.p, q=args.q, alpha=args.alpha)
    g = resolve_function(args.g, args.n)
    scheme = _scheme_from(args)
    scan = compactness_scan(g, params, scheme)
    results = {
        "kind": scan.kind,
        "symbol": scan.symbol,
        "params": {"n": params.n, "p": params.p, "q": params.q, "alpha": params.alpha,
                   "embedding_exponent": params.embedding_exponent},
        "trend": scan.trend,
        "growth_factor": scan.growth_factor,
        "compact_consistent": scan.compact_consistent,
    }
    tables = {"statistic": make_table(["radius", "statistic"], scan.rows())}
    if params.embedding_exponent >= 1.0 - 1e-12:
        moduli = _parse_grid(args.w_grid)
        probe = compactness_probe(g, params, moduli, scheme)
        headers, rows = probe.rows()
        tables["probe"] = make_table(headers, rows)
        results["probe_flags"] = probe.flags
    else:
        results["probe_flags"] = None
        results["note"] = (
            "no boundary family below the exponent threshold; "
            "the scan reports Bloch membership of the symbol"
        )
    _emit(args, "compactness", results, tables, policy=scan.policy)
    return 0


# -- verify suites -------------------------------------------------------------------


def _suite_radial_identity(seed: int, trials: int) -> dict:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    rows = []
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 4))
        degree = int(rng.integers(1, 9))
        f = random_series(n, degree, 1 + int(rng.integers(0, 18)), rng)
        g = random_series(n, degree, 1 + int(rng.integers(0, 18)), rng)
        residual = verify_radial_identity(f, g).max_rel
        worst = max(worst, residual)
        rows.append([n, degree, residual])
    return {
        "name": "radial product identity",
        "columns": ["n", "degree", "rel_residual"],
        "rows": rows,
        "tolerance": 1e-12,
        "worst": worst,
        "ok": worst <= 1e-12,
    }


_EMBEDDING_CONFIGS = ((1, 2.0, 0.0), (1, 1.0, 0.5), (1, 4.0, 1.0),
                      (2, 2.0, 0.0), (2, 1.0, 0.5), (2, 4.0, 1.0))


def _suite_embedding(seed: int, trials: int) -> dict:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    rows = []
    worst = 0.0
    scheme = SamplingScheme(sphere_samples=64, seed=seed)
    for k in range(trials):
        n, p, q = _EMBEDDING_CONFIGS[k % len(_EMBEDDING_CONFIGS)]
        params = SpaceParams(n=n, p=p, q=q)
        f = random_series(n, int(rng.integers(1, 9)), 1 + int(rng.integers(0, 14)), rng)
        spec = BallIntegralSpec(dimension=n, weight=q, sphere_samples=2048 if n == 1 else 60_000,
                                radial_order=96 if n == 1 else 32, seed=seed)
        report = check_embedding_bound(f, params, scheme, r0=0.5, quad_spec=spec)
        worst = max(worst, report.max_ratio)
        rows.append([n, p, q, report.max_ratio])
    return {
        "name": "embedding bound",
        "columns": ["n", "p", "q", "max_ratio"],
        "rows": rows,
        "tolerance": 1.0 + 1e-6,
        "worst": worst,
        "ok": worst <= 1.0 + 1e-6,
    }


def _growth_scheme(seed: int, sphere_samples: int = 64) -> SamplingScheme:
    radii = tuple(np.linspace(0.05, 0.9, 18)) + (0.93, 0.96, 0.98, 0.99, 0.995, 0.999, 0.9999)
    return SamplingScheme(radial_grid=radii, sphere_samples=sphere_samples, seed=seed)


def _suite_growth(seed: int, trials: int) -> dict:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    rows = []
    worst = 0.0
    scheme = _growth_scheme(seed)
    for k in range(trials):
        p = (0.5, 1.0, 2.0)[k % 3]
        n = int(rng.integers(1, 3))
        f = random_series(n, int(rng.integers(1, 9)), 1 + int(rng.integers(0, 14)), rng)
        report = check_growth_bound(f, p, scheme)
        worst = max(worst, report.max_ratio)
        rows.append([n, p, report.max_ratio])
    return {
        "name": "growth bound",
        "columns": ["n", "p", "max_ratio"],
        "rows": rows,
        "tolerance": 1.0,
        "worst": worst,
        "ok": worst <= 1.0,
    }


def _suite_log_kernel(seed: int) -> dict:
    rows = []
    ok = True
    worst = 0.0
    for n, t in ((1, 0.0), (1, 1.0), (2, 0.0)):
        spec = BallIntegralSpec(dimension=n, weight=t, sphere_samples=32_768,
                                radial_order=128, seed=seed)
        base = None
        for radius in (0.9, 0.99, 0.999):
            z = np.zeros(n, dtype=complex)
            z[0] = radius
            ratio = log_kernel_ratio(z, t, spec)
            if base is None:
                base = ratio
            ok = ok and ratio <= 2.0 * base
            worst = max(worst, ratio / base)
            rows.append([n, t, radius, ratio])
    return {
        "name": "log-kernel integral ratio",
        "columns": ["n", "t", "radius", "ratio"],
        "rows": rows,
        "tolerance": 2.0,
        "worst": worst,
        "ok": ok,
    }


_VERIFY_SUITES = {
    "1": lambda args: _suite_embedding(args.seed, args.trials),
    "2": lambda args: _suite_growth(args.seed, args.trials),
    "4": lambda args: _suite_log_kernel(args.seed),
    "6": lambda args: _suite_radial_identity(args.seed, args.trials),
}


def _handle_verify(args) -> int:
    names = ("1", "2", "4", "6") if args.lemma == "all" else (args.lemma,)
    tables = {}
    summary = {}
    all_ok = True
    check_rows = []
    for name in names:
        suite = _VERIFY_SUITES[name](args)
        tables[f"suite_{name}"] = make_table(suite["columns"], suite["rows"])
        summary[name] = {
            "name": suite["name"],
            "ok": suite["ok"],
            "worst": suite["worst"],
            "tolerance": suite["tolerance"],
        }
        check_rows.append([name, suite["name"], suite["ok"], suite["worst"]])
        all_ok = all_ok and suite["ok"]
    tables["checks"] = make_table(["id", "check", "ok", "worst"], check_rows)
    results = {"suites": summary, "all_ok": all_ok}
    _emit(args, "verify", results, tables)
    return 0 if all_ok else 2


def _handle_oracle(args) -> int:
    rows = []
    worst = 0.0
    t_values = _parse_grid(args.t_list)
    for n in range(1, args.n_max + 1):
        z = np.zeros(n, dtype=complex)
        z[0] = 1.0
        for m in range(1, args.m_max + 1):
            for t in t_values:
                closed = monomial_ball_integral(n, m, t)

                def integrand(pts, m=m, z=z):
                    return np.abs(pts @ np.conj(z)) ** (2 * m)

                rules = ["mc"] if n > 1 else ["mc", "product"]
                for rule in rules:
                    spec = BallIntegralSpec(
                        dimension=n, weight=t, rule=rule,
                        sphere_samples=args.quad_samples, radial_order=args.radial_order,
                        seed=args.seed,
                    )
                    result = ball_integral(integrand, spec)
                    deviation = abs(result.value - closed) / closed
                    worst = max(worst, deviation)
                    rows.append([n, m, t, rule, closed, result.value, result.error, deviation])
    results = {"cases": len(rows), "worst_rel_deviation": worst}
    tables = {"comparison": make_table(
        ["n", "m", "t", "rule", "closed_form", "estimate", "error", "rel_deviation"], rows)}
    _emit(args, "oracle", results, tables)
    return 0


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _add_common(sub, default_out: str):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", default=default_out, help="report path (.json)")
    sub.add_argument("--no-figure", action="store_true", help="skip the rendered figure")


def _add_scheme(sub):
    sub.add_argument("--radial-grid", default=",".join(str(r) for r in DEFAULT_RADIAL_GRID))
    sub.add_argument("--sphere-samples", type=int, default=256)
    sub.add_argument("--refinements", type=int, default=1)


def _add_quad(sub):
    sub.add_argument("--rule", choices=["auto", "mc", "product"], default="auto")
    sub.add_argument("--quad-samples", type=int, default=50_000)
    sub.add_argument("--radial-order", type=int, default=64)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cesarolab", description=__doc__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    norm = subparsers.add_parser("norm", parents=[], help="Besov or Bloch-type norm of a function")
    norm.add_argument("--space", choices=["besov", "bloch"], required=True)
    norm.add_argument("--f", required=True, help="series file or named closed form")
    norm.add_argument("--n", type=int, default=1)
    norm.add_argument("--p", type=float, default=2.0)
    norm.add_argument("--q", type=float, default=0.0)
    norm.add_argument("--alpha", type=float, default=1.0)
    norm.add_argument("--variant", choices=["gradient", "radial"], default="gradient")
    _add_scheme(norm)
    _add_quad(norm)
    _add_common(norm, "cesarolab_norm.json")
    norm.set_defaults(handler=_handle_norm)

    apply_ = subparsers.add_parser("apply", help="apply the integral operator to a series")
    apply_.add_argument("--f", required=True, help="input series file")
    apply_.add_argument("--g", required=True, help="symbol: series file or polynomial:<expr>")
    apply_.add_argument("--out-series", default=None, help="output series file")
    apply_.add_argument("--probes", type=int, default=5,
                        help="sample points for the route agreement check")
    _add_common(apply_, "cesarolab_apply.json")
    apply_.set_defaults(handler=_handle_apply)

    criterion = subparsers.add_parser("criterion", help="boundedness criterion scan")
    criterion.add_argument("--n", type=int, default=1)
    criterion.add_argument("--p", type=float, required=True)
    criterion.add_argument("--q", type=float, default=0.0)
    criterion.add_argument("--alpha", type=float, required=True)
    criterion.add_argument("--g", default="coordinate")
    _add_scheme(criterion)
    _add_common(criterion, "cesarolab_criterion.json")
    criterion.set_defaults(handler=_handle_criterion)

    compactness = subparsers.add_parser("compactness", help="compactness scan and family probe")
    compactness.add_argument("--n", type=int, default=1)
    compactness.add_argument("--p", type=float, required=True)
    compactness.add_argument("--q", type=float, default=0.0)
    compactness.add_argument("--alpha", type=float, required=True)
    compactness.add_argument("--g", default="coordinate")
    compactness.add_argument("--w-grid", default="0.9,0.99,0.999,0.9999")
    _add_scheme(compactness)
    _add_common(compactness, "cesarolab_compactness.json")
    compactness.set_defaults(handler=_handle_compactness)

    verify = subparsers.add_parser("verify", help="internal consistency suites")
    verify.add_argument("--lemma", choices=["1", "2", "4", "6", "all"], default="all",
                        help="which bound to check: 1 embedding, 2 growth, "
                             "4 log-kernel integral, 6 radial product identity")
    verify.add_argument("--trials", type=int, default=12)
    _add_common(verify, "cesarolab_verify.json")
    verify.set_defaults(handler=_handle_verify)

    oracle = subparsers.add_parser("oracle", help="quadrature against the closed-form oracle")
    oracle.add_argument("--n-max", type=int, default=2)
    oracle.add_argument("--m-max", type=int, default=3)
    oracle.add_argument("--t-list", default="0,1,2.5")
    _add_quad(oracle)
    _add_common(oracle, "cesarolab_oracle.json")
    oracle.set_defaults(handler=_handle_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        partial = {"status": "failed", "error": str(exc),
                   "error_type": type(exc).__name__}
        for attr in ("best_estimate", "error_estimate", "node"):
            if getattr(exc, attr, None) is not None:
                partial[attr] = getattr(exc, attr)
        try:
            _emit(args, args.command, partial)
        except Exception:
            pass
        return 2


if __name__ == "__main__":
    sys.exit(main())
