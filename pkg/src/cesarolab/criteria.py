"""Boundedness and compactness criteria for T_g, probed numerically.

The central statistic, scanned over radii r -> 1, is

    (1 - r^2)^alpha * G_s(r) * max_xi |Rg(r xi)|,      s = (n+1+q)/p,

whose boundedness characterizes T_g : B(p,q) -> Bloch-alpha bounded and
whose decay (little-oh) characterizes compactness when s >= 1; for
s < 1 the compactness criterion degrades to membership of g itself in
Bloch-alpha, and G_s is identically 1 so the very same scan applies.

Alongside the criterion scans live the test families used by the
necessity arguments (boundary-concentrated functions with uniformly
comparable Besov norms), an empirical operator-norm probe, and sampled
checks of the embedding, growth and log-kernel bounds that the theory
rests on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ball import SamplingScheme, unit_directions
from .errors import DomainError, InvalidParameter
from .quadrature import BallIntegralSpec, ball_integral, zonal_ball_integral
from .spaces import (
    AnalyticFunction,
    SpaceParams,
    besov_norm_info,
    bloch_norm,
    gp_weight_at_radius,
    growth_bound_constant,
    radial_derivative_values,
)

TREND_BOUNDED = "bounded"
TREND_VANISHING = "vanishing"
TREND_DIVERGING = "diverging"
TREND_INCONCLUSIVE = "inconclusive"

#: Classification policy for radius->statistic traces.  The tail is the
#: part of the grid with r >= tail_start; growth is last/first over the
#: tail.  These thresholds are artifact policy and are embedded in
#: reports so downstream readers see them.
TREND_POLICY = {
    "tail_start": 0.9,
    "diverging_growth": 10.0,
    "vanishing_fraction": 0.1,
    "bounded_growth": 3.0,
}


def classify_trend(radii, values, policy: dict | None = None) -> tuple[str, float]:
    """Label a statistic trace and return (trend, tail growth factor)."""
    policy = dict(TREND_POLICY, **(policy or {}))
    radii = [float(r) for r in radii]
    values = [float(v) for v in values]
    if len(values) != len(radii) or not values:
        raise InvalidParameter("radii and values must be non-empty and equal length")
    peak = max(values)
    last = values[-1]
    tail = [v for r, v in zip(radii, values) if r >= policy["tail_start"]]
    if not tail:
        tail = list(values)
    first = tail[0]
    if first > 0.0:
        growth = last / first
    else:
        growth = float("inf") if last > 0.0 else 1.0
    if peak == 0.0:
        return TREND_VANISHING, growth
    if growth > policy["diverging_growth"]:
        return TREND_DIVERGING, growth
    if last < policy["vanishing_fraction"] * peak:
        return TREND_VANISHING, growth
    if len(tail) >= 2 and growth <= policy["bounded_growth"]:
        return TREND_BOUNDED, growth
    return TREND_INCONCLUSIVE, growth


@dataclass(frozen=True)
class CriterionReport:
    """Radius-indexed boundary statistic with its trend classification."""

    kind: str
    params: SpaceParams
    symbol: str
    radii: tuple[float, ...]
    values: tuple[float, ...]
    trend: str
    growth_factor: float
    peak: float
    compact_consistent: bool | None = None
    policy: dict = field(default_factory=lambda: dict(TREND_POLICY))

    def rows(self):
        return list(zip(self.radii, self.values))


def _scan_directions(dimension: int, scheme: SamplingScheme) -> np.ndarray:
    return scheme.directions(dimension, level=0)


def _symbol_label(g) -> str:
    label = getattr(g, "label", "")
    return label if label else repr(g)


def criterion_statistic(g, params: SpaceParams, scheme: SamplingScheme) -> CriterionReport:
    """Scan (1-r^2)^alpha G_s(r) max_xi |Rg(r xi)| over the radial grid."""
    if g.dimension != params.n:
        raise InvalidParameter(f"symbol dimension {g.dimension} differs from n={params.n}")
    s = params.embedding_exponent
    dirs = _scan_directions(params.n, scheme)
    values = []
    for r in scheme.radial_grid:
        pts = r * dirs
        magnitude = float(np.abs(radial_derivative_values(g, pts)).max())
        weight = float((1.0 - r * r) ** params.alpha * gp_weight_at_radius(s, r))
        values.append(weight * magnitude)
    trend, growth = classify_trend(scheme.radial_grid, values)
    return CriterionReport(
        kind="boundedness",
        params=params,
        symbol=_symbol_label(g),
        radii=tuple(scheme.radial_grid),
        values=tuple(values),
        trend=trend,
        growth_factor=growth,
        peak=max(values),
    )


def compactness_scan(g, params: SpaceParams, scheme: SamplingScheme) -> CriterionReport:
    """Compactness criterion scan.

    For s >= 1 the criterion is the little-oh decay of the boundedness
    statistic; for s < 1 it is Bloch-alpha membership of g, and since
    G_s = 1 there the statistic formula is unchanged.  The report's
    ``compact_consistent`` field interprets the trend accordingly.
    """
    base = criterion_statistic(g, params, scheme)
    little_oh = params.embedding_exponent >= 1.0 - 1e-12
    kind = "little_oh" if little_oh else "bloch_membership"
    if little_oh:
        consistent = base.trend == TREND_VANISHING
    else:
        consistent = base.trend in (TREND_BOUNDED, TREND_VANISHING)
    return CriterionReport(
        kind=kind,
        params=params,
        symbol=base.symbol,
        radii=base.radii,
        values=base.values,
        trend=base.trend,
        growth_factor=base.growth_factor,
        peak=base.peak,
        compact_consistent=consistent,
    )


# -- boundary test families ----------------------------------------------------


def _prepare_w(w, params: SpaceParams) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.shape != (params.n,):
        raise InvalidParameter(f"w has shape {w.shape}, expected ({params.n},)")
    if not np.linalg.norm(w) < 1.0:
        raise DomainError(f"w must lie inside the ball, |w|={np.linalg.norm(w):.6g}")
    return w


def power_test_function(w, params: SpaceParams) -> AnalyticFunction:
    """f_w(z) = (1 - |w|^2) / (1 - <z, w>)^s for the regime s > 1.

    Concentrates at w with f_w(w) = (1 - |w|^2)^(1-s) while the Besov
    norms stay uniformly comparable as |w| -> 1.
    """
    w = _prepare_w(w, params)
    s = params.embedding_exponent
    if not s > 1.0:
        raise DomainError(f"power family requires (n+1+q)/p > 1, got {s:.6g}")
    w_sq = float(np.sum(np.abs(w) ** 2))
    wbar = np.conj(w)

    def value(pts):
        zeta = pts @ wbar
        return (1.0 - w_sq) * (1.0 - zeta) ** (-s)

    def gradient(pts):
        zeta = pts @ wbar
        factor = (1.0 - w_sq) * s * (1.0 - zeta) ** (-s - 1.0)
        return factor[:, None] * wbar[None, :]

    return AnalyticFunction(
        dimension=params.n,
        value_fn=value,
        gradient_fn=gradient,
        label=f"power|w|={np.linalg.norm(w):.6g}",
    )


def log_test_function(w, params: SpaceParams) -> AnalyticFunction:
    """f_w(z) = L^(-2/p) (log 1/(1 - <z, w>))^(1+2/p), L = log 1/(1-|w|^2).

    Used in the borderline regime s = 1; w = 0 is outside the domain
    because L vanishes there.  Principal branches throughout; Re(1-<z,w>)
    stays positive on the ball so the logarithm never crosses its cut.
    """
    w = _prepare_w(w, params)
    s = params.embedding_exponent
    if abs(s - 1.0) > 1e-9:
        raise DomainError(f"log family requires (n+1+q)/p = 1, got {s:.6g}")
    w_abs = float(np.linalg.norm(w))
    if w_abs == 0.0:
        raise DomainError("log family is undefined at w = 0")
    big_l = math.log(1.0 / (1.0 - w_abs * w_abs))
    exponent = 1.0 + 2.0 / params.p
    scale = big_l ** (-2.0 / params.p)
    wbar = np.conj(w)

    def value(pts):
        u = -np.log(1.0 - pts @ wbar)
        return scale * u ** exponent

    def gradient(pts):
        zeta = pts @ wbar
        u = -np.log(1.0 - zeta)
        factor = scale * exponent * u ** (exponent - 1.0) / (1.0 - zeta)
        return factor[:, None] * wbar[None, :]

    return AnalyticFunction(
        dimension=params.n,
        value_fn=value,
        gradient_fn=gradient,
        label=f"log|w|={w_abs:.6g}",
    )


def boundary_family(
    params: SpaceParams,
    moduli,
    direction=None,
) -> list[tuple[np.ndarray, AnalyticFunction]]:
    """Family members (w_j, f_j) along one direction with |w_j| from moduli.

    Picks the power family for s > 1 and the log family at s = 1; below
    s = 1 no concentrating family is available and the compactness
    question reduces to Bloch membership of the symbol.
    """
    s = params.embedding_exponent
    if direction is None:
        direction = np.zeros(params.n, dtype=complex)
        direction[0] = 1.0
    direction = np.asarray(direction, dtype=complex)
    direction = direction / np.linalg.norm(direction)
    members = []
    for modulus in moduli:
        w = float(modulus) * direction
        if abs(s - 1.0) <= 1e-9:
            fn = log_test_function(w, params)
        elif s > 1.0:
            fn = power_test_function(w, params)
        else:
            raise DomainError(
                f"no boundary family for (n+1+q)/p = {s:.6g} < 1; "
                "use the Bloch membership scan instead"
            )
        members.append((w, fn))
    return members


# -- operator probes -------------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    """Per-family-member probe table with summary flags."""

    kind: str
    params: SpaceParams
    symbol: str
    moduli: tuple[float, ...]
    operator_norms: tuple[float, ...]
    lower_bounds: tuple[float, ...] = ()
    besov_norms: tuple[float, ...] = ()
    ratios: tuple[float, ...] = ()
    flags: dict = field(default_factory=dict)

    def rows(self):
        columns = [self.moduli, self.operator_norms]
        headers = ["w_modulus", "operator_norm"]
        for name, col in (
            ("lower_bound", self.lower_bounds),
            ("besov_norm", self.besov_norms),
            ("ratio", self.ratios),
        ):
            if col:
                columns.append(col)
                headers.append(name)
        return headers, list(zip(*columns))


def _weighted_product_sup(
    g,
    f,
    alpha: float,
    scheme: SamplingScheme,
    radius_cap: float | None = None,
    extra_points=(),
) -> float:
    """Sampled sup of (1-|z|^2)^alpha |f(z)| |Rg(z)|.

    By the radial-derivative identity this is the radial-variant
    Bloch-alpha seminorm of T_g f (whose value at 0 vanishes).  The scan
    is capped at ``radius_cap`` so family probes track each member's own
    concentration radius instead of the symbol's blow-up at the grid
    edge; the witness points of the lower-bound argument are passed in
    through ``extra_points``.
    """
    dirs = _scan_directions(f.dimension, scheme)
    best = 0.0
    for r in scheme.radial_grid:
        if radius_cap is not None and r > radius_cap + 1e-12:
            continue
        pts = r * dirs
        vals = np.abs(f.evaluate(pts)) * np.abs(radial_derivative_values(g, pts))
        best = max(best, float((1.0 - r * r) ** alpha * vals.max()))
    for point in extra_points:
        point = np.asarray(point, dtype=complex)
        pts = point[None, :]
        val = float(
            (1.0 - np.linalg.norm(point) ** 2) ** alpha
            * np.abs(f.evaluate(pts))[0]
            * np.abs(radial_derivative_values(g, pts))[0]
        )
        best = max(best, val)
    return best


def _default_quad_spec(params: SpaceParams, scheme: SamplingScheme) -> BallIntegralSpec:
    return BallIntegralSpec(
        dimension=params.n,
        weight=params.q,
        rule="auto",
        sphere_samples=4096 if params.n == 1 else 200_000,
        radial_order=192 if params.n == 1 else 48,
        seed=scheme.seed,
    )


def empirical_operator_ratio(
    g,
    params: SpaceParams,
    family,
    scheme: SamplingScheme,
    quad_spec: BallIntegralSpec | None = None,
) -> ProbeReport:
    """Rayleigh-quotient probe ||T_g f_j||_(Bloch-alpha) / ||f_j||_(B(p,q)).

    Each member's Bloch scan stops at its own |w_j| (plus the witness
    point w_j itself): the family is built to localize there, and that
    is where the necessity argument reads off growth.
    """
    if quad_spec is None:
        quad_spec = _default_quad_spec(params, scheme)
    moduli, norms, besov, ratios = [], [], [], []
    for w, f in family:
        cap = float(np.linalg.norm(w))
        top = _weighted_product_sup(g, f, params.alpha, scheme, radius_cap=cap, extra_points=[w])
        bottom = besov_norm_info(f, params, quad_spec).value
        moduli.append(cap)
        norms.append(top)
        besov.append(bottom)
        ratios.append(top / bottom)
    spread = max(ratios) / min(ratios) if min(ratios) > 0 else float("inf")
    growth = ratios[-1] / ratios[0] if ratios[0] > 0 else float("inf")
    return ProbeReport(
        kind="operator_ratio",
        params=params,
        symbol=_symbol_label(g),
        moduli=tuple(moduli),
        operator_norms=tuple(norms),
        besov_norms=tuple(besov),
        ratios=tuple(ratios),
        flags={
            "ratio_spread": spread,
            "ratio_growth": growth,
            "bounded_ratios": spread < 10.0,
        },
    )


def compactness_probe(
    g,
    params: SpaceParams,
    moduli,
    scheme: SamplingScheme,
    quad_spec: BallIntegralSpec | None = None,
) -> ProbeReport:
    """Feed a boundary family through T_g and watch the norms decay (or not).

    Reports per member the sampled ||T_g f_j|| (radial variant, capped at
    |w_j|), the closed-form witness lower bound
    (1-|w_j|^2)^alpha |f_j(w_j)| |Rg(w_j)|, and the Besov norm; a compact
    operator forces the values to vanish along the family, while a
    persistent lower bound certifies non-compactness.
    """
    if quad_spec is None:
        quad_spec = _default_quad_spec(params, scheme)
    family = boundary_family(params, moduli)
    mods, norms, lowers, besov = [], [], [], []
    for w, f in family:
        cap = float(np.linalg.norm(w))
        top = _weighted_product_sup(g, f, params.alpha, scheme, radius_cap=cap, extra_points=[w])
        wpt = w[None, :]
        lower = float(
            (1.0 - cap * cap) ** params.alpha
            * np.abs(f.evaluate(wpt))[0]
            * np.abs(radial_derivative_values(g, wpt))[0]
        )
        mods.append(cap)
        norms.append(top)
        lowers.append(lower)
        besov.append(besov_norm_info(f, params, quad_spec).value)
    decay = norms[-1] < 0.1 * norms[0]
    return ProbeReport(
        kind="compactness_probe",
        params=params,
        symbol=_symbol_label(g),
        moduli=tuple(mods),
        operator_norms=tuple(norms),
        lower_bounds=tuple(lowers),
        besov_norms=tuple(besov),
        flags={
            "decays": bool(decay),
            "final_over_initial": norms[-1] / norms[0] if norms[0] > 0 else float("inf"),
            "tail_lower_bound": lowers[-1],
        },
    )


# -- verification checks ----------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a sampled inequality check."""

    name: str
    max_ratio: float
    ok: bool
    detail: dict = field(default_factory=dict)


def check_embedding_bound(
    f,
    params: SpaceParams,
    scheme: SamplingScheme,
    r0: float = 0.5,
    quad_spec: BallIntegralSpec | None = None,
    tol: float = 1e-6,
) -> CheckReport:
    """Sampled check of the pointwise embedding bound for B(p, q):

        |Rf(a)|^p (1-|a|^2)^(n+1+q) <= 4^(n+1) r0^(-2n) ((1+r0)/(1-r0))^|q| ||f||^p.

    Returns the largest sampled ratio of left to right side; ok means it
    stays below 1 + tol.
    """
    if not 0.0 < r0 < 1.0:
        raise InvalidParameter(f"r0 must lie in (0, 1), got {r0}")
    if quad_spec is None:
        quad_spec = _default_quad_spec(params, scheme)
    norm_value = besov_norm_info(f, params, quad_spec).value
    constant = (
        4.0 ** (params.n + 1)
        * r0 ** (-2 * params.n)
        * ((1.0 + r0) / (1.0 - r0)) ** abs(params.q)
    )
    bound = constant * norm_value ** params.p
    pts = scheme.grid_points(params.n)
    lhs = np.abs(radial_derivative_values(f, pts)) ** params.p * (
        1.0 - np.sum(np.abs(pts) ** 2, axis=1)
    ) ** (params.n + 1.0 + params.q)
    max_ratio = float(lhs.max() / bound)
    return CheckReport(
        name="embedding_bound",
        max_ratio=max_ratio,
        ok=max_ratio <= 1.0 + tol,
        detail={
            "constant": constant,
            "besov_norm": norm_value,
            "r0": r0,
            "samples": int(len(pts)),
        },
    )


def check_growth_bound(
    f,
    p: float,
    scheme: SamplingScheme,
) -> CheckReport:
    """Sampled check of |f(z)| <= C(p, z) ||f||_(Bloch-p) on the scan grid.

    The Bloch-p norm is sampled on the same grid, which contains the full
    radial ray through every test point, matching how the bound is
    produced (integration along rays).
    """
    norm_value = bloch_norm(f, p, scheme, variant="gradient")
    pts = scheme.grid_points(f.dimension)
    envelope = growth_bound_constant(p, pts)
    values = np.abs(f.evaluate(pts))
    ratios = values / (envelope * norm_value)
    max_ratio = float(ratios.max())
    return CheckReport(
        name="growth_bound",
        max_ratio=max_ratio,
        ok=max_ratio <= 1.0,
        detail={"bloch_norm": norm_value, "p": p, "samples": int(len(pts))},
    )


def log_kernel_ratio(z, t: float, spec: BallIntegralSpec,
                     kernel_form: str = "oscillatory") -> float:
    """I_t(z) / (log 1/(1-|z|^2))^2 for the weighted log-kernel integral

        I_t(z) = int_B |log 1/(1-<z,w>)|^2 (1-|w|^2)^t / (1-<z,w>)^(n+1+t) dv(w).

    With the oscillatory denominator (1-<z,w>)^(n+1+t) the integral comes
    out real (the rotation average is conjugate-symmetric) and the ratio
    stays bounded as |z| -> 1, which is the behaviour the boundedness
    criteria rest on.  ``kernel_form="modulus"`` replaces the denominator
    by |1-<z,w>|^(n+1+t); discarding the phase costs one extra logarithm
    and that ratio grows like log 1/(1-|z|^2) instead.  Both forms are
    exposed so the growth-class gap is itself testable; the exact-series
    oracle in the test suite pins each one.

    The integrand is zonal in w, so the disc-reduction rule is used; it
    stays sharp near |z| = 1 where Monte Carlo variance blows up with the
    kernel.
    """
    if spec.weight != t:
        raise InvalidParameter(f"spec weight {spec.weight} differs from t {t}")
    if kernel_form not in ("oscillatory", "modulus"):
        raise InvalidParameter(f"unknown kernel form {kernel_form!r}")
    z = np.asarray(z, dtype=complex)
    radius = float(np.linalg.norm(z))
    if radius == 0.0:
        raise DomainError("the normalizing factor vanishes at z = 0")
    if radius >= 1.0:
        raise DomainError(f"z must lie inside the ball, |z|={radius:.6g}")
    n = spec.dimension
    exponent = n + 1.0 + t

    if kernel_form == "modulus":
        def kernel(zeta):
            one_minus = 1.0 - zeta
            return np.abs(np.log(one_minus)) ** 2 / np.abs(one_minus) ** exponent
    else:
        def kernel(zeta):
            one_minus = 1.0 - zeta
            return np.abs(np.log(one_minus)) ** 2 / one_minus ** exponent

    value = zonal_ball_integral(
        kernel,
        radius,
        n,
        t,
        radial_order=spec.radial_order,
        angular_order=spec.sphere_samples,
    )
    if isinstance(value, complex):
        value = value.real
    return value / math.log(1.0 / (1.0 - radius * radius)) ** 2


def sup_decay_scan(functions, scheme: SamplingScheme) -> CheckReport:
    """Sampled sup |f_j| per member, with a decay flag for the tail.

    Methodology probe for norm-convergence arguments: a sequence tending
    to zero uniformly on compacts shows decaying sampled sups once the
    grid radii are fixed.
    """
    sups = []
    for f in functions:
        pts = scheme.grid_points(f.dimension)
        sups.append(float(np.abs(f.evaluate(pts)).max()))
    decay = bool(sups[-1] < 0.1 * sups[0]) if sups else False
    return CheckReport(
        name="sup_decay",
        max_ratio=sups[-1] / sups[0] if sups and sups[0] > 0 else float("inf"),
        ok=decay,
        detail={"sups": sups},
    )
