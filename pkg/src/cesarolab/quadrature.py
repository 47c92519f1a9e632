"""Quadrature on the unit ball of C^n with weight (1 - |w|^2)^q.

All integrals use the volume measure normalized so the ball has measure
one.  In polar form, with sigma the normalized surface measure on the
unit sphere,

    int_B F dv = 2n int_0^1 r^(2n-1) int_S F(r xi) dsigma(xi) dr,

so every rule here factors into a radial rule and a spherical rule.
The radial factor absorbs the weight through the substitution u = r^2,

    2n int_0^1 r^(2n-1) (1-r^2)^q h(r) dr = n int_0^1 u^(n-1) (1-u)^q h(sqrt(u)) du,

which is handled exactly for polynomial h by Gauss-Jacobi nodes.  The
spherical factor is either a seeded Monte Carlo average or, for n = 1,
the trapezoid rule on the circle (spectrally accurate).

Integrands are vectorized callables: F applied to a (N, n) complex array
of points must return a (N,) real array.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_jacobi

from .errors import (
    AccuracyFailure,
    DomainError,
    EvaluationFailure,
    InvalidParameter,
)

#: Samples are drawn and reduced in fixed-size chunks so results do not
#: depend on how many worker threads consume them.
_CHUNK = 1 << 18

_THREADS_ENV = "CESAROLAB_THREADS"


def _worker_count() -> int:
    raw = os.environ.get(_THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParameter(f"{_THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


@dataclass(frozen=True)
class BallIntegralSpec:
    """How to integrate over the ball: dimension, weight and rules.

    rule "product" tensorizes the radial rule with the trapezoid rule on
    the circle and is only available for n = 1; "mc" uses seeded Monte
    Carlo sphere averages; "auto" picks product for n = 1 and mc above.
    For the product rule ``sphere_samples`` is the number of angular
    nodes.
    """

    dimension: int
    weight: float = 0.0
    rule: str = "auto"
    sphere_samples: int = 100_000
    radial_order: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidParameter(f"dimension must be >= 1, got {self.dimension}")
        if not self.weight > -1.0:
            raise DomainError(f"weight exponent must exceed -1, got {self.weight}")
        if self.rule not in ("auto", "mc", "product"):
            raise InvalidParameter(f"rule must be auto, mc or product, got {self.rule!r}")
        if self.rule == "product" and self.dimension != 1:
            raise InvalidParameter("the product rule is only available for dimension 1")
        if self.sphere_samples < 1:
            raise InvalidParameter("sphere_samples must be >= 1")
        if self.radial_order < 1:
            raise InvalidParameter("radial_order must be >= 1")

    @property
    def resolved_rule(self) -> str:
        if self.rule != "auto":
            return self.rule
        return "product" if self.dimension == 1 else "mc"


@dataclass(frozen=True)
class IntegralResult:
    """Value of an integral plus an error estimate and the node count."""

    value: float
    error: float
    evaluations: int


@lru_cache(maxsize=256)
def _radial_rule(dimension: int, weight: float, order: int):
    """Radii and weights with sum_i lam_i h(r_i) ~ 2n int r^(2n-1)(1-r^2)^q h dr."""
    x, w = roots_jacobi(order, weight, dimension - 1)
    u = 0.5 * (x + 1.0)
    radii = np.sqrt(u)
    lam = dimension * (2.0 ** -(dimension + weight)) * w
    return radii, lam


def _check_finite(values: np.ndarray, points: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationFailure(
            f"integrand returned {values[i]!r} at node {points[i]}", node=points[i]
        )


def _ray_sums(integrand, xi: np.ndarray, radii: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Per-direction radial sums S(xi) = sum_i lam_i F(r_i xi)."""
    out = np.zeros(xi.shape[0])
    for r, l in zip(radii, lam):
        pts = r * xi
        vals = np.asarray(integrand(pts), dtype=float)
        _check_finite(vals, pts)
        out += l * vals
    return out


def ball_integral(integrand, spec: BallIntegralSpec) -> IntegralResult:
    """Integral of a real integrand against (1 - |w|^2)^q dv over the ball.

    Monte Carlo results come with a statistical standard error; the
    product rule reports the defect against its halved angular rule.
    Identical spec (including seed) gives bitwise identical output.
    """
    radii, lam = _radial_rule(spec.dimension, spec.weight, spec.radial_order)
    n_eval = spec.sphere_samples * spec.radial_order

    if spec.resolved_rule == "product":
        m = spec.sphere_samples
        xi = np.exp(2j * np.pi * np.arange(m) / m)[:, None]
        sums = _ray_sums(integrand, xi, radii, lam)
        value = float(sums.mean())
        coarse = float(sums[::2].mean()) if m >= 2 else value
        return IntegralResult(value=value, error=abs(value - coarse), evaluations=n_eval)

    # Monte Carlo: fixed-size chunks with independent spawned substreams,
    # reduced in chunk order, so values do not depend on the thread count.
    total = spec.sphere_samples
    n_chunks = (total + _CHUNK - 1) // _CHUNK
    seeds = np.random.SeedSequence(spec.seed).spawn(n_chunks)
    sizes = [min(_CHUNK, total - i * _CHUNK) for i in range(n_chunks)]

    def one_chunk(args):
        size, child = args
        rng = np.random.Generator(np.random.Philox(child))
        raw = rng.standard_normal((size, 2 * spec.dimension))
        xi = raw[:, : spec.dimension] + 1j * raw[:, spec.dimension :]
        xi /= np.linalg.norm(xi, axis=1, keepdims=True)
        sums = _ray_sums(integrand, xi, radii, lam)
        return float(sums.sum()), float(np.sum(sums * sums))

    jobs = list(zip(sizes, seeds))
    workers = _worker_count()
    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_chunk, jobs))
    else:
        parts = [one_chunk(j) for j in jobs]

    acc = sum(p[0] for p in parts)
    acc_sq = sum(p[1] for p in parts)
    mean = acc / total
    if total > 1:
        variance = max(acc_sq / total - mean * mean, 0.0) * total / (total - 1)
        stderr = math.sqrt(variance / total)
    else:
        stderr = float("inf")
    return IntegralResult(value=float(mean), error=float(stderr), evaluations=n_eval)


def monomial_ball_integral(dimension: int, m: int, t: float) -> float:
    """Closed form of int_B |<z, w>|^(2m) (1-|w|^2)^t dv(w) at |z| = 1.

    Equals Gamma(t+1) Gamma(m+1) n! / Gamma(n+1+t+m); multiply by |z|^(2m)
    for general z.  Serves as the exact oracle for the ball rules.
    """
    if dimension < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {dimension}")
    if m < 1:
        raise InvalidParameter(f"monomial power m must be >= 1, got {m}")
    if not t > -1.0:
        raise DomainError(f"weight exponent must exceed -1, got {t}")
    log_value = (
        gammaln(t + 1.0)
        + gammaln(m + 1.0)
        + gammaln(dimension + 1.0)
        - gammaln(dimension + 1.0 + t + m)
    )
    return float(np.exp(log_value))


@lru_cache(maxsize=64)
def _legendre_rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def path_integral_unit(integrand, abs_tol: float = 1e-10, max_order: int = 4096) -> complex:
    """int_0^1 F(t) dt for a complex-valued F vectorized over t arrays.

    Gauss-Legendre with doubling order until two successive estimates
    agree within abs_tol; raises AccuracyFailure (carrying the best
    estimate) if max_order is reached without convergence.
    """
    previous = None
    value = None
    order = 16
    while order <= max_order:
        t, w = _legendre_rule(order)
        vals = np.asarray(integrand(t), dtype=complex)
        if not np.isfinite(vals).all():
            i = int(np.argmax(~np.isfinite(vals)))
            raise EvaluationFailure(f"path integrand not finite at t={t[i]}", node=t[i])
        value = complex(np.sum(w * vals))
        if previous is not None and abs(value - previous) <= abs_tol:
            return value
        previous = value
        order *= 2
    raise AccuracyFailure(
        f"path integral did not reach abs_tol={abs_tol} at order {max_order}",
        best_estimate=value,
        error_estimate=abs(value - previous) if previous is not None else None,
    )


def zonal_ball_integral(
    kernel,
    radius: float,
    dimension: int,
    t: float,
    radial_order: int = 128,
    angular_order: int = 4096,
) -> float | complex:
    """int_B K(<z, w>) (1-|w|^2)^t dv(w) for zonal kernels, |z| = radius.

    A kernel depending on w only through <z, w> reduces to the unit disc:

        int_B K(<z,w>) (1-|w|^2)^t dv(w)
            = n! Gamma(t+1)/Gamma(n+t) * (1/pi) int_D K(radius * u) (1-|u|^2)^(n+t-1) dA(u),

    checked against the monomial closed form.  The disc integral uses
    Gauss-Jacobi in |u|^2 times the trapezoid rule in arg(u), which stays
    accurate for boundary-concentrated kernels where plain Monte Carlo
    variance explodes.  ``kernel`` maps a complex array to a real or
    complex array; a complex kernel yields a complex result.
    """
    if not 0.0 <= radius < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {radius}")
    if not t > -1.0:
        raise DomainError(f"weight exponent must exceed -1, got {t}")
    a = dimension + t - 1.0
    x, w = roots_jacobi(radial_order, a, 0.0)
    v = 0.5 * (x + 1.0)
    lam = (2.0 ** -(a + 1.0)) * w
    ring = np.exp(2j * np.pi * np.arange(angular_order) / angular_order)
    reduction = float(
        np.exp(gammaln(dimension + 1.0) + gammaln(t + 1.0) - gammaln(dimension + t))
    )
    total = 0.0
    for v_i, l_i in zip(v, lam):
        zeta = radius * np.sqrt(v_i) * ring
        vals = np.asarray(kernel(zeta))
        _check_finite(vals, zeta)
        total = total + l_i * vals.mean()
    value = reduction * total
    return complex(value) if np.iscomplexobj(value) else float(value)
