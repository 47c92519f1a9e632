"""Generalized Besov norms and Bloch-type seminorms on the unit ball.

The Besov space B(p, q), p > 0, q > -1, carries the norm

    ||f|| = |f(0)| + ( int_B |grad f|^p (1 - |z|^2)^q dv )^(1/p),

and the Bloch-type space with exponent alpha >= 0 the seminorm

    sup_z (1 - |z|^2)^alpha |grad f(z)|        (gradient variant)
    sup_z (1 - |z|^2)^alpha |Rf(z)|            (radial variant),

with norm |f(0)| + seminorm in both variants.  Suprema are sampled on
deterministic grids and therefore reported as lower bounds together
with a per-refinement-level trace.

Functions enter through a small protocol: anything exposing
``dimension``, ``evaluate(points)`` and ``gradient_at(points)``
vectorized over (N, n) arrays works, in particular TruncatedSeries and
AnalyticFunction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ball import SamplingScheme
from .errors import DimensionMismatch, DomainError, InvalidParameter
from .quadrature import BallIntegralSpec, ball_integral


@dataclass(frozen=True)
class SpaceParams:
    """Dimension and exponents (n, p, q, alpha) shared across the lab."""

    n: int
    p: float
    q: float
    alpha: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidParameter(f"n must be a positive integer, got {self.n!r}")
        if not self.p > 0:
            raise InvalidParameter(f"p must be positive, got {self.p}")
        if not self.q > -1:
            raise InvalidParameter(f"q must exceed -1, got {self.q}")
        if not self.alpha >= 0:
            raise InvalidParameter(f"alpha must be >= 0, got {self.alpha}")

    @property
    def embedding_exponent(self) -> float:
        """The exponent (n + 1 + q) / p steering the boundedness criteria."""
        return (self.n + 1.0 + self.q) / self.p


@dataclass(frozen=True)
class AnalyticFunction:
    """Closed-form holomorphic function with an explicit gradient.

    ``value_fn`` maps a (N, n) complex array to (N,) complex values and
    ``gradient_fn`` to (N, n) complex gradients.
    """

    dimension: int
    value_fn: Callable[[np.ndarray], np.ndarray]
    gradient_fn: Callable[[np.ndarray], np.ndarray]
    label: str = ""

    def _as_points(self, z):
        pts = np.atleast_2d(np.asarray(z, dtype=complex))
        if pts.shape[-1] != self.dimension:
            raise DimensionMismatch(
                f"point has {pts.shape[-1]} coordinates, function has dimension {self.dimension}"
            )
        return pts, np.asarray(z).ndim == 1

    def evaluate(self, z):
        pts, single = self._as_points(z)
        vals = np.asarray(self.value_fn(pts), dtype=complex)
        return vals[0] if single else vals

    def gradient_at(self, z):
        pts, single = self._as_points(z)
        grad = np.asarray(self.gradient_fn(pts), dtype=complex)
        return grad[0] if single else grad


def gp_weight(p: float, z) -> float | np.ndarray:
    """The boundary weight G_p: 1 for p < 1, log(2/(1-|z|^2)) at p = 1,
    (1 - |z|^2)^-(p-1) for p > 1.

    Accepts a single point (n,) or a batch (N, n).
    """
    pts = np.atleast_2d(np.asarray(z, dtype=complex))
    s = 1.0 - np.sum(np.abs(pts) ** 2, axis=1)
    out = _gp_from_complement(p, s)
    return float(out[0]) if np.asarray(z).ndim == 1 else out


def gp_weight_at_radius(p: float, r) -> float | np.ndarray:
    """G_p as a function of |z| alone (it is radial)."""
    r = np.asarray(r, dtype=float)
    out = _gp_from_complement(p, 1.0 - r * r)
    return float(out) if out.ndim == 0 else out


def _gp_from_complement(p: float, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0.0):
        raise DomainError("point must lie strictly inside the ball")
    if not p > 0:
        raise InvalidParameter(f"p must be positive, got {p}")
    if p < 1.0:
        return np.ones_like(s)
    if p == 1.0:
        return np.log(2.0 / s)
    return s ** (1.0 - p)


def growth_bound_constant(p: float, z) -> float | np.ndarray:
    """Pointwise envelope constant C(p, z) with |f(z)| <= C(p, z) ||f||_(Bloch-p).

    Branch values come from integrating (1 - t^2)^-p along the ray to z:
    1 + 1/(1-p) for p < 1; 1 + log(4/(1-|z|^2))/2 at p = 1;
    1 + 2^(p-1) / ((p-1)(1-|z|^2)^(p-1)) for p > 1.
    """
    if not p > 0:
        raise InvalidParameter(f"p must be positive, got {p}")
    pts = np.atleast_2d(np.asarray(z, dtype=complex))
    s = 1.0 - np.sum(np.abs(pts) ** 2, axis=1)
    if np.any(s <= 0.0):
        raise DomainError("point must lie strictly inside the ball")
    if p < 1.0:
        out = np.full_like(s, 1.0 + 1.0 / (1.0 - p))
    elif p == 1.0:
        out = 1.0 + 0.5 * np.log(4.0 / s)
    else:
        out = 1.0 + (2.0 ** (p - 1.0)) / ((p - 1.0) * s ** (p - 1.0))
    return float(out[0]) if np.asarray(z).ndim == 1 else out


@dataclass(frozen=True)
class BesovNormInfo:
    """Full norm |f(0)| + seminorm with the quadrature error estimate."""

    value: float
    seminorm: float
    origin_value: float
    quad_error: float


def _check_function_params(f, params: SpaceParams) -> None:
    if f.dimension != params.n:
        raise DimensionMismatch(
            f"function dimension {f.dimension} differs from params.n {params.n}"
        )


def besov_norm_info(f, params: SpaceParams, spec: BallIntegralSpec) -> BesovNormInfo:
    """Besov norm of f in B(p, q) via ball quadrature of |grad f|^p."""
    _check_function_params(f, params)
    if spec.dimension != params.n:
        raise InvalidParameter(
            f"quadrature dimension {spec.dimension} differs from params.n {params.n}"
        )
    if spec.weight != params.q:
        raise InvalidParameter(
            f"quadrature weight {spec.weight} differs from params.q {params.q}"
        )

    p = params.p

    def integrand(pts):
        grad = f.gradient_at(pts)
        return np.linalg.norm(grad, axis=1) ** p

    result = ball_integral(integrand, spec)
    integral = max(result.value, 0.0)
    seminorm = integral ** (1.0 / p)
    # first-order propagation of the quadrature error through x -> x^(1/p)
    if integral > 0.0:
        semi_error = result.error * seminorm / (p * integral)
    else:
        semi_error = result.error ** (1.0 / p)
    origin = abs(complex(f.evaluate(np.zeros(params.n, dtype=complex))))
    return BesovNormInfo(
        value=origin + seminorm,
        seminorm=seminorm,
        origin_value=origin,
        quad_error=float(semi_error),
    )


def besov_norm(f, params: SpaceParams, spec: BallIntegralSpec) -> float:
    return besov_norm_info(f, params, spec).value


@dataclass(frozen=True)
class SupremumScan:
    """Sampled supremum (a lower bound) with its cumulative refinement trace."""

    value: float
    trace: tuple[float, ...]
    variant: str
    alpha: float
    grid_points: int


def radial_derivative_values(f, pts: np.ndarray) -> np.ndarray:
    """Rf(z) = sum_j z_j d_j f(z) evaluated from the gradient, batched."""
    grad = f.gradient_at(pts)
    return np.einsum("ij,ij->i", pts, grad)


def bloch_seminorm(
    f,
    alpha: float,
    scheme: SamplingScheme,
    variant: str = "gradient",
) -> SupremumScan:
    """Sampled Bloch-type seminorm sup (1-|z|^2)^alpha |grad f| (or |Rf|).

    The scan covers radial_grid x (axis directions + random sphere
    samples); each refinement level doubles the random samples and the
    reported value is the running maximum, so the trace never decreases.
    """
    if variant not in ("gradient", "radial"):
        raise InvalidParameter(f"variant must be gradient or radial, got {variant!r}")
    if not alpha >= 0:
        raise InvalidParameter(f"alpha must be >= 0, got {alpha}")
    best = 0.0
    trace = []
    total_points = 0
    radii = np.asarray(scheme.radial_grid)
    for level in range(scheme.refinement_levels):
        dirs = scheme.directions(f.dimension, level)
        total_points += len(radii) * len(dirs)
        for r in radii:
            pts = r * dirs
            if variant == "gradient":
                magnitude = np.linalg.norm(f.gradient_at(pts), axis=1)
            else:
                magnitude = np.abs(radial_derivative_values(f, pts))
            level_max = float(((1.0 - r * r) ** alpha) * magnitude.max())
            best = max(best, level_max)
        trace.append(best)
    return SupremumScan(
        value=best,
        trace=tuple(trace),
        variant=variant,
        alpha=float(alpha),
        grid_points=total_points,
    )


def bloch_norm(
    f,
    alpha: float,
    scheme: SamplingScheme,
    variant: str = "gradient",
) -> float:
    """|f(0)| plus the sampled seminorm."""
    scan = bloch_seminorm(f, alpha, scheme, variant=variant)
    origin = abs(complex(f.evaluate(np.zeros(f.dimension, dtype=complex))))
    return origin + scan.value
