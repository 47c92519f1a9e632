"""Sparse truncated power series on the unit ball of C^n.

A series is a finite linear combination of monomials z^alpha with
multi-index exponents, stored as a mapping from exponent tuples to
complex coefficients:

    3 + z1^2 z2  ->  {(0, 0): (3+0j), (2, 1): (1+0j)}

Coefficients that are exactly zero are never stored, every exponent
tuple has one entry per variable, and no stored order exceeds the
degree cap, so two series are equal iff their dictionaries are equal.
Instances are immutable; every operation returns a new series.

The radial derivative R acts diagonally on this representation,
R(z^alpha) = |alpha| z^alpha with |alpha| the total order, which is why
coefficient-level identities involving R can be checked exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionMismatch, InvalidParameter

Exponent = tuple[int, ...]


def _total_order(alpha: Exponent) -> int:
    return int(sum(alpha))


class TruncatedSeries:
    """Immutable sparse polynomial in n complex variables."""

    __slots__ = ("_dimension", "_degree_cap", "_terms")

    def __init__(
        self,
        dimension: int,
        terms: Mapping[Exponent, complex] | Iterable[tuple[Exponent, complex]] = (),
        degree_cap: int | None = None,
    ):
        if not isinstance(dimension, (int, np.integer)) or dimension < 1:
            raise InvalidParameter(f"dimension must be a positive integer, got {dimension!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, complex] = {}
        for alpha, coeff in items:
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dimension:
                raise DimensionMismatch(
                    f"exponent {alpha} has {len(alpha)} entries, expected {dimension}"
                )
            if any(a < 0 for a in alpha):
                raise InvalidParameter(f"negative exponent in {alpha}")
            coeff = complex(coeff)
            if coeff != 0:
                clean[alpha] = clean.get(alpha, 0j) + coeff
        clean = {a: c for a, c in clean.items() if c != 0}
        content_degree = max((_total_order(a) for a in clean), default=0)
        if degree_cap is None:
            degree_cap = content_degree
        degree_cap = int(degree_cap)
        if degree_cap < 0:
            raise InvalidParameter(f"degree_cap must be >= 0, got {degree_cap}")
        if content_degree > degree_cap:
            raise InvalidParameter(
                f"term of order {content_degree} exceeds degree_cap {degree_cap}"
            )
        self._dimension = int(dimension)
        self._degree_cap = degree_cap
        self._terms = clean

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, dimension: int) -> "TruncatedSeries":
        return cls(dimension)

    @classmethod
    def constant(cls, dimension: int, value: complex) -> "TruncatedSeries":
        return cls(dimension, {(0,) * dimension: complex(value)})

    @classmethod
    def coordinate(cls, dimension: int, index: int = 0) -> "TruncatedSeries":
        """The coordinate function z_{index} (0-based index)."""
        if not 0 <= index < dimension:
            raise InvalidParameter(f"index {index} out of range for dimension {dimension}")
        alpha = tuple(1 if j == index else 0 for j in range(dimension))
        return cls(dimension, {alpha: 1.0 + 0j})

    @classmethod
    def monomial(cls, dimension: int, alpha: Exponent, coefficient: complex = 1.0) -> "TruncatedSeries":
        return cls(dimension, {tuple(alpha): complex(coefficient)})

    # -- basic structure -------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def degree_cap(self) -> int:
        return self._degree_cap

    @property
    def terms(self) -> Mapping[Exponent, complex]:
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> int:
        """Largest total order actually present (0 for the zero series)."""
        return max((_total_order(a) for a in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._dimension == other._dimension and self._terms == other._terms

    def __repr__(self) -> str:
        return (
            f"TruncatedSeries(dimension={self._dimension}, "
            f"degree_cap={self._degree_cap}, terms={len(self._terms)})"
        )

    # -- arithmetic ------------------------------------------------------------

    def _check_same_dimension(self, other: "TruncatedSeries") -> None:
        if self._dimension != other._dimension:
            raise DimensionMismatch(
                f"dimensions differ: {self._dimension} vs {other._dimension}"
            )

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_same_dimension(other)
        merged = dict(self._terms)
        for alpha, coeff in other._terms.items():
            merged[alpha] = merged.get(alpha, 0j) + coeff
        cap = max(self._degree_cap, other._degree_cap)
        return TruncatedSeries(self._dimension, merged, degree_cap=cap)

    def scale(self, factor: complex) -> "TruncatedSeries":
        factor = complex(factor)
        return TruncatedSeries(
            self._dimension,
            {a: factor * c for a, c in self._terms.items()},
            degree_cap=self._degree_cap,
        )

    def multiply(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Product series; the result cap is the sum of the actual degrees."""
        self._check_same_dimension(other)
        prod: dict[Exponent, complex] = {}
        for a1, c1 in self._terms.items():
            for a2, c2 in other._terms.items():
                key = tuple(x + y for x, y in zip(a1, a2))
                prod[key] = prod.get(key, 0j) + c1 * c2
        return TruncatedSeries(self._dimension, prod, degree_cap=self.degree + other.degree)

    def truncate(self, degree_cap: int) -> "TruncatedSeries":
        """Drop all terms of total order above degree_cap (explicit, never silent)."""
        kept = {a: c for a, c in self._terms.items() if _total_order(a) <= degree_cap}
        return TruncatedSeries(self._dimension, kept, degree_cap=degree_cap)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.add(other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.add(other.scale(-1.0))
        return NotImplemented

    def __neg__(self):
        return self.scale(-1.0)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.multiply(other)
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    # -- calculus --------------------------------------------------------------

    def radial_derivative(self) -> "TruncatedSeries":
        """Rf = sum_j z_j df/dz_j, acting as alpha -> |alpha| alpha on coefficients."""
        return TruncatedSeries(
            self._dimension,
            {a: _total_order(a) * c for a, c in self._terms.items() if _total_order(a) > 0},
            degree_cap=self._degree_cap,
        )

    def partial_derivative(self, index: int) -> "TruncatedSeries":
        if not 0 <= index < self._dimension:
            raise InvalidParameter(f"index {index} out of range for dimension {self._dimension}")
        out: dict[Exponent, complex] = {}
        for alpha, coeff in self._terms.items():
            k = alpha[index]
            if k > 0:
                lowered = tuple(a - 1 if j == index else a for j, a in enumerate(alpha))
                out[lowered] = out.get(lowered, 0j) + k * coeff
        cap = max(self._degree_cap - 1, 0)
        return TruncatedSeries(self._dimension, out, degree_cap=cap)

    # -- evaluation ------------------------------------------------------------

    def _as_points(self, z) -> tuple[np.ndarray, bool]:
        pts = np.atleast_2d(np.asarray(z, dtype=complex))
        if pts.shape[-1] != self._dimension:
            raise DimensionMismatch(
                f"point has {pts.shape[-1]} coordinates, series has dimension {self._dimension}"
            )
        single = np.asarray(z).ndim == 1
        return pts, single

    def evaluate(self, z):
        """Value at a point (n,) or batch (N, n); returns a scalar or (N,) array."""
        pts, single = self._as_points(z)
        out = np.zeros(pts.shape[0], dtype=complex)
        for alpha, coeff in self._terms.items():
            out += coeff * np.prod(pts ** np.asarray(alpha), axis=1)
        return out[0] if single else out

    def gradient_at(self, z):
        """Holomorphic gradient at a point (n,) or batch (N, n)."""
        pts, single = self._as_points(z)
        grad = np.zeros(pts.shape, dtype=complex)
        for alpha, coeff in self._terms.items():
            for j, k in enumerate(alpha):
                if k > 0:
                    lowered = np.asarray(tuple(a - 1 if i == j else a for i, a in enumerate(alpha)))
                    grad[:, j] += k * coeff * np.prod(pts ** lowered, axis=1)
        return grad[0] if single else grad

    # -- file format -----------------------------------------------------------

    def to_payload(self) -> dict:
        """JSON-ready document; terms sorted by exponent for a canonical form."""
        return {
            "dimension": self._dimension,
            "degree_cap": self._degree_cap,
            "terms": [
                {"alpha": list(alpha), "re": coeff.real, "im": coeff.imag}
                for alpha, coeff in sorted(self._terms.items())
            ],
        }

    @classmethod
    def from_payload(cls, payload: Mapping) -> "TruncatedSeries":
        try:
            dimension = payload["dimension"]
            cap = payload["degree_cap"]
            raw = payload["terms"]
        except (KeyError, TypeError) as exc:
            raise InvalidParameter(f"malformed series document: missing {exc}") from None
        terms = {tuple(t["alpha"]): complex(t["re"], t["im"]) for t in raw}
        return cls(dimension, terms, degree_cap=cap)

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_payload(), indent=2, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> "TruncatedSeries":
        return cls.from_payload(json.loads(Path(path).read_text()))


def random_series(
    dimension: int,
    degree: int,
    n_terms: int,
    seed: int | np.random.Generator = 0,
) -> TruncatedSeries:
    """Random sparse series with complex Gaussian coefficients, deterministic per seed."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed))
    )
    terms: dict[Exponent, complex] = {}
    for _ in range(n_terms):
        order = int(rng.integers(0, degree + 1))
        alpha = np.zeros(dimension, dtype=int)
        for _ in range(order):
            alpha[rng.integers(0, dimension)] += 1
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        key = tuple(int(a) for a in alpha)
        terms[key] = terms.get(key, 0j) + coeff
    return TruncatedSeries(dimension, terms, degree_cap=degree)
