"""Geometry of the open unit ball of C^n.

Points are plain numpy arrays of n complex entries.  The Hermitian
inner product is <z, w> = sum_j z_j conj(w_j), so <z, w> is holomorphic
in z and |z|^2 = <z, z>.

Sphere sampling draws normalized complex Gaussian vectors from a
counter-based generator (Philox), so streams are reproducible and can
be split into disjoint deterministic substreams for parallel work.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidParameter, SingularInput

#: Coarse interior radii followed by the boundary-approach tail used by scans.
DEFAULT_RADIAL_GRID: tuple[float, ...] = (
    0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999, 0.9999,
)


def norm(z) -> float:
    """Euclidean length of a point of C^n."""
    return float(np.linalg.norm(np.asarray(z, dtype=complex)))


def inner(z, w) -> complex:
    """Hermitian inner product <z, w> = sum_j z_j conj(w_j)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return complex(np.sum(z * np.conj(w)))


def mobius(a, z) -> np.ndarray:
    """Involutive automorphism of the ball swapping 0 and a, evaluated at z.

    Built from the projection P onto the span of a and its complement Q:

        phi_a(z) = (a - P z - sqrt(1 - |a|^2) Q z) / (1 - <z, a>)
    """
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if a.shape != z.shape:
        raise DomainError(f"point shapes differ: {a.shape} vs {z.shape}")
    a_sq = float(np.sum(np.abs(a) ** 2))
    z_sq = float(np.sum(np.abs(z) ** 2))
    if a_sq >= 1.0:
        raise DomainError(f"automorphism center must lie inside the ball, |a|={np.sqrt(a_sq):.6g}")
    if z_sq >= 1.0:
        raise DomainError(f"point must lie inside the ball, |z|={np.sqrt(z_sq):.6g}")
    if a_sq == 0.0:
        return -z
    zdota = complex(np.sum(z * np.conj(a)))
    proj = (zdota / a_sq) * a
    orth = z - proj
    s = np.sqrt(1.0 - a_sq)
    return (a - proj - s * orth) / (1.0 - zdota)


def green(z, a) -> float:
    """Green-type function log(1 / |phi_a(z)|); positive, infinite at z = a."""
    image = mobius(a, z)
    r = float(np.linalg.norm(image))
    if r == 0.0:
        raise SingularInput("green function is singular at z = a")
    return float(-np.log(r))


def sample_sphere(dimension: int, count: int, seed: int) -> np.ndarray:
    """Deterministic pseudo-uniform samples on the unit sphere of C^n.

    Returns a (count, dimension) complex array of unit vectors obtained by
    normalizing complex Gaussian draws.
    """
    if dimension < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {dimension}")
    if count < 1:
        raise InvalidParameter(f"count must be >= 1, got {count}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    raw = rng.standard_normal((count, 2 * dimension))
    vec = raw[:, :dimension] + 1j * raw[:, dimension:]
    return vec / np.linalg.norm(vec, axis=1, keepdims=True)


def unit_directions(dimension: int) -> np.ndarray:
    """The 4n canonical directions +-e_j and +-i e_j.

    Scans append these to random sphere samples so that suprema attained
    along coordinate rays (where boundary kernels peak) are not missed.
    """
    eye = np.eye(dimension, dtype=complex)
    return np.concatenate([eye, -eye, 1j * eye, -1j * eye], axis=0)


@dataclass(frozen=True)
class SamplingScheme:
    """Deterministic grid specification for supremum scans.

    The scan grid at refinement level k consists of every radius in
    ``radial_grid`` times each direction in ``unit_directions(n)`` plus
    ``sphere_samples * 2**k`` seeded random sphere points.  Suprema over
    such grids are lower bounds for the true suprema; the per-level trace
    is cumulative, hence non-decreasing.
    """

    radial_grid: tuple[float, ...] = DEFAULT_RADIAL_GRID
    sphere_samples: int = 256
    seed: int = 0
    refinement_levels: int = 1

    def __post_init__(self):
        grid = tuple(float(r) for r in self.radial_grid)
        object.__setattr__(self, "radial_grid", grid)
        if not grid:
            raise InvalidParameter("radial_grid must be non-empty")
        if any(not 0.0 < r < 1.0 for r in grid):
            raise InvalidParameter(f"radii must lie strictly between 0 and 1, got {grid}")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidParameter("radial_grid must be strictly increasing")
        if self.sphere_samples < 1:
            raise InvalidParameter(f"sphere_samples must be >= 1, got {self.sphere_samples}")
        if self.refinement_levels < 1:
            raise InvalidParameter(f"refinement_levels must be >= 1, got {self.refinement_levels}")

    def directions(self, dimension: int, level: int = 0) -> np.ndarray:
        """Axis directions plus the level's random sphere samples."""
        children = np.random.SeedSequence(self.seed).spawn(level + 1)
        rng = np.random.Generator(np.random.Philox(children[level]))
        raw = rng.standard_normal((self.sphere_samples * (2 ** level), 2 * dimension))
        vec = raw[:, :dimension] + 1j * raw[:, dimension:]
        vec /= np.linalg.norm(vec, axis=1, keepdims=True)
        return np.concatenate([unit_directions(dimension), vec], axis=0)

    def grid_points(self, dimension: int, level: int = 0) -> np.ndarray:
        """All scan points r * xi as one (len(radial_grid) * M, dimension) array."""
        dirs = self.directions(dimension, level)
        radii = np.asarray(self.radial_grid)
        return (radii[:, None, None] * dirs[None, :, :]).reshape(-1, dimension)
