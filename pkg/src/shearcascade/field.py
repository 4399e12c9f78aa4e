"""Spectral coefficient vectors, band projections, exact norms, grid transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .basis import Basis
from .grid import Grid, TransformPlan

__all__ = [
    "SpectralField",
    "PhysicalField",
    "Band",
    "band_project",
    "norms",
    "inner",
    "to_physical",
    "from_physical",
    "random_field",
]


class SpectralField:
    """A velocity fluctuation as real coefficients over the ordered mode set."""

    __slots__ = ("basis", "coeff")

    def __init__(self, basis: Basis, coeff=None):
        self.basis = basis
        if coeff is None:
            coeff = np.zeros(basis.n_modes)
        coeff = np.asarray(coeff, dtype=float)
        if coeff.shape != (basis.n_modes,):
            raise ValueError(f"coefficient vector must have shape ({basis.n_modes},), got {coeff.shape}")
        self.coeff = coeff

    def copy(self) -> "SpectralField":
        return SpectralField(self.basis, self.coeff.copy())

    def __add__(self, other):
        return SpectralField(self.basis, self.coeff + other.coeff)

    def __sub__(self, other):
        return SpectralField(self.basis, self.coeff - other.coeff)

    def __mul__(self, scalar):
        return SpectralField(self.basis, self.coeff * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class PhysicalField:
    """Velocity samples on the collocation grid, shape (3, nx, ny, nz)."""

    grid: Grid
    values: np.ndarray


@dataclass(frozen=True)
class Band:
    """Half-open horizontal-wavenumber range [lo, hi); hi may be inf."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo > 0.0):
            raise ValueError(f"Band.lo must be positive, got {self.lo!r}")
        if not (self.lo < self.hi):
            raise ValueError(f"Band needs lo < hi, got [{self.lo}, {self.hi})")


def band_mask(basis: Basis, band: Band) -> np.ndarray:
    return (basis.kh >= band.lo) & (basis.kh < band.hi)


def band_project(u: SpectralField, band: Band) -> SpectralField:
    """Zero every coefficient whose mode sits outside the band.

    Idempotent; a band and its complement partition the identity exactly,
    and disjoint bands produce orthogonal fields.
    """
    if band.lo < u.basis.kh_min * (1.0 - 1e-9):
        raise ValueError(
            f"band starts below the smallest horizontal wavenumber {u.basis.kh_min:.6g}"
        )
    out = np.where(band_mask(u.basis, band), u.coeff, 0.0)
    return SpectralField(u.basis, out)


class NormData(NamedTuple):
    E: float      # squared L2 norm
    G: float      # squared gradient norm, exactly Gxy + Gz
    Gxy: float    # squared horizontal-gradient norm
    Gz: float     # squared vertical-derivative norm


def norms(u: SpectralField) -> NormData:
    """Diagonal Parseval sums of the field and its gradient.

    E = sum c^2, Gxy = sum kh^2 c^2, Gz = sum kz^2 c^2, and G is formed as
    Gxy + Gz so the split additivity is exact by construction; it agrees
    with sum lam c^2 to rounding.
    """
    c2 = u.coeff * u.coeff
    e = float(np.sum(c2))
    gxy = float(np.sum(u.basis.kh**2 * c2))
    gz = float(np.sum(u.basis.kz**2 * c2))
    return NormData(E=e, G=gxy + gz, Gxy=gxy, Gz=gz)


def inner(u: SpectralField, v: SpectralField) -> float:
    """L2 inner product via Parseval."""
    return float(np.dot(u.coeff, v.coeff))


def to_physical(u: SpectralField, plan: TransformPlan) -> PhysicalField:
    return PhysicalField(grid=plan.grid, values=plan.synthesize(u.coeff))


def from_physical(p: PhysicalField, plan: TransformPlan) -> SpectralField:
    """L2-orthogonal projection of grid data onto the basis span.

    Exact inverse of to_physical on the span (the grid rules make the
    quadrature exact for products of basis components).
    """
    if p.grid != plan.grid:
        raise ValueError("physical field and plan use different grids")
    return SpectralField(plan.basis, plan.project(p.values))


def random_field(basis: Basis, rng: np.random.Generator, kinetic_energy: float) -> SpectralField:
    """Seeded broad-band field with coefficients ~ kh^(-5/6) lam^(-1/4).

    Scaled so the kinetic energy per unit mass, kappa1^3 ||u||^2 / 2,
    matches the requested value.
    """
    shape = basis.kh ** (-5.0 / 6.0) * basis.eigenvalue ** (-0.25)
    coeff = rng.standard_normal(basis.n_modes) * shape
    e = float(np.sum(coeff * coeff))
    if e > 0.0:
        target = 2.0 * kinetic_energy / basis.domain.kappa1**3
        coeff *= np.sqrt(target / e)
    return SpectralField(basis, coeff)
