"""Flow box geometry, viscosity, and the derived smallest wavenumbers.

The box is periodic in x (streamwise) and y (spanwise) with periods Lx and
Ly, and bounded in z (shear-normal) by free-slip walls at z = -h/2 and
z = +h/2.  Velocity fluctuations carry zero horizontal mean in their x and
y components, so the constant mode is excluded and every admissible mode
has a strictly positive horizontal wavenumber.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Domain:
    """Box dimensions and kinematic viscosity.

    Attributes
    ----------
    Lx, Ly : float
        Periods in the streamwise and spanwise directions.
    h : float
        Height of the box; free-slip walls sit at z = +-h/2.
    nu : float
        Kinematic viscosity.
    """

    Lx: float
    Ly: float
    h: float
    nu: float

    def __post_init__(self):
        for name in ("Lx", "Ly", "h", "nu"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"Domain.{name} must be strictly positive, got {value!r}")

    @property
    def kappa1_h(self) -> float:
        """Smallest horizontal wavenumber, 2*pi / max(Lx, Ly)."""
        return 2.0 * math.pi / max(self.Lx, self.Ly)

    @property
    def kappa1(self) -> float:
        """Smallest total wavenumber of the divergence-free basis."""
        return math.sqrt(self.kappa1_h**2 + (math.pi / self.h) ** 2)

    @property
    def volume(self) -> float:
        return self.Lx * self.Ly * self.h


@dataclass(frozen=True)
class Truncation:
    """Index cutoffs of the Galerkin basis: |j| <= jmax, |l| <= lmax, 1 <= k <= kmax.

    jmax or lmax may be zero (a single horizontal direction), but not both.
    """

    jmax: int
    lmax: int
    kmax: int

    def __post_init__(self):
        for name in ("jmax", "lmax", "kmax"):
            value = getattr(self, name)
            if not (isinstance(value, int) and value >= 0):
                raise ValueError(f"Truncation.{name} must be a nonnegative integer, got {value!r}")
        if self.kmax < 1:
            raise ValueError(f"Truncation.kmax must be >= 1, got {self.kmax!r}")
        if self.jmax == 0 and self.lmax == 0:
            raise ValueError("Truncation needs jmax >= 1 or lmax >= 1; the j = l = 0 column is excluded")
