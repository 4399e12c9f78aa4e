"""Orthonormal divergence-free eigenbasis of the periodic/free-slip box.

Each mode is a Hadamard product of a horizontal trigonometric triple and a
vertical (cos, cos, sin) triple with per-component amplitudes tied together
by a signed divergence-free constraint.  Horizontal indices (j, l) are
signed integers with j^2 + l^2 != 0, the vertical index k is a positive
integer, and every (j, l, k) carries a two-dimensional eigenspace indexed
by iota in {1, 2}.

The horizontal triple is one of four sign-pattern families.  Interior
index pairs (j != 0 and l != 0) follow the classical quadrant table; on
the axes that table leaves (j > 0, l = 0) and (j = 0, l > 0) without a
family while assigning two to their mirrors, so this implementation
extends the all-plus family to cover them.  Whenever a sine factor of a
component carries a zero index (which would annihilate the component),
the factor is dropped; the surviving pure-component modes complete the
axis eigenspaces.  The resulting set is orthonormal and spans the same
space; only the (arbitrary) orientation of each two-dimensional pair
differs from other admissible conventions.

Eigenvalues are lam = (2 pi j / Lx)^2 + (2 pi l / Ly)^2 + (k pi / h)^2,
and the horizontal wavenumber of a mode is the root of the first two terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .domain import Domain, Truncation

__all__ = [
    "ModeIndex",
    "ModeData",
    "Basis",
    "enumerate_modes",
    "build_mode",
    "build_basis",
    "evaluate_mode",
    "mode_velocity",
    "mode_velocity_gradient",
    "eigenvalue_multiplicity",
]

# Horizontal parity tables per family: parity of the x factor and y factor of
# each velocity component ('c' -> cos, 's' -> sin), plus the signs multiplying
# (2 pi j / Lx) A and (2 pi l / Ly) B in the divergence constraint
#     sx * a * A + sy * b * B + c * C = 0.
_FAMILIES = {
    "pp": (("c", "s", "s"), ("s", "c", "s"), -1.0, -1.0),
    "np": (("c", "s", "s"), ("c", "s", "c"), -1.0, +1.0),
    "pn": (("s", "c", "c"), ("s", "c", "s"), +1.0, -1.0),
    "nn": (("s", "c", "c"), ("c", "s", "c"), +1.0, +1.0),
}


def quadrant_of(j: int, l: int) -> str:
    """Assign the horizontal family of a signed index pair (total and disjoint)."""
    if j > 0 and l > 0:
        return "pp"
    if j < 0 and l >= 0:
        return "np"
    if j >= 0 and l < 0:
        return "pn"
    # j < 0, l < 0, plus the positive-axis pairs (j > 0, l = 0) and (j = 0, l > 0)
    return "nn"


@dataclass(frozen=True, order=True)
class ModeIndex:
    j: int
    l: int
    k: int
    iota: int

    def __post_init__(self):
        if self.j == 0 and self.l == 0:
            raise ValueError("mode index needs j^2 + l^2 != 0")
        if self.k < 1:
            raise ValueError(f"vertical index k must be >= 1, got {self.k}")
        if self.iota not in (1, 2):
            raise ValueError(f"iota must be 1 or 2, got {self.iota}")


@dataclass(frozen=True)
class ModeData:
    """One eigenfunction: index, spectral data, and per-component amplitudes.

    coeff[i] multiplies component i's horizontal factor pair and vertical
    factor (cos for i in {0, 1}, sin for i = 2); amplitudes are scaled so
    the assembled field has unit L2 norm over the box.
    """

    index: ModeIndex
    domain: Domain
    eigenvalue: float
    kh: float
    kz: float
    quadrant: str
    coeff: tuple

    @property
    def alpha(self) -> float:
        return 2.0 * math.pi * self.index.j / self.domain.Lx

    @property
    def beta(self) -> float:
        return 2.0 * math.pi * self.index.l / self.domain.Ly

    def constraint_residual(self) -> float:
        """Signed divergence constraint evaluated on the amplitudes."""
        _, _, sx, sy = _FAMILIES[self.quadrant]
        a, b, c = self.coeff
        return sx * self.alpha * a + sy * self.beta * b + self.kz * c


def _factor(parity: str, wavenumber: float, index: int, t):
    """Horizontal factor cos(w t) or sin(w t); a zero-index sine collapses to 1."""
    t = np.asarray(t, dtype=float)
    if parity == "c":
        return np.cos(wavenumber * t)
    if index == 0:
        return np.ones_like(t)
    return np.sin(wavenumber * t)


def _factor_deriv(parity: str, wavenumber: float, index: int, t):
    t = np.asarray(t, dtype=float)
    if index == 0:
        return np.zeros_like(t)
    if parity == "c":
        return -wavenumber * np.sin(wavenumber * t)
    return wavenumber * np.cos(wavenumber * t)


def enumerate_modes(domain: Domain, trunc: Truncation) -> list[ModeIndex]:
    """All admissible indices, ordered lexicographically by (kh, j, l, k, iota)."""
    out = []
    for j in range(-trunc.jmax, trunc.jmax + 1):
        for l in range(-trunc.lmax, trunc.lmax + 1):
            if j == 0 and l == 0:
                continue
            kh = math.hypot(2.0 * math.pi * j / domain.Lx, 2.0 * math.pi * l / domain.Ly)
            for k in range(1, trunc.kmax + 1):
                for iota in (1, 2):
                    out.append((kh, j, l, k, iota))
    out.sort()
    return [ModeIndex(j, l, k, iota) for (_, j, l, k, iota) in out]


def build_mode(domain: Domain, index: ModeIndex) -> ModeData:
    """Construct one normalized eigenfunction.

    The divergence constraint has a two-dimensional null space in the
    amplitudes (A, B, C); the iota = 1, 2 members come from the seeds
    (1, 0, *) and (0, 1, *) completed through the constraint and
    orthonormalized by Gram-Schmidt.  The per-component mean-square of the
    horizontal factors is identical across components (1/2 per direction
    with a nonzero index, 1 for a dropped factor), so the coefficient-space
    metric is Euclidean up to one overall weight.
    """
    j, l, k = index.j, index.l, index.k
    quadrant = quadrant_of(j, l)
    _, _, sx, sy = _FAMILIES[quadrant]
    a = 2.0 * math.pi * j / domain.Lx
    b = 2.0 * math.pi * l / domain.Ly
    c = k * math.pi / domain.h
    kh = math.hypot(a, b)
    lam = a * a + b * b + c * c

    ga, gb, gc = sx * a, sy * b, c
    v1 = np.array([1.0, 0.0, -ga / gc])
    v2 = np.array([0.0, 1.0, -gb / gc])
    u1 = v1 / np.linalg.norm(v1)
    u2 = v2 - np.dot(v2, u1) * u1
    u2 /= np.linalg.norm(u2)
    raw = u1 if index.iota == 1 else u2

    wx = 0.5 if j != 0 else 1.0
    wy = 0.5 if l != 0 else 1.0
    weight = wx * wy * 0.5 * domain.h
    coeff = tuple(raw / math.sqrt(weight))

    return ModeData(
        index=index,
        domain=domain,
        eigenvalue=lam,
        kh=kh,
        kz=c,
        quadrant=quadrant,
        coeff=coeff,
    )


def mode_velocity(mode: ModeData, x, y, z):
    """Velocity 3-vector of the mode at broadcastable points (x, y, z)."""
    xpar, ypar, _, _ = _FAMILIES[mode.quadrant]
    j, l = mode.index.j, mode.index.l
    zeta = np.asarray(z, dtype=float) + 0.5 * mode.domain.h
    hort = 1.0 / math.sqrt(mode.domain.Lx * mode.domain.Ly)
    vert = (np.cos(mode.kz * zeta), np.cos(mode.kz * zeta), np.sin(mode.kz * zeta))
    comps = [
        mode.coeff[i]
        * hort
        * _factor(xpar[i], mode.alpha, j, x)
        * _factor(ypar[i], mode.beta, l, y)
        * vert[i]
        for i in range(3)
    ]
    return np.stack(np.broadcast_arrays(*comps))


def evaluate_mode(mode: ModeData, x, y, z):
    """Alias of mode_velocity matching the operation-level name."""
    return mode_velocity(mode, x, y, z)


def mode_velocity_gradient(mode: ModeData, x, y, z):
    """Gradient tensor d w_i / d x_j, shape (3, 3) + broadcast shape."""
    xpar, ypar, _, _ = _FAMILIES[mode.quadrant]
    j, l = mode.index.j, mode.index.l
    zeta = np.asarray(z, dtype=float) + 0.5 * mode.domain.h
    hort = 1.0 / math.sqrt(mode.domain.Lx * mode.domain.Ly)
    vert = (np.cos(mode.kz * zeta), np.cos(mode.kz * zeta), np.sin(mode.kz * zeta))
    dvert = (
        -mode.kz * np.sin(mode.kz * zeta),
        -mode.kz * np.sin(mode.kz * zeta),
        mode.kz * np.cos(mode.kz * zeta),
    )
    rows = []
    for i in range(3):
        fx = _factor(xpar[i], mode.alpha, j, x)
        fy = _factor(ypar[i], mode.beta, l, y)
        dfx = _factor_deriv(xpar[i], mode.alpha, j, x)
        dfy = _factor_deriv(ypar[i], mode.beta, l, y)
        ci = mode.coeff[i] * hort
        rows.append(
            np.stack(
                np.broadcast_arrays(
                    ci * dfx * fy * vert[i],
                    ci * fx * dfy * vert[i],
                    ci * fx * fy * dvert[i],
                )
            )
        )
    return np.stack(rows)


class Basis:
    """Immutable ordered mode set with vectorized spectral data.

    Attributes
    ----------
    modes : list[ModeData]
    eigenvalue, kh, kz : ndarray (n_modes,)
    shells : ndarray of sorted distinct horizontal wavenumbers
    shell_index : ndarray mapping each mode to its shell
    """

    def __init__(self, domain: Domain, trunc: Truncation):
        self.domain = domain
        self.truncation = trunc
        self.modes = [build_mode(domain, idx) for idx in enumerate_modes(domain, trunc)]
        n = len(self.modes)
        self.n_modes = n
        self.j = np.array([m.index.j for m in self.modes], dtype=np.int64)
        self.l = np.array([m.index.l for m in self.modes], dtype=np.int64)
        self.k = np.array([m.index.k for m in self.modes], dtype=np.int64)
        self.iota = np.array([m.index.iota for m in self.modes], dtype=np.int64)
        self.eigenvalue = np.array([m.eigenvalue for m in self.modes])
        self.kh = np.array([m.kh for m in self.modes])
        self.kz = np.array([m.kz for m in self.modes])
        self.coeff = np.array([m.coeff for m in self.modes])
        self.alpha = np.array([m.alpha for m in self.modes])
        self.beta = np.array([m.beta for m in self.modes])
        self.quadrant = [m.quadrant for m in self.modes]

        # Shells: distinct horizontal wavenumbers up to relative rounding noise.
        shells = []
        shell_index = np.empty(n, dtype=np.int64)
        for i in range(n):
            v = self.kh[i]
            if shells and abs(v - shells[-1]) <= 1e-12 * max(v, shells[-1]):
                shell_index[i] = len(shells) - 1
            else:
                shells.append(v)
                shell_index[i] = len(shells) - 1
        self.shells = np.array(shells)
        self.shell_index = shell_index

    @property
    def kh_min(self) -> float:
        return float(self.shells[0])

    @property
    def kh_max(self) -> float:
        return float(self.shells[-1])

    def __len__(self):
        return self.n_modes


def build_basis(domain: Domain, trunc: Truncation) -> Basis:
    return Basis(domain, trunc)


def _rational_ratio(x: float, y: float, max_den: int = 10**6):
    """Fraction p/q with x/y ~ p/q to within 1e-13 relative, or None."""
    r = x / y
    frac = Fraction(r).limit_denominator(max_den)
    if abs(float(frac) - r) <= 1e-13 * abs(r):
        return frac
    return None


def eigenvalue_multiplicity(domain: Domain, lam: float, trunc: Truncation, rtol: float = 1e-12) -> int:
    """Number of modes in the truncation sharing the eigenvalue lam.

    When Lx, Ly, h are rational multiples of one another the comparison is
    exact (integer arithmetic on scaled squares); otherwise eigenvalues
    within relative tolerance rtol of lam are counted.  An unattained lam
    simply returns zero.
    """
    rx = _rational_ratio(domain.h * domain.h, domain.Lx * domain.Lx)
    ry = _rational_ratio(domain.h * domain.h, domain.Ly * domain.Ly)
    indices = enumerate_modes(domain, trunc)
    scale = (math.pi / domain.h) ** 2

    if rx is not None and ry is not None:
        # lam * h^2 / pi^2 = 4 j^2 (h/Lx)^2 + 4 l^2 (h/Ly)^2 + k^2, exactly rational.
        def key(j, l, k):
            return 4 * j * j * rx + 4 * l * l * ry + k * k

        target = lam / scale
        counts = {}
        for idx in indices:
            counts.setdefault(key(idx.j, idx.l, idx.k), []).append(idx)
        best = None
        for q in counts:
            err = abs(float(q) - target)
            if best is None or err < best[0]:
                best = (err, q)
        if best is None or best[0] > rtol * max(abs(target), 1.0):
            return 0
        return len(counts[best[1]])

    count = 0
    for idx in indices:
        a = 2.0 * math.pi * idx.j / domain.Lx
        b = 2.0 * math.pi * idx.l / domain.Ly
        c = idx.k * math.pi / domain.h
        value = a * a + b * b + c * c
        if abs(value - lam) <= rtol * max(abs(lam), abs(value)):
            count += 1
    return count
