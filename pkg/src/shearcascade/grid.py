"""Collocation grid and quadrature-exact transforms between coefficient space and grid.

The horizontal grid is uniform over each period; the vertical grid uses
midpoint nodes on [-h/2, h/2].  With the sizing rule nx >= 3 jmax + 2 (and
its y, z analogues) the composite trapezoid/midpoint quadrature integrates
every product of up to three basis factors exactly: horizontal integrands
are trigonometric polynomials of degree <= 3 jmax < nx, and all vertical
integrands arising from inner products of fields, quadratic products, and
their projections reduce to cosine series of degree <= 3 kmax < 2 nz (each
velocity component has definite vertical parity, so stray sine terms never
survive the component pairing).

Transforms are dense separable tensor contractions; no FFT is used.  At
the truncation sizes this package targets, the contractions are small
BLAS calls, bit-reproducible for a fixed thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import _FAMILIES, Basis
from .errors import GridResolutionError

__all__ = ["Grid", "TransformPlan", "default_grid"]


@dataclass(frozen=True)
class Grid:
    """Collocation grid sizes; node layout is fixed by the transform contract."""

    nx: int
    ny: int
    nz: int

    def __post_init__(self):
        for name in ("nx", "ny", "nz"):
            if getattr(self, name) < 2:
                raise ValueError(f"Grid.{name} must be >= 2")

    def nodes(self, domain):
        x = domain.Lx * np.arange(self.nx) / self.nx
        y = domain.Ly * np.arange(self.ny) / self.ny
        z = -0.5 * domain.h + domain.h * (np.arange(self.nz) + 0.5) / self.nz
        return x, y, z


def default_grid(trunc) -> Grid:
    """Smallest grid satisfying the dealiasing contract for the truncation."""
    return Grid(3 * trunc.jmax + 2, 3 * trunc.lmax + 2, 3 * trunc.kmax + 2)


def _require_resolution(basis: Basis, grid: Grid):
    t = basis.truncation
    checks = (("nx", grid.nx, 3 * t.jmax + 2), ("ny", grid.ny, 3 * t.lmax + 2), ("nz", grid.nz, 3 * t.kmax + 2))
    for name, got, need in checks:
        if got < need:
            axis = {"nx": "j", "ny": "l", "nz": "k"}[name]
            worst = max(basis.modes, key=lambda m: abs(getattr(m.index, axis)))
            raise GridResolutionError(
                f"grid {name}={got} cannot dealias mode (j={worst.index.j}, l={worst.index.l}, "
                f"k={worst.index.k}): needs {name} >= {need}"
            )


class TransformPlan:
    """Precomputed scatter maps and factor tables for one (basis, grid) pair.

    Each velocity component of each mode is one product
    fx(x) * fy(y) * fz(z) with fx, fy drawn from {cos(2 pi m t / L)} and
    {sin(2 pi m t / L)} after canonicalization (negative indices fold into
    a sign; a zero-index sine becomes the constant).  The plan records, per
    component, the flat bucket slot and scalar factor of every mode, so a
    synthesis is one scatter-add followed by three dense contractions.
    """

    def __init__(self, basis: Basis, grid: Grid):
        _require_resolution(basis, grid)
        self.basis = basis
        self.grid = grid
        domain = basis.domain
        t = basis.truncation
        self.j1 = t.jmax + 1
        self.l1 = t.lmax + 1
        self.kmax = t.kmax
        x, y, z = grid.nodes(domain)
        zeta = z + 0.5 * domain.h

        mj = np.arange(self.j1)
        ml = np.arange(self.l1)
        ax = 2.0 * math.pi * mj / domain.Lx
        ay = 2.0 * math.pi * ml / domain.Ly
        kz = math.pi * np.arange(1, t.kmax + 1) / domain.h
        self.ax = ax
        self.ay = ay
        self.kz_table = kz
        # fx[0]: cosines, fx[1]: sines (row m=0 is zero and is never addressed).
        self.fx = np.stack([np.cos(np.outer(ax, x)), np.sin(np.outer(ax, x))])
        self.fy = np.stack([np.cos(np.outer(ay, y)), np.sin(np.outer(ay, y))])
        self.vz_cos = np.cos(np.outer(kz, zeta))
        self.vz_sin = np.sin(np.outer(kz, zeta))

        self.cell_volume = (domain.Lx / grid.nx) * (domain.Ly / grid.ny) * (domain.h / grid.nz)
        hort = 1.0 / math.sqrt(domain.Lx * domain.Ly)

        shape = (2, 2, self.j1, self.l1, t.kmax)
        self.bucket_shape = shape
        slots = np.empty((3, basis.n_modes), dtype=np.int64)
        factors = np.empty((3, basis.n_modes))
        for m, mode in enumerate(basis.modes):
            xpar, ypar, _, _ = _FAMILIES[mode.quadrant]
            j, l, k = mode.index.j, mode.index.l, mode.index.k
            for i in range(3):
                bx, sx = _canonical(xpar[i], j)
                by, sy = _canonical(ypar[i], l)
                slots[i, m] = np.ravel_multi_index((bx, by, abs(j), abs(l), k - 1), shape)
                factors[i, m] = mode.coeff[i] * sx * sy * hort
        self.slots = slots
        self.factors = factors

    # -- bucket-tensor helpers ------------------------------------------------

    def _bucketize(self, coeff):
        tensors = []
        for i in range(3):
            t = np.zeros(self.bucket_shape)
            np.add.at(t.reshape(-1), self.slots[i], coeff * self.factors[i])
            tensors.append(t)
        return tensors

    def _shift_x(self, t):
        """Bucket tensor of the x-derivative of the field with bucket tensor t."""
        out = np.empty_like(t)
        scale = self.ax[:, None, None]
        out[0] = t[1] * scale
        out[1] = -t[0] * scale
        return out

    def _shift_y(self, t):
        out = np.empty_like(t)
        scale = self.ay[None, :, None]
        out[:, 0] = t[:, 1] * scale
        out[:, 1] = -t[:, 0] * scale
        return out

    def _synth(self, t, vz):
        tz = np.tensordot(t, vz, axes=([4], [0]))  # (2,2,j1,l1,nz)
        acc = np.zeros((self.grid.nx, self.grid.ny, self.grid.nz))
        for bx in range(2):
            for by in range(2):
                tyz = np.tensordot(tz[bx, by], self.fy[by], axes=([1], [0]))  # (j1,nz,ny)
                acc += np.tensordot(self.fx[bx], tyz, axes=([0], [0])).transpose(0, 2, 1)
        return acc

    def _gather(self, values, vz):
        out = np.empty(self.bucket_shape)
        for bx in range(2):
            t1 = np.tensordot(self.fx[bx], values, axes=([1], [0]))  # (j1,ny,nz)
            for by in range(2):
                t2 = np.tensordot(self.fy[by], t1, axes=([1], [1]))  # (l1,j1,nz)
                out[bx, by] = np.tensordot(t2, vz, axes=([2], [1])).transpose(1, 0, 2)
        return out

    # -- public transforms ----------------------------------------------------

    def synthesize(self, coeff):
        """Grid values of the velocity field, shape (3, nx, ny, nz)."""
        tensors = self._bucketize(coeff)
        return np.stack(
            [
                self._synth(tensors[0], self.vz_cos),
                self._synth(tensors[1], self.vz_cos),
                self._synth(tensors[2], self.vz_sin),
            ]
        )

    def synthesize_with_gradient(self, coeff):
        """Grid values and gradient tensor (du_i/dx_j), shapes (3, ...) and (3, 3, ...)."""
        tensors = self._bucketize(coeff)
        nx, ny, nz = self.grid.nx, self.grid.ny, self.grid.nz
        vel = np.empty((3, nx, ny, nz))
        grad = np.empty((3, 3, nx, ny, nz))
        kzcol = self.kz_table[None, None, None, None, :]
        for i in range(3):
            vz = self.vz_cos if i < 2 else self.vz_sin
            vel[i] = self._synth(tensors[i], vz)
            grad[i, 0] = self._synth(self._shift_x(tensors[i]), vz)
            grad[i, 1] = self._synth(self._shift_y(tensors[i]), vz)
            if i < 2:
                grad[i, 2] = self._synth(-tensors[i] * kzcol, self.vz_sin)
            else:
                grad[i, 2] = self._synth(tensors[i] * kzcol, self.vz_cos)
        return vel, grad

    def project(self, values):
        """Quadrature projection of grid values (3, nx, ny, nz) onto the basis."""
        coeff = np.zeros(self.basis.n_modes)
        for i in range(3):
            vz = self.vz_cos if i < 2 else self.vz_sin
            g = self._gather(values[i], vz).reshape(-1)
            coeff += self.factors[i] * g[self.slots[i]]
        coeff *= self.cell_volume
        return coeff


def _canonical(parity: str, index: int):
    """Fold a signed trigonometric factor into (bucket, sign) over |index|."""
    if parity == "c":
        return 0, 1.0
    if index == 0:
        return 0, 1.0  # dropped sine factor: the constant lives in the cos bucket at m = 0
    return 1, (1.0 if index > 0 else -1.0)
