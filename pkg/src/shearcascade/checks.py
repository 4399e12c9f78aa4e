"""Basis validation suite backing the basis-check command and the acceptance tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import Basis, eigenvalue_multiplicity, mode_velocity, mode_velocity_gradient
from .domain import Domain, Truncation
from .grid import TransformPlan, default_grid


@dataclass(frozen=True)
class BasisCheckResult:
    gram_deviation: float
    divergence_residual: float
    boundary_residual: float
    eigen_residual: float
    constraint_residual: float
    norm_deviation: float
    first_eigenvalue: float
    first_multiplicity: int
    expected_multiplicity: int
    tolerance: float

    @property
    def ok(self) -> bool:
        residuals = (
            self.gram_deviation,
            self.divergence_residual,
            self.boundary_residual,
            self.eigen_residual,
            self.constraint_residual,
            self.norm_deviation,
        )
        return all(r <= self.tolerance for r in residuals) and (
            self.first_multiplicity == self.expected_multiplicity
        )


def run_basis_suite(domain: Domain, trunc: Truncation, corrupt: bool = False,
                    tolerance: float = 1e-10) -> BasisCheckResult:
    """Gram, divergence, boundary, eigen-relation, and multiplicity checks.

    corrupt=True perturbs one amplitude before checking (a failure-path
    test hook; the suite must then report a violation).
    """
    basis = Basis(domain, trunc)
    if corrupt:
        victim = basis.modes[len(basis.modes) // 3]
        bad = tuple(c + 1e-3 for c in victim.coeff)
        object.__setattr__(victim, "coeff", bad)
        basis.coeff[len(basis.modes) // 3] = bad

    plan = TransformPlan(basis, default_grid(trunc))
    fields = np.stack([plan.synthesize(row) for row in np.eye(basis.n_modes)])
    gram = np.einsum("mcxyz,ncxyz->mn", fields, fields) * plan.cell_volume
    gram_dev = float(np.max(np.abs(gram - np.eye(basis.n_modes))))
    norm_dev = float(np.max(np.abs(np.diag(gram) - 1.0)))

    rng = np.random.default_rng(0)
    xs = rng.uniform(0.0, domain.Lx, 64)
    ys = rng.uniform(0.0, domain.Ly, 64)
    zs = rng.uniform(-0.5 * domain.h, 0.5 * domain.h, 64)
    walls = np.array([-0.5 * domain.h, 0.5 * domain.h])

    div_res = 0.0
    eig_res = 0.0
    bc_res = 0.0
    con_res = 0.0
    for mode in basis.modes:
        grad = mode_velocity_gradient(mode, xs, ys, zs)
        div_res = max(div_res, float(np.max(np.abs(grad[0, 0] + grad[1, 1] + grad[2, 2]))))
        vel = mode_velocity(mode, xs, ys, zs)
        lap = -(mode.alpha**2 + mode.beta**2 + mode.kz**2) * vel
        eig_res = max(eig_res, float(np.max(np.abs(-lap - mode.eigenvalue * vel))))
        wvel = mode_velocity(mode, xs[:8, None], ys[:8, None], walls[None, :])
        wgrad = mode_velocity_gradient(mode, xs[:8, None], ys[:8, None], walls[None, :])
        bc_res = max(bc_res, float(np.max(np.abs(wvel[2]))), float(np.max(np.abs(wgrad[:2, 2]))))
        con_res = max(con_res, abs(mode.constraint_residual()))

    lam1 = basis.eigenvalue.min()
    mult = eigenvalue_multiplicity(domain, float(lam1), trunc)
    square = abs(domain.Lx - domain.Ly) <= 1e-12 * max(domain.Lx, domain.Ly)
    expected = 8 if square else 4

    return BasisCheckResult(
        gram_deviation=gram_dev,
        divergence_residual=div_res,
        boundary_residual=bc_res,
        eigen_residual=eig_res,
        constraint_residual=con_res,
        norm_deviation=norm_dev,
        first_eigenvalue=float(lam1),
        first_multiplicity=mult,
        expected_multiplicity=expected,
        tolerance=tolerance,
    )
