import math

import numpy as np
import pytest

from shearcascade import (
    Domain,
    ModeIndex,
    TransformPlan,
    Truncation,
    build_mode,
    default_grid,
    eigenvalue_multiplicity,
    enumerate_modes,
    mode_velocity,
    mode_velocity_gradient,
)

TWO_PI = 2.0 * np.pi


class TestEnumeration:
    def test_counts_minimal(self, square_domain):
        assert len(enumerate_modes(square_domain, Truncation(1, 1, 1))) == 16

    def test_counts_single_direction(self, square_domain):
        modes = enumerate_modes(square_domain, Truncation(2, 0, 1))
        assert len(modes) == 8
        assert all(m.l == 0 and m.j != 0 for m in modes)

    def test_sorted_by_horizontal_wavenumber(self, basis444):
        assert np.all(np.diff(basis444.kh) >= -1e-12)

    def test_no_zero_column(self, square_domain):
        for m in enumerate_modes(square_domain, Truncation(3, 3, 2)):
            assert m.j != 0 or m.l != 0

    def test_bad_indices_rejected(self):
        with pytest.raises(ValueError):
            ModeIndex(0, 0, 1, 1)
        with pytest.raises(ValueError):
            ModeIndex(1, 0, 0, 1)
        with pytest.raises(ValueError):
            ModeIndex(1, 0, 1, 3)


class TestModeConstruction:
    def test_eigenvalue_example(self, square_domain):
        mode = build_mode(square_domain, ModeIndex(1, 0, 1, 1))
        assert mode.eigenvalue == pytest.approx(2.0, rel=1e-15)

    def test_pythagorean_horizontal_wavenumber(self, square_domain):
        mode = build_mode(square_domain, ModeIndex(3, 4, 1, 1))
        assert mode.kh == pytest.approx(5.0, rel=1e-15)

    def test_constraint_residual(self, basis444, basis444_rect):
        for basis in (basis444, basis444_rect):
            worst = max(abs(m.constraint_residual()) for m in basis.modes)
            assert worst <= 1e-12

    def test_unit_norm_by_quadrature_oracle(self, square_domain):
        """L2 norm of one assembled mode integrated by independent quadrature."""
        mode = build_mode(square_domain, ModeIndex(1, 1, 1, 1))
        n = 16
        x = square_domain.Lx * np.arange(n) / n
        y = square_domain.Ly * np.arange(n) / n
        zg, zw = np.polynomial.legendre.leggauss(17)
        z = 0.5 * square_domain.h * zg
        vel = mode_velocity(mode, x[:, None, None], y[None, :, None], z[None, None, :])
        integrand = np.sum(vel**2, axis=0)
        value = np.sum(integrand * (0.5 * square_domain.h * zw)[None, None, :])
        value *= (square_domain.Lx / n) * (square_domain.Ly / n)
        assert value == pytest.approx(1.0, abs=1e-10)


class TestFieldInvariants:
    def test_gram_identity(self, basis444):
        plan = TransformPlan(basis444, default_grid(basis444.truncation))
        fields = np.stack([plan.synthesize(row) for row in np.eye(basis444.n_modes)])
        gram = np.einsum("mcxyz,ncxyz->mn", fields, fields) * plan.cell_volume
        assert np.max(np.abs(gram - np.eye(basis444.n_modes))) <= 1e-10

    def test_divergence_free_everywhere(self, basis444_rect):
        rng = np.random.default_rng(1)
        xs = rng.uniform(0, basis444_rect.domain.Lx, 128)
        ys = rng.uniform(0, basis444_rect.domain.Ly, 128)
        zs = rng.uniform(-basis444_rect.domain.h / 2, basis444_rect.domain.h / 2, 128)
        for mode in basis444_rect.modes[::7]:
            grad = mode_velocity_gradient(mode, xs, ys, zs)
            div = grad[0, 0] + grad[1, 1] + grad[2, 2]
            assert np.max(np.abs(div)) <= 1e-10

    def test_eigen_relation_analytic(self, basis444):
        rng = np.random.default_rng(2)
        xs = rng.uniform(0, TWO_PI, 64)
        ys = rng.uniform(0, TWO_PI, 64)
        zs = rng.uniform(-np.pi / 2, np.pi / 2, 64)
        for mode in basis444.modes[::11]:
            vel = mode_velocity(mode, xs, ys, zs)
            lap = -(mode.alpha**2 + mode.beta**2 + mode.kz**2) * vel
            scale = np.max(np.abs(vel)) * mode.eigenvalue
            assert np.max(np.abs(-lap - mode.eigenvalue * vel)) <= 1e-10 * scale

    def test_eigen_relation_finite_difference_oracle(self, basis444):
        """Independent check: FD Laplacian of the evaluated field."""
        mode = basis444.modes[37]
        rng = np.random.default_rng(3)
        pts = np.stack([
            rng.uniform(1.0, 5.0, 40),
            rng.uniform(1.0, 5.0, 40),
            rng.uniform(-1.2, 1.2, 40),
        ])
        step = 1e-4
        lap = np.zeros((3, 40))
        for axis in range(3):
            dp = pts.copy(); dp[axis] += step
            dm = pts.copy(); dm[axis] -= step
            lap += (
                mode_velocity(mode, *dp) + mode_velocity(mode, *dm)
                - 2.0 * mode_velocity(mode, *pts)
            ) / step**2
        vel = mode_velocity(mode, *pts)
        assert np.max(np.abs(-lap - mode.eigenvalue * vel)) <= 1e-5 * mode.eigenvalue

    def test_boundary_conditions(self, basis444_rect):
        dom = basis444_rect.domain
        rng = np.random.default_rng(4)
        xs = rng.uniform(0, dom.Lx, 32)[:, None]
        ys = rng.uniform(0, dom.Ly, 32)[:, None]
        walls = np.array([[-dom.h / 2, dom.h / 2]])
        for mode in basis444_rect.modes[::5]:
            vel = mode_velocity(mode, xs, ys, walls)
            grad = mode_velocity_gradient(mode, xs, ys, walls)
            assert np.max(np.abs(vel[2])) <= 1e-12
            assert np.max(np.abs(grad[0, 2])) <= 1e-12
            assert np.max(np.abs(grad[1, 2])) <= 1e-12

    def test_zero_horizontal_mean(self, basis444):
        grid = default_grid(basis444.truncation)
        x, y, z = grid.nodes(basis444.domain)
        for mode in basis444.modes[::13]:
            vel = mode_velocity(mode, x[:, None, None], y[None, :, None], z[None, None, :])
            means = vel[:2].mean(axis=(1, 2))
            assert np.max(np.abs(means)) <= 1e-12


class TestMultiplicity:
    def test_square_box_first_eigenvalue(self, square_domain):
        lam1 = (TWO_PI / square_domain.Lx * 1) ** 2 + (np.pi / square_domain.h) ** 2
        assert eigenvalue_multiplicity(square_domain, lam1, Truncation(4, 4, 4)) == 8

    def test_rectangular_box_first_eigenvalue(self, rect_domain):
        lam1 = (2 * np.pi / rect_domain.Lx) ** 2 + (np.pi / rect_domain.h) ** 2
        assert eigenvalue_multiplicity(rect_domain, lam1, Truncation(4, 4, 4)) == 4

    def test_generic_interior_pair_multiplicity(self):
        # scaled squares j^2 + 2 l^2 + 3 k^2: the value 6 is attained only by
        # (|j|, |l|, k) = (1, 1, 1), so the count is the sign orbit times iota
        dom = Domain(Lx=TWO_PI, Ly=TWO_PI / np.sqrt(2.0), h=np.pi / np.sqrt(3.0), nu=1e-2)
        lam = (
            (2 * np.pi * 1 / dom.Lx) ** 2
            + (2 * np.pi * 1 / dom.Ly) ** 2
            + (np.pi * 1 / dom.h) ** 2
        )
        assert eigenvalue_multiplicity(dom, lam, Truncation(3, 3, 2)) == 8

    def test_accidental_degeneracy_is_counted(self):
        # j^2 + 2 l^2 + 3 k^2 = 12 is attained by (1, 2, 1) (orbit of 8) and
        # by the axis triple (3, 0, 1) (orbit of 4)
        dom = Domain(Lx=TWO_PI, Ly=TWO_PI / np.sqrt(2.0), h=np.pi / np.sqrt(3.0), nu=1e-2)
        lam = 12.0 * (2 * np.pi / dom.Lx) ** 2
        assert eigenvalue_multiplicity(dom, lam, Truncation(3, 3, 2)) == 12

    def test_unattained_eigenvalue_counts_zero(self, square_domain):
        assert eigenvalue_multiplicity(square_domain, 1.2345e-3, Truncation(2, 2, 2)) == 0


def test_iota_pair_spans_are_rotation_invariant(square_domain):
    """The two fields of one (j, l, k) span the same space regardless of seeds.

    Only the projector onto the pair is contract-fixed, so compare the
    projector built from the pair against itself after an orthonormal
    re-mixing of the two coefficient vectors.
    """
    for idx in [(1, 2, 1), (-2, 1, 2), (0, 1, 1), (1, 0, 3), (-1, -1, 2)]:
        m1 = build_mode(square_domain, ModeIndex(idx[0], idx[1], idx[2], 1))
        m2 = build_mode(square_domain, ModeIndex(idx[0], idx[1], idx[2], 2))
        rng = np.random.default_rng(7)
        pts = (rng.uniform(0, TWO_PI, 50), rng.uniform(0, TWO_PI, 50), rng.uniform(-1.5, 1.5, 50))
        v1 = mode_velocity(m1, *pts)
        v2 = mode_velocity(m2, *pts)
        theta = 0.7
        w1 = math.cos(theta) * v1 + math.sin(theta) * v2
        w2 = -math.sin(theta) * v1 + math.cos(theta) * v2
        # projector onto span at each point is rotation invariant
        p_orig = v1[:, None] * v1[None, :] + v2[:, None] * v2[None, :]
        p_rot = w1[:, None] * w1[None, :] + w2[:, None] * w2[None, :]
        assert np.max(np.abs(p_orig - p_rot)) <= 1e-12
