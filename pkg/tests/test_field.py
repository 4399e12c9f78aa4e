import numpy as np
import pytest

from shearcascade import (
    Band,
    GridResolutionError,
    SpectralField,
    TransformPlan,
    band_project,
    default_grid,
    from_physical,
    inner,
    load_snapshot,
    mode_velocity,
    norms,
    ordering_checksum,
    random_field,
    save_snapshot,
    to_physical,
)
from shearcascade.errors import SnapshotError
from shearcascade.grid import Grid


@pytest.fixture(scope="module")
def plan(basis444):
    return TransformPlan(basis444, default_grid(basis444.truncation))


class TestBandProjection:
    def test_full_band_is_identity(self, basis444):
        rng = np.random.default_rng(0)
        u = random_field(basis444, rng, 1.0)
        v = band_project(u, Band(basis444.kh_min, np.inf))
        assert np.array_equal(u.coeff, v.coeff)

    def test_idempotent(self, basis444):
        rng = np.random.default_rng(1)
        u = random_field(basis444, rng, 1.0)
        band = Band(2.0, 4.0)
        once = band_project(u, band)
        twice = band_project(once, band)
        assert np.array_equal(once.coeff, twice.coeff)

    def test_disjoint_bands_orthogonal(self, basis444):
        rng = np.random.default_rng(2)
        u = random_field(basis444, rng, 1.0)
        lo = band_project(u, Band(basis444.kh_min, 2.5))
        hi = band_project(u, Band(2.5, np.inf))
        assert inner(lo, hi) == 0.0

    def test_complement_partitions_identity(self, basis444):
        rng = np.random.default_rng(3)
        u = random_field(basis444, rng, 1.0)
        for edge in basis444.shells:
            lo = band_project(u, Band(basis444.kh_min, edge)) if edge > basis444.kh_min else SpectralField(basis444)
            hi = band_project(u, Band(edge, np.inf))
            assert np.array_equal(lo.coeff + hi.coeff, u.coeff)

    def test_selection_between_shells(self, basis444):
        c = np.zeros(basis444.n_modes)
        at1 = np.where(np.isclose(basis444.kh, 1.0))[0][0]
        at2 = np.where(np.isclose(basis444.kh, 2.0))[0][0]
        c[at1] = 1.0
        c[at2] = 2.0
        picked = band_project(SpectralField(basis444, c), Band(1.5, np.inf))
        assert picked.coeff[at1] == 0.0
        assert picked.coeff[at2] == 2.0

    def test_band_below_smallest_wavenumber_rejected(self, basis444):
        with pytest.raises(ValueError):
            band_project(SpectralField(basis444), Band(0.1, 2.0))


class TestNorms:
    def test_single_mode(self, basis444):
        c = np.zeros(basis444.n_modes)
        c[17] = 0.7
        nd = norms(SpectralField(basis444, c))
        assert nd.E == pytest.approx(0.49, rel=1e-15)
        assert nd.G == pytest.approx(basis444.eigenvalue[17] * 0.49, rel=1e-13)

    def test_gradient_split_is_exact(self, basis444):
        rng = np.random.default_rng(4)
        for _ in range(100):
            nd = norms(random_field(basis444, rng, 1.0))
            assert nd.G == nd.Gxy + nd.Gz  # additivity by construction

    def test_spectral_poincare_bounds(self, basis444):
        rng = np.random.default_rng(5)
        shells = basis444.shells
        for _ in range(100):
            u = random_field(basis444, rng, 1.0)
            i, j = sorted(rng.integers(0, shells.size, 2))
            if i == j:
                continue
            band = Band(shells[i], shells[j])
            nd = norms(band_project(u, band))
            assert shells[i] ** 2 * nd.E <= nd.Gxy * (1 + 1e-12)
            assert nd.Gxy <= shells[j] ** 2 * nd.E * (1 + 1e-12)

    def test_parseval_against_grid_quadrature_oracle(self, basis444, plan):
        rng = np.random.default_rng(6)
        u = random_field(basis444, rng, 1.0)
        phys = to_physical(u, plan)
        quad = np.sum(phys.values**2) * plan.cell_volume
        assert quad == pytest.approx(norms(u).E, rel=1e-10)


class TestTransforms:
    def test_zero_round_trip(self, basis444, plan):
        u = SpectralField(basis444)
        p = to_physical(u, plan)
        assert not p.values.any()
        back = from_physical(p, plan)
        assert not back.coeff.any()

    def test_single_mode_matches_direct_evaluation(self, basis444, plan):
        c = np.zeros(basis444.n_modes)
        c[101] = 1.0
        phys = to_physical(SpectralField(basis444, c), plan)
        x, y, z = plan.grid.nodes(basis444.domain)
        direct = mode_velocity(basis444.modes[101], x[:, None, None], y[None, :, None], z[None, None, :])
        assert np.max(np.abs(phys.values - direct)) <= 1e-12

    def test_random_round_trip(self, basis444, plan):
        rng = np.random.default_rng(7)
        u = random_field(basis444, rng, 2.0)
        back = from_physical(to_physical(u, plan), plan)
        assert np.max(np.abs(back.coeff - u.coeff)) <= 1e-10

    def test_projection_of_off_span_data(self, basis444, plan):
        """Grid data outside the span projects orthogonally: residual data
        has zero quadrature inner product with every basis mode."""
        rng = np.random.default_rng(8)
        values = rng.standard_normal((3, plan.grid.nx, plan.grid.ny, plan.grid.nz))
        coeff = plan.project(values)
        resynth = plan.synthesize(coeff)
        again = plan.project(values - resynth)
        assert np.max(np.abs(again)) <= 1e-9 * np.max(np.abs(coeff))

    def test_grid_too_coarse_names_mode(self, basis444):
        with pytest.raises(GridResolutionError, match=r"j=-?4"):
            TransformPlan(basis444, Grid(9, 14, 14))


class TestSnapshots:
    def test_round_trip(self, basis444, tmp_path):
        rng = np.random.default_rng(9)
        u = random_field(basis444, rng, 1.0)
        save_snapshot(tmp_path / "snap", u, t=1.25, step=50, extra={"dt": 0.01})
        v, t, step, extra = load_snapshot(tmp_path / "snap", basis444)
        assert np.array_equal(v.coeff, u.coeff)
        assert t == 1.25 and step == 50 and extra["dt"] == 0.01

    def test_rebuilds_basis_from_header(self, basis444, tmp_path):
        rng = np.random.default_rng(10)
        u = random_field(basis444, rng, 1.0)
        save_snapshot(tmp_path / "snap", u, t=0.5, step=3)
        v, _, _, _ = load_snapshot(tmp_path / "snap")
        assert ordering_checksum(v.basis) == ordering_checksum(basis444)
        assert np.array_equal(v.coeff, u.coeff)

    def test_checksum_mismatch_rejected(self, basis444, basis444_rect, tmp_path):
        rng = np.random.default_rng(11)
        u = random_field(basis444, rng, 1.0)
        save_snapshot(tmp_path / "snap", u, t=0.0, step=0)
        with pytest.raises(SnapshotError):
            load_snapshot(tmp_path / "snap", basis444_rect)
