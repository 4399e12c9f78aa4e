import numpy as np
import pytest

from shearcascade import (
    GaussJet,
    MixingLayer,
    ProfileConfigError,
    ProfileRangeError,
    Sech2Jet,
    TabulatedProfile,
    Wake,
    eval_profile,
    profile_from_spec,
    shear_strength,
)

ALL_CANONICAL = [
    MixingLayer(U1=1.0, U2=-1.0, delta=0.7),
    MixingLayer(U1=2.0, U2=0.5, delta=0.3),
    Sech2Jet(U0=1.3, delta=0.5),
    GaussJet(U0=0.8, delta=0.4),
    Wake(Uinf=1.0, Ud=0.5, delta=0.6),
]


def test_mixing_layer_center_values():
    u, du, d2u = MixingLayer(U1=1.0, U2=-1.0, delta=1.0).evaluate(0.0)
    assert u == pytest.approx(0.0, abs=1e-15)
    assert du == pytest.approx(2.0, rel=1e-15)
    assert d2u == pytest.approx(0.0, abs=1e-15)


def test_wake_center_values():
    u, du, d2u = Wake(Uinf=1.0, Ud=0.5, delta=1.0).evaluate(0.0)
    assert u == pytest.approx(0.5, rel=1e-15)
    assert du == pytest.approx(0.0, abs=1e-15)
    assert d2u == pytest.approx(0.5, rel=1e-15)


def test_sech2_jet_decay():
    assert Sech2Jet(U0=1.0, delta=1.0).value(10.0) <= 1e-8


def test_mixing_layer_strength_closed_form():
    assert shear_strength(MixingLayer(U1=1.0, U2=-1.0, delta=0.5)) == pytest.approx(4.0, rel=1e-15)


def test_gauss_jet_strength_matches_dense_sampling_oracle():
    profile = GaussJet(U0=1.0, delta=1.0)
    # oracle: dense sampling of |U'| over a generous extent
    zs = np.linspace(-8.0, 8.0, 400_001)
    oracle = np.max(np.abs(profile.slope(zs)))
    assert profile.shear_strength() == pytest.approx(np.exp(-0.5), rel=1e-12)
    assert profile.shear_strength() == pytest.approx(oracle, rel=1e-9)


@pytest.mark.parametrize("profile", ALL_CANONICAL, ids=lambda p: type(p).__name__)
def test_strength_dominates_sampled_slope(profile):
    zs = np.linspace(-5.0, 5.0, 20_001)
    assert np.max(np.abs(profile.slope(zs))) <= profile.shear_strength() * (1 + 1e-12)


@pytest.mark.parametrize("profile", ALL_CANONICAL, ids=lambda p: type(p).__name__)
def test_finite_difference_consistency(profile):
    """Centered differences of U reproduce U' (and U' reproduces U'')."""
    rng = np.random.default_rng(42)
    z = rng.uniform(-3.0, 3.0, 10_000)
    step = 1e-5 * profile.delta
    u_plus, du_plus, _ = profile.evaluate(z + step)
    u_minus, du_minus, _ = profile.evaluate(z - step)
    _, du, d2u = profile.evaluate(z)
    scale_1 = profile.shear_strength()
    assert np.max(np.abs((u_plus - u_minus) / (2 * step) - du)) <= 1e-6 * scale_1
    scale_2 = np.max(np.abs(d2u)) + scale_1 / profile.delta
    assert np.max(np.abs((du_plus - du_minus) / (2 * step) - d2u)) <= 1e-6 * scale_2


def test_boundary_slope_negligible_when_box_is_wide():
    # tanh tails decay like exp(-4|z|/delta): 1e-6 S already at h = 10 delta;
    # the sech^2 and Gaussian kinds need roughly twice that height
    for profile in (MixingLayer(U1=1.0, U2=-1.0, delta=0.7), MixingLayer(U1=2.0, U2=0.5, delta=0.3)):
        s = profile.shear_strength()
        assert abs(profile.slope(5.0 * profile.delta)) <= 1e-6 * s
        assert abs(profile.slope(-5.0 * profile.delta)) <= 1e-6 * s
    for profile in ALL_CANONICAL:
        s = profile.shear_strength()
        assert abs(profile.slope(10.0 * profile.delta)) <= 1e-6 * s
        assert abs(profile.slope(-10.0 * profile.delta)) <= 1e-6 * s


def test_eval_profile_range_validation():
    profile = MixingLayer(U1=1.0, U2=-1.0, delta=1.0)
    eval_profile(profile, 0.4, h=1.0)
    with pytest.raises(ProfileRangeError):
        eval_profile(profile, 0.6, h=1.0)


class TestTabulated:
    def make(self, analytic, lo=-4.0, hi=4.0, n=600):
        zs = np.linspace(lo, hi, n)
        return TabulatedProfile(z_samples=tuple(zs), u_samples=tuple(analytic.value(zs)))

    def test_needs_four_samples(self):
        with pytest.raises(ProfileConfigError):
            TabulatedProfile(z_samples=(0.0, 1.0, 2.0), u_samples=(0.0, 1.0, 2.0))

    def test_matches_analytic_strength(self):
        analytic = MixingLayer(U1=1.0, U2=-1.0, delta=0.8)
        tab = self.make(analytic)
        assert tab.shear_strength() == pytest.approx(analytic.shear_strength(), rel=1e-4)

    def test_interpolated_values_and_slope(self):
        analytic = GaussJet(U0=1.0, delta=0.9)
        tab = self.make(analytic)
        zs = np.linspace(-3.5, 3.5, 500)
        assert np.max(np.abs(tab.value(zs) - analytic.value(zs))) < 1e-7
        assert np.max(np.abs(tab.slope(zs) - analytic.slope(zs))) < 1e-4

    def test_out_of_range(self):
        tab = self.make(MixingLayer(U1=1.0, U2=-1.0, delta=1.0))
        with pytest.raises(ProfileRangeError):
            tab.value(5.0)


def test_profile_from_spec_roundtrip_and_errors():
    p = profile_from_spec("mixing_layer", {"U1": 1.0, "U2": -1.0, "delta": 0.5})
    assert isinstance(p, MixingLayer)
    with pytest.raises(ProfileConfigError):
        profile_from_spec("mixing_layer", {"U1": 1.0, "U2": -1.0})
    with pytest.raises(ProfileConfigError):
        profile_from_spec("mixing_layer", {"U1": 1.0, "U2": -1.0, "delta": 0.5, "bogus": 1})
    with pytest.raises(ProfileConfigError):
        profile_from_spec("vortex_sheet", {})
