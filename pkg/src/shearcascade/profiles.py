"""Imposed mean-shear profiles U(z) with exact derivatives.

The mean flow (U(z), 0, 0) is prescribed, never evolved; it enters the
fluctuation dynamics only through U(z) (advection) and U'(z) (production).
U''(z) is exposed for documentation and plotting but plays no role in the
projected dynamics, since the body term it would drive is orthogonal to
fields with zero horizontal mean.

All quantities are plain SI-consistent reals; only dimensionless ratios
enter the cascade conditions downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import make_interp_spline

from .errors import ProfileConfigError, ProfileRangeError

__all__ = [
    "ShearProfile",
    "MixingLayer",
    "Sech2Jet",
    "GaussJet",
    "Wake",
    "TabulatedProfile",
    "eval_profile",
    "shear_strength",
    "profile_from_spec",
]


class ShearProfile:
    """Base class: value, slope, and curvature of the imposed mean flow."""

    def value(self, z):
        raise NotImplementedError

    def slope(self, z):
        raise NotImplementedError

    def curvature(self, z):
        raise NotImplementedError

    def shear_strength(self) -> float:
        """sup over the vertical extent of |U'(z)|."""
        raise NotImplementedError

    def evaluate(self, z):
        """Return (U, U', U'') at z (scalar or array)."""
        return self.value(z), self.slope(z), self.curvature(z)


def _check_positive(name, value):
    if not (value > 0.0 and np.isfinite(value)):
        raise ProfileConfigError(f"{name} must be strictly positive, got {value!r}")


@dataclass(frozen=True)
class MixingLayer(ShearProfile):
    """Hyperbolic-tangent mixing layer between free streams U1 (top) and U2 (bottom).

    U(z) = (U1+U2)/2 + (U1-U2)/2 * tanh(2z/delta), with vorticity
    thickness delta, so that U'(0) = (U1-U2)/delta.
    """

    U1: float
    U2: float
    delta: float

    def __post_init__(self):
        _check_positive("MixingLayer.delta", self.delta)

    def value(self, z):
        z = np.asarray(z, dtype=float)
        return 0.5 * (self.U1 + self.U2) + 0.5 * (self.U1 - self.U2) * np.tanh(2.0 * z / self.delta)

    def slope(self, z):
        z = np.asarray(z, dtype=float)
        sech2 = 1.0 / np.cosh(2.0 * z / self.delta) ** 2
        return (self.U1 - self.U2) / self.delta * sech2

    def curvature(self, z):
        z = np.asarray(z, dtype=float)
        t = np.tanh(2.0 * z / self.delta)
        sech2 = 1.0 - t * t
        return -4.0 * (self.U1 - self.U2) / self.delta**2 * sech2 * t

    def shear_strength(self) -> float:
        # |U'| peaks at the inflection point z = 0.
        return abs(self.U1 - self.U2) / self.delta


@dataclass(frozen=True)
class Sech2Jet(ShearProfile):
    """Planar jet U(z) = U0 * sech^2(z/delta)."""

    U0: float
    delta: float

    def __post_init__(self):
        _check_positive("Sech2Jet.delta", self.delta)

    def value(self, z):
        z = np.asarray(z, dtype=float)
        return self.U0 / np.cosh(z / self.delta) ** 2

    def slope(self, z):
        z = np.asarray(z, dtype=float)
        s2 = 1.0 / np.cosh(z / self.delta) ** 2
        return -2.0 * self.U0 / self.delta * s2 * np.tanh(z / self.delta)

    def curvature(self, z):
        z = np.asarray(z, dtype=float)
        t = np.tanh(z / self.delta)
        s2 = 1.0 - t * t
        return -2.0 * self.U0 / self.delta**2 * s2 * (s2 - 2.0 * t * t)

    def shear_strength(self) -> float:
        # Maximizer of |U'|: tanh^2(z/delta) = 1/3, giving 4|U0|/(3 sqrt(3) delta).
        return 4.0 * abs(self.U0) / (3.0 * np.sqrt(3.0) * self.delta)


@dataclass(frozen=True)
class GaussJet(ShearProfile):
    """Planar jet U(z) = U0 * exp(-z^2 / (2 delta^2))."""

    U0: float
    delta: float

    def __post_init__(self):
        _check_positive("GaussJet.delta", self.delta)

    def value(self, z):
        z = np.asarray(z, dtype=float)
        return self.U0 * np.exp(-0.5 * (z / self.delta) ** 2)

    def slope(self, z):
        z = np.asarray(z, dtype=float)
        return -self.U0 * z / self.delta**2 * np.exp(-0.5 * (z / self.delta) ** 2)

    def curvature(self, z):
        z = np.asarray(z, dtype=float)
        zz = (z / self.delta) ** 2
        return self.U0 / self.delta**2 * (zz - 1.0) * np.exp(-0.5 * zz)

    def shear_strength(self) -> float:
        # |U'| peaks at z = +-delta.
        return abs(self.U0) / self.delta * np.exp(-0.5)


@dataclass(frozen=True)
class Wake(ShearProfile):
    """Wake U(z) = Uinf - Ud * exp(-z^2 / (2 delta^2)) with velocity deficit Ud > 0."""

    Uinf: float
    Ud: float
    delta: float

    def __post_init__(self):
        _check_positive("Wake.delta", self.delta)
        if not (self.Ud > 0.0):
            raise ProfileConfigError(f"Wake.Ud must be strictly positive, got {self.Ud!r}")

    def value(self, z):
        z = np.asarray(z, dtype=float)
        return self.Uinf - self.Ud * np.exp(-0.5 * (z / self.delta) ** 2)

    def slope(self, z):
        z = np.asarray(z, dtype=float)
        return self.Ud * z / self.delta**2 * np.exp(-0.5 * (z / self.delta) ** 2)

    def curvature(self, z):
        z = np.asarray(z, dtype=float)
        zz = (z / self.delta) ** 2
        return self.Ud / self.delta**2 * (1.0 - zz) * np.exp(-0.5 * zz)

    def shear_strength(self) -> float:
        return self.Ud / self.delta * np.exp(-0.5)


@dataclass(frozen=True)
class TabulatedProfile(ShearProfile):
    """Profile interpolated from sampled (z, U) pairs.

    A spline of the requested order (default cubic) supplies U; its first
    and second derivatives supply U' and U''.  The curvature of a cubic is
    only piecewise linear, so U'' carries reduced accuracy; document-grade
    use only.  The shear strength comes from dense sampling refined by a
    bounded scalar minimization around the best sample.
    """

    z_samples: tuple
    u_samples: tuple
    order: int = 3
    _spline: object = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        zs = np.asarray(self.z_samples, dtype=float)
        us = np.asarray(self.u_samples, dtype=float)
        if zs.ndim != 1 or zs.shape != us.shape:
            raise ProfileConfigError("TabulatedProfile needs matching 1-D z and U sample arrays")
        if zs.size < 4:
            raise ProfileConfigError(f"TabulatedProfile needs at least 4 samples, got {zs.size}")
        if not np.all(np.diff(zs) > 0):
            raise ProfileConfigError("TabulatedProfile z samples must be strictly increasing")
        if self.order not in (1, 2, 3):
            raise ProfileConfigError(f"TabulatedProfile.order must be 1, 2, or 3, got {self.order!r}")
        if not (np.all(np.isfinite(zs)) and np.all(np.isfinite(us))):
            raise ProfileConfigError("TabulatedProfile samples must be finite")
        spline = make_interp_spline(zs, us, k=self.order)
        object.__setattr__(self, "_spline", spline)

    @property
    def z_min(self):
        return self.z_samples[0]

    @property
    def z_max(self):
        return self.z_samples[-1]

    def _clip_check(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(z < self.z_min) or np.any(z > self.z_max):
            raise ProfileRangeError(
                f"tabulated profile sampled on [{self.z_min}, {self.z_max}], asked outside"
            )
        return z

    def value(self, z):
        return self._spline(self._clip_check(z))

    def slope(self, z):
        return self._spline.derivative(1)(self._clip_check(z))

    def curvature(self, z):
        if self.order < 2:
            return np.zeros_like(np.asarray(z, dtype=float))
        return self._spline.derivative(2)(self._clip_check(z))

    def shear_strength(self) -> float:
        from scipy.optimize import minimize_scalar

        zs = np.linspace(self.z_min, self.z_max, 10_000)
        slopes = np.abs(self.slope(zs))
        i = int(np.argmax(slopes))
        lo = zs[max(i - 1, 0)]
        hi = zs[min(i + 1, zs.size - 1)]
        if lo == hi:
            return float(slopes[i])
        res = minimize_scalar(lambda z: -abs(float(self.slope(z))), bounds=(lo, hi), method="bounded")
        return max(float(slopes[i]), float(-res.fun))


def eval_profile(profile: ShearProfile, z, h: float | None = None):
    """Evaluate (U, U', U'') at z, optionally validating z against a box height h."""
    if h is not None:
        za = np.asarray(z, dtype=float)
        if np.any(np.abs(za) > 0.5 * h * (1.0 + 1e-12)):
            raise ProfileRangeError(f"z outside [-h/2, h/2] with h = {h}")
    return profile.evaluate(z)


def shear_strength(profile: ShearProfile) -> float:
    """Shear-gradient strength S = sup |U'(z)|."""
    return profile.shear_strength()


_PROFILE_KINDS = {
    "mixing_layer": (MixingLayer, ("U1", "U2", "delta")),
    "jet_sech2": (Sech2Jet, ("U0", "delta")),
    "jet_gauss": (GaussJet, ("U0", "delta")),
    "wake": (Wake, ("Uinf", "Ud", "delta")),
}


def profile_from_spec(kind: str, params: dict) -> ShearProfile:
    """Build a profile from a configuration kind + parameter map.

    Raises ProfileConfigError on unknown kinds, missing or unexpected keys.
    """
    if kind == "tabulated":
        wanted = {"z_samples", "u_samples", "order"}
        unknown = set(params) - wanted
        if unknown:
            raise ProfileConfigError(f"unknown tabulated-profile keys: {sorted(unknown)}")
        if "z_samples" not in params or "u_samples" not in params:
            raise ProfileConfigError("tabulated profile needs z_samples and u_samples")
        return TabulatedProfile(
            z_samples=tuple(params["z_samples"]),
            u_samples=tuple(params["u_samples"]),
            order=int(params.get("order", 3)),
        )
    if kind not in _PROFILE_KINDS:
        raise ProfileConfigError(
            f"unknown profile kind {kind!r}; expected one of "
            f"{sorted(_PROFILE_KINDS) + ['tabulated']}"
        )
    cls, names = _PROFILE_KINDS[kind]
    missing = [n for n in names if n not in params]
    unknown = set(params) - set(names)
    if missing:
        raise ProfileConfigError(f"profile {kind!r} missing parameters: {missing}")
    if unknown:
        raise ProfileConfigError(f"profile {kind!r} got unknown parameters: {sorted(unknown)}")
    return cls(**{n: float(params[n]) for n in names})
