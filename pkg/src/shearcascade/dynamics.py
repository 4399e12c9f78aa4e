"""Right-hand-side evaluation and time stepping of the truncated system.

The evolution equation for the coefficient vector is

    du/dt = -nu * lam * u  - [U d/dx u] - [w U'(z) e_x] - [(u . grad) u],

where the three bracketed terms are Galerkin coefficient vectors.  The
mean-flow terms are linear and couple only modes within one horizontal
orbit {(+-|j|, +-|l|)} (in particular never across different horizontal
wavenumbers), so they are precomputed as small dense blocks: horizontal
overlaps are evaluated analytically and the vertical integrals against
U(z) and U'(z) by composite Gauss-Legendre quadrature.  The advection
blocks are antisymmetric for every profile (the x-integral of
U d/dx (w_n . w_m) vanishes pointwise in z), which makes the discrete
energy law hold to rounding.

The quadratic term goes through the dealiased collocation grid, so its
Galerkin coefficients satisfy sum_m u_m N_m = 0 to rounding as well.

Diffusion is integrated exactly through the factors exp(-nu lam dt); the
remaining terms use an explicit third-order Runge-Kutta (Kutta's scheme)
conjugated by the integrating factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .basis import _FAMILIES, Basis
from .errors import BlowUpError
from .field import SpectralField
from .grid import Grid, TransformPlan, default_grid
from .profiles import ShearProfile

__all__ = [
    "ShearOperators",
    "GalerkinRHS",
    "IntegratorConfig",
    "SimState",
    "Stepper",
    "step",
    "stable_dt",
]

_SHAPE_C, _SHAPE_S = 0, 1


def _canon(parity: str, m: int):
    """Canonical (shape, |m|, sign) of a horizontal factor; dropped sines are constants."""
    if parity == "c":
        return (_SHAPE_C, abs(m), 1.0)
    if m == 0:
        return (_SHAPE_C, 0, 1.0)
    return (_SHAPE_S, abs(m), 1.0 if m > 0 else -1.0)


def _canon_deriv(parity: str, m: int, period: float):
    """Canonical form of the x-derivative of a horizontal factor."""
    w = 2.0 * math.pi * m / period
    if m == 0:
        return (_SHAPE_C, 0, 0.0)
    if parity == "c":
        return (_SHAPE_S, abs(m), -abs(w))
    return (_SHAPE_C, abs(m), w)


def _overlap(fa, fb, period: float) -> float:
    """Integral over one period of two canonical factors."""
    sa, ma, ca = fa
    sb, mb, cb = fb
    if sa != sb or ma != mb:
        return 0.0
    if ma == 0:
        return period * ca * cb
    return 0.5 * period * ca * cb


def _gauss_legendre_panels(lo: float, hi: float, panels: int, nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).reshape(-1)
    wts = (half[:, None] * w[None, :]).reshape(-1)
    return pts, wts


class ShearOperators:
    """Galerkin blocks of the mean-flow advection and production terms.

    apply_advection(c) returns the coefficients of U(z) d/dx u and
    apply_production(c) those of w U'(z) e_x, for a field with
    coefficients c.  Both are block-diagonal over horizontal orbits
    {(+-|j|, +-|l|)}; fields supported on disjoint horizontal-wavenumber
    ranges therefore never couple.
    """

    def __init__(self, basis: Basis, profile: ShearProfile, quad_panels: int = 16, quad_nodes: int = 24):
        self.basis = basis
        self.profile = profile
        domain = basis.domain
        h = domain.h

        z, w = _gauss_legendre_panels(-0.5 * h, 0.5 * h, quad_panels, quad_nodes)
        zeta = z + 0.5 * h
        uval = np.asarray(profile.value(z), dtype=float)
        uslope = np.asarray(profile.slope(z), dtype=float)
        kz = math.pi * np.arange(1, basis.truncation.kmax + 1) / h
        cosz = np.cos(np.outer(kz, zeta))
        sinz = np.sin(np.outer(kz, zeta))
        # z-integral tables indexed [k_n - 1, k_m - 1]
        ucc = np.einsum("kq,q,lq->kl", cosz, w * uval, cosz)
        uss = np.einsum("kq,q,lq->kl", sinz, w * uval, sinz)
        gsc = np.einsum("kq,q,lq->kl", sinz, w * uslope, cosz)

        orbits: dict[tuple[int, int], list[int]] = {}
        for m, mode in enumerate(basis.modes):
            orbits.setdefault((abs(mode.index.j), abs(mode.index.l)), []).append(m)

        inv_area = 1.0 / (domain.Lx * domain.Ly)
        self.blocks = []
        for ids in orbits.values():
            ids = np.asarray(ids, dtype=np.int64)
            nb = ids.size
            modes = [basis.modes[i] for i in ids]
            kk = np.array([mo.index.k for mo in modes]) - 1
            coeff = np.array([mo.coeff for mo in modes])  # (nb, 3)

            raw_x, raw_y, der_x = [], [], []
            for mo in modes:
                xpar, ypar, _, _ = _FAMILIES[mo.quadrant]
                j, l = mo.index.j, mo.index.l
                raw_x.append([_canon(xpar[i], j) for i in range(3)])
                raw_y.append([_canon(ypar[i], l) for i in range(3)])
                der_x.append([_canon_deriv(xpar[i], j, domain.Lx) for i in range(3)])

            adv = np.zeros((nb, nb))
            for i in range(3):
                ztab = ucc if i < 2 else uss
                for n in range(nb):
                    dfx = der_x[n][i]
                    fyn = raw_y[n][i]
                    if dfx[2] == 0.0:
                        continue
                    for m in range(nb):
                        ix = _overlap(dfx, raw_x[m][i], domain.Lx)
                        if ix == 0.0:
                            continue
                        iy = _overlap(fyn, raw_y[m][i], domain.Ly)
                        if iy == 0.0:
                            continue
                        adv[m, n] += coeff[n, i] * coeff[m, i] * ix * iy * inv_area * ztab[kk[n], kk[m]]

            prod = np.zeros((nb, nb))
            for n in range(nb):
                fxn = raw_x[n][2]
                fyn = raw_y[n][2]
                for m in range(nb):
                    ix = _overlap(fxn, raw_x[m][0], domain.Lx)
                    if ix == 0.0:
                        continue
                    iy = _overlap(fyn, raw_y[m][0], domain.Ly)
                    if iy == 0.0:
                        continue
                    prod[m, n] += coeff[n, 2] * coeff[m, 0] * ix * iy * inv_area * gsc[kk[n], kk[m]]

            self.blocks.append((ids, adv, prod))

    def apply_advection(self, coeff: np.ndarray) -> np.ndarray:
        out = np.zeros_like(coeff)
        for ids, adv, _ in self.blocks:
            out[ids] = adv @ coeff[ids]
        return out

    def apply_production(self, coeff: np.ndarray) -> np.ndarray:
        out = np.zeros_like(coeff)
        for ids, _, prod in self.blocks:
            out[ids] = prod @ coeff[ids]
        return out

    def advection_dense(self) -> np.ndarray:
        """Full advection matrix (testing/inspection only)."""
        n = self.basis.n_modes
        full = np.zeros((n, n))
        for ids, adv, _ in self.blocks:
            full[np.ix_(ids, ids)] = adv
        return full

    def production_dense(self) -> np.ndarray:
        n = self.basis.n_modes
        full = np.zeros((n, n))
        for ids, _, prod in self.blocks:
            full[np.ix_(ids, ids)] = prod
        return full


class GalerkinRHS:
    """Evaluates the projected right-hand side on the dealiased grid.

    include_nonlinear / include_shear switch off the quadratic and
    mean-flow terms for linear-only studies and convergence tests.
    """

    def __init__(
        self,
        basis: Basis,
        profile: ShearProfile,
        grid: Grid | None = None,
        include_nonlinear: bool = True,
        include_shear: bool = True,
        quad_panels: int = 16,
        quad_nodes: int = 24,
    ):
        self.basis = basis
        self.profile = profile
        self.plan = TransformPlan(basis, grid or default_grid(basis.truncation))
        self.include_nonlinear = include_nonlinear
        self.include_shear = include_shear
        self.ops = (
            ShearOperators(basis, profile, quad_panels=quad_panels, quad_nodes=quad_nodes)
            if include_shear
            else None
        )

    def bilinear(self, advecting: np.ndarray, advected: np.ndarray) -> np.ndarray:
        """Galerkin coefficients of (u . grad) v for coefficient vectors u, v."""
        if not (np.all(np.isfinite(advecting)) and np.all(np.isfinite(advected))):
            raise BlowUpError("non-finite coefficients entering the quadratic term")
        uvel = self.plan.synthesize(advecting)
        if not np.all(np.isfinite(uvel)):
            raise BlowUpError("non-finite grid values in the quadratic term")
        _, gvel = self.plan.synthesize_with_gradient(advected)
        conv = np.einsum("jxyz,ijxyz->ixyz", uvel, gvel)
        return self.plan.project(conv)

    def nonlinear(self, coeff: np.ndarray) -> np.ndarray:
        """Galerkin coefficients of (u . grad) u."""
        if not np.all(np.isfinite(coeff)):
            raise BlowUpError("non-finite coefficients entering the quadratic term")
        uvel, gvel = self.plan.synthesize_with_gradient(coeff)
        if not np.all(np.isfinite(uvel)):
            raise BlowUpError("non-finite grid values in the quadratic term")
        conv = np.einsum("jxyz,ijxyz->ixyz", uvel, gvel)
        return self.plan.project(conv)

    def nonstiff(self, coeff: np.ndarray) -> np.ndarray:
        """Every right-hand-side term except diffusion, negated as it enters du/dt."""
        out = np.zeros_like(coeff)
        if self.include_shear:
            out -= self.ops.apply_advection(coeff)
            out -= self.ops.apply_production(coeff)
        if self.include_nonlinear:
            out -= self.nonlinear(coeff)
        return out

    def rhs(self, coeff: np.ndarray) -> np.ndarray:
        """Full projected right-hand side du/dt."""
        return self.nonstiff(coeff) - self.basis.domain.nu * self.basis.eigenvalue * coeff


def nonlinear_galerkin(u: SpectralField, rhs: GalerkinRHS) -> SpectralField:
    """Coefficient vector of (u . grad) u (operation-level wrapper)."""
    return SpectralField(u.basis, rhs.nonlinear(u.coeff))


@dataclass(frozen=True)
class IntegratorConfig:
    """Time-step size, scheme selector, and stability safety factor."""

    dt: float
    scheme: str = "ifrk3"
    safety: float = 0.5
    adapt_every: int = 0  # recompute dt from the state every this many steps; 0 = fixed

    def __post_init__(self):
        if not (self.dt > 0.0):
            raise ValueError(f"IntegratorConfig.dt must be positive, got {self.dt!r}")
        if self.scheme != "ifrk3":
            raise ValueError(f"unknown scheme {self.scheme!r}; only 'ifrk3' is implemented")
        if not (0.0 < self.safety <= 1.0):
            raise ValueError("IntegratorConfig.safety must lie in (0, 1]")


@dataclass(frozen=True)
class SimState:
    t: float
    u: SpectralField
    step: int = 0


def step_ifrk3(coeff: np.ndarray, dt: float, rhs: GalerkinRHS) -> np.ndarray:
    """One integrating-factor RK3 step; diffusion exact, the rest explicit."""
    nu_lam = rhs.basis.domain.nu * rhs.basis.eigenvalue
    e_full = np.exp(-nu_lam * dt)
    e_half = np.exp(-0.5 * nu_lam * dt)

    g0 = rhs.nonstiff(coeff)
    u_b = e_half * (coeff + 0.5 * dt * g0)
    g_b = rhs.nonstiff(u_b)
    u_c = e_full * (coeff - dt * g0) + 2.0 * dt * e_half * g_b
    g_c = rhs.nonstiff(u_c)
    return e_full * coeff + (dt / 6.0) * (e_full * g0 + 4.0 * e_half * g_b + g_c)


def step(state: SimState, cfg: IntegratorConfig, rhs: GalerkinRHS) -> SimState:
    """Advance one step; raises BlowUpError (with the last good time) on non-finite output."""
    new_coeff = step_ifrk3(state.u.coeff, cfg.dt, rhs)
    if not np.all(np.isfinite(new_coeff)):
        raise BlowUpError("time step produced non-finite coefficients", last_good_time=state.t)
    return SimState(t=state.t + cfg.dt, u=SpectralField(state.u.basis, new_coeff), step=state.step + 1)


def stable_dt(rhs: GalerkinRHS, coeff: np.ndarray, safety: float) -> float:
    """Heuristic explicit-term bound: safety * min(1/(4 S), 1/(kh_max * u_max))."""
    bounds = []
    if rhs.include_shear:
        s = rhs.profile.shear_strength()
        if s > 0.0:
            bounds.append(0.25 / s)
    if rhs.include_nonlinear:
        umax = float(np.max(np.abs(rhs.plan.synthesize(coeff))))
        if umax > 0.0:
            bounds.append(1.0 / (rhs.basis.kh_max * umax))
    if not bounds:
        return math.inf
    return safety * min(bounds)


class Stepper:
    """Stateful driver: fixed or periodically re-estimated dt, blow-up guard."""

    def __init__(self, rhs: GalerkinRHS, cfg: IntegratorConfig, initial_state: SimState,
                 energy_guard_factor: float = 1e6, dt_cap: float | None = None):
        self.rhs = rhs
        self.cfg = cfg
        self.dt_cap = cfg.dt if dt_cap is None else dt_cap
        self.state = initial_state
        e0 = float(np.sum(initial_state.u.coeff ** 2))
        self.energy_ceiling = energy_guard_factor * max(e0, 1e-300)

    def advance(self) -> SimState:
        # dt refresh happens on step-count boundaries (step 0 included), so a
        # run resumed from a snapshot carrying its dt reproduces the original
        # schedule exactly.
        if self.cfg.adapt_every > 0 and self.state.step % self.cfg.adapt_every == 0:
            dt = min(self.dt_cap, stable_dt(self.rhs, self.state.u.coeff, self.cfg.safety))
            self.cfg = replace(self.cfg, dt=dt)
        self.state = step(self.state, self.cfg, self.rhs)
        energy = float(np.sum(self.state.u.coeff ** 2))
        if energy > self.energy_ceiling:
            raise BlowUpError(
                f"energy {energy:.3e} exceeded the blow-up guard", last_good_time=self.state.t
            )
        return self.state
