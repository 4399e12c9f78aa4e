"""Energy-budget ledger, time-averaging, and cascade-condition audits.

All budget quantities follow the per-unit-mass convention in which squared
norms are scaled by kappa1^3 (kappa1 the smallest total wavenumber):

    eps_tot          nu kappa1^3 ||grad u||^2
    eps[a, b)        nu kappa1^3 ||grad u_{a,b}||^2, split into horizontal
                     (x, y) and vertical (z) parts
    flux(kbar)       -kappa1^3 ( (u . grad) u , u_{kbar, inf} )
    prod[a, b)       -kappa1^3 ( w U'(z) e_x , u_{a,b} )

The shell set is the sorted distinct horizontal wavenumbers of the basis;
every band edge of interest is a shell value, so per-shell suffix sums
carry the full information.  Ensemble averages are surrogated by
single-trajectory time averages past a burn-in, with block averaging for
standard errors; this assumes the long-run statistics are captured by one
trajectory, which is an empirical matter and is reported as such.

In a finite truncation the flux at infinity vanishes identically, so the
restricted flux coincides with the flux and both cascade bounds (the lower
bound and the two-sided restricted-flux bound) apply to the same series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import Basis
from .field import SpectralField

__all__ = [
    "BudgetSample",
    "budget_sample",
    "flux_at",
    "production_bounds_check",
    "RunningStats",
    "EnsembleStats",
    "accumulate",
    "CascadeReport",
    "build_report",
    "AuditResult",
    "cascade_audit",
    "MonotonicityResult",
    "flux_monotonicity_check",
    "ScaleSet",
    "characteristic_scales",
    "scales_from_lab",
    "kolmogorov_heuristic",
    "kolmogorov_threshold",
]


def _shell_suffix(basis: Basis, per_mode: np.ndarray) -> np.ndarray:
    """Suffix sums over shells: out[i] = sum of per_mode over modes with shell >= i."""
    per_shell = np.bincount(basis.shell_index, weights=per_mode, minlength=basis.shells.size)
    return np.cumsum(per_shell[::-1])[::-1]


@dataclass(frozen=True)
class BudgetSample:
    """Instantaneous ledger at one time; arrays are indexed by shell.

    Additivity is exact by construction: eps_high = eps_high_xy +
    eps_high_z and eps_low = eps_tot - eps_high componentwise.
    kcal_inst[i] is sqrt(gxy_high / e_high) of the band [shells[i], inf),
    NaN when the band carries no energy.
    """

    t: float
    E: float
    G: float
    eps_tot: float
    prod_total: float
    nu_k1cubed: float
    shells: np.ndarray
    eps_low: np.ndarray
    eps_high: np.ndarray
    eps_high_xy: np.ndarray
    eps_high_z: np.ndarray
    flux: np.ndarray
    prod_high: np.ndarray
    e_high: np.ndarray
    gxy_high: np.ndarray

    @property
    def kcal_inst(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.sqrt(self.gxy_high / self.e_high)


def budget_sample(u: SpectralField, shear_ops, nonlinear_coeff: np.ndarray, t: float = 0.0) -> BudgetSample:
    """Assemble the instantaneous ledger.

    nonlinear_coeff must be the Galerkin coefficient vector of (u . grad) u
    for this u (shared with the right-hand-side evaluation); shear_ops
    supplies the production operator.
    """
    basis = u.basis
    c = u.coeff
    k1cubed = basis.domain.kappa1**3
    nu = basis.domain.nu

    c2 = c * c
    e_high = _shell_suffix(basis, c2)
    gxy_high = _shell_suffix(basis, basis.kh**2 * c2)
    gz_high = _shell_suffix(basis, basis.kz**2 * c2)
    eps_high_xy = nu * k1cubed * gxy_high
    eps_high_z = nu * k1cubed * gz_high
    eps_high = eps_high_xy + eps_high_z
    eps_tot = eps_high[0]
    eps_low = eps_tot - eps_high

    flux = -k1cubed * _shell_suffix(basis, c * nonlinear_coeff)
    prod_coeff = shear_ops.apply_production(c)
    prod_high = -k1cubed * _shell_suffix(basis, c * prod_coeff)

    e = float(np.sum(c2))
    g = float(gxy_high[0] + gz_high[0])
    return BudgetSample(
        t=t,
        E=e,
        G=g,
        eps_tot=float(eps_tot),
        prod_total=float(prod_high[0]),
        nu_k1cubed=nu * k1cubed,
        shells=basis.shells,
        eps_low=eps_low,
        eps_high=eps_high,
        eps_high_xy=eps_high_xy,
        eps_high_z=eps_high_z,
        flux=flux,
        prod_high=prod_high,
        e_high=e_high,
        gxy_high=gxy_high,
    )


def flux_at(u: SpectralField, nonlinear_coeff: np.ndarray, kbar: float) -> float:
    """Low-to-high energy flux across an arbitrary horizontal wavenumber.

    Zero when no mode sits at or above kbar (empty projection).
    """
    basis = u.basis
    mask = basis.kh >= kbar
    return float(-basis.domain.kappa1**3 * np.sum(u.coeff[mask] * nonlinear_coeff[mask]))


def production_bounds_check(sample: BudgetSample, kappa_s: float, rel_slack: float = 1e-12):
    """Pathwise production bounds on every shell.

    Checks |prod_high| <= kappa_s^2/(2 kbar^2) * eps_high_xy and
    |prod_high| <= kappa_s^2/(2 kcal_inst^2) * eps_high_xy; the second is
    evaluated as nu kappa1^3 kappa_s^2 / 2 * e_high, the same bound
    without the 0/0 ambiguity on empty bands.  Both hold for every
    divergence-free field, so a violation indicates a defect, not physics.
    Returns (ok_shell, ok_kcal) boolean arrays over shells.
    """
    absprod = np.abs(sample.prod_high)
    scale = sample.eps_tot if sample.eps_tot > 0 else 1.0
    bound_shell = 0.5 * kappa_s**2 / sample.shells**2 * sample.eps_high_xy
    ok_shell = absprod <= bound_shell * (1.0 + rel_slack) + rel_slack * scale
    bound_kcal = 0.5 * kappa_s**2 * sample.nu_k1cubed * sample.e_high
    ok_kcal = absprod <= bound_kcal * (1.0 + rel_slack) + rel_slack * scale
    return ok_shell, ok_kcal


class RunningStats:
    """Time-average accumulator with block-averaged error bars.

    Samples before the burn-in time are ignored.  Means and standard
    errors come from n_blocks contiguous blocks of the retained series;
    error bars are only reported once at least two blocks exist.
    """

    def __init__(self, burn_in: float = 0.0, n_blocks: int = 10):
        if n_blocks < 2:
            raise ValueError("RunningStats needs at least 2 blocks")
        self.burn_in = burn_in
        self.n_blocks = n_blocks
        self.samples: list[BudgetSample] = []

    def add(self, sample: BudgetSample):
        if sample.t >= self.burn_in:
            self.samples.append(sample)
        return self

    @property
    def count(self) -> int:
        return len(self.samples)

    def series(self, extract) -> np.ndarray:
        return np.array([extract(s) for s in self.samples])

    def block_stats(self, extract):
        """(mean, stderr) of a per-sample quantity via contiguous block means."""
        values = self.series(extract)
        n_blocks = min(self.n_blocks, values.shape[0])
        if n_blocks < 2:
            mean = values.mean(axis=0) if values.size else np.nan
            return mean, np.full(np.shape(mean), np.nan)
        blocks = np.array_split(values, n_blocks, axis=0)
        bm = np.stack([b.mean(axis=0) for b in blocks])
        mean = bm.mean(axis=0)
        err = bm.std(axis=0, ddof=1) / math.sqrt(n_blocks)
        return mean, err


def accumulate(stats: RunningStats, sample: BudgetSample) -> RunningStats:
    """Fold one sample into the running statistics (operation-level wrapper)."""
    return stats.add(sample)


class EnsembleStats:
    """Pools several independently seeded trajectories into one average.

    Each member trajectory is blocked on its own (blocks never straddle
    trajectories); the pooled mean and standard error come from the
    combined collection of block means, so members are averaged exactly
    like blocks of a single long run.  Duck-compatible with RunningStats
    where report building is concerned.
    """

    def __init__(self, members: list):
        if not members:
            raise ValueError("EnsembleStats needs at least one member trajectory")
        self.members = members
        self.burn_in = max(m.burn_in for m in members)
        self.n_blocks = sum(min(m.n_blocks, max(m.count, 1)) for m in members)

    @property
    def count(self) -> int:
        return sum(m.count for m in self.members)

    def series(self, extract) -> np.ndarray:
        return np.concatenate([m.series(extract) for m in self.members], axis=0)

    def block_stats(self, extract):
        block_means = []
        for member in self.members:
            values = member.series(extract)
            n_blocks = min(member.n_blocks, values.shape[0])
            if n_blocks == 0:
                continue
            for block in np.array_split(values, n_blocks, axis=0):
                block_means.append(block.mean(axis=0))
        if len(block_means) < 2:
            mean = block_means[0] if block_means else np.nan
            return mean, np.full(np.shape(mean), np.nan)
        bm = np.stack(block_means)
        mean = bm.mean(axis=0)
        err = bm.std(axis=0, ddof=1) / math.sqrt(bm.shape[0])
        return mean, err


@dataclass(frozen=True)
class CascadeReport:
    """Time-averaged ledger with error bars plus characteristic wavenumbers.

    kcal[i] is the band Taylor wavenumber sqrt(<gxy_high> / <e_high>) --
    the ratio of averages, as the cascade conditions require.  The flux at
    infinity is identically zero in a finite truncation, so flux doubles
    as the restricted flux.
    """

    shells: np.ndarray
    nu: float
    shear: float
    kappa1: float
    n_samples: int
    n_blocks: int
    burn_in: float
    t_start: float
    t_end: float

    E_mean: float
    E_err: float
    G_mean: float
    G_err: float
    eps_tot_mean: float
    eps_tot_err: float
    prod_total_mean: float
    prod_total_err: float

    flux_mean: np.ndarray
    flux_err: np.ndarray
    eps_low_mean: np.ndarray
    eps_low_err: np.ndarray
    eps_high_mean: np.ndarray
    eps_high_err: np.ndarray
    eps_high_xy_mean: np.ndarray
    eps_high_xy_err: np.ndarray
    eps_high_z_mean: np.ndarray
    eps_high_z_err: np.ndarray
    prod_high_mean: np.ndarray
    prod_high_err: np.ndarray
    e_high_mean: np.ndarray
    e_high_err: np.ndarray
    gxy_high_mean: np.ndarray
    gxy_high_err: np.ndarray

    closure_mean: np.ndarray
    closure_err: np.ndarray
    total_closure_mean: float
    total_closure_err: float

    flux_at_infinity: float = 0.0

    @property
    def kcal(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.sqrt(self.gxy_high_mean / self.e_high_mean)

    @property
    def kappa_s(self) -> float:
        return math.sqrt(self.shear / self.nu)

    @property
    def kappa_eta(self) -> float:
        return (self.eps_tot_mean / self.nu**3) ** 0.25 if self.eps_tot_mean > 0 else math.nan

    @property
    def kappa_c(self) -> float:
        return self.shear**1.5 / math.sqrt(self.eps_tot_mean) if self.eps_tot_mean > 0 else math.inf

    @property
    def kappa_t(self) -> float:
        return math.sqrt(self.G_mean / self.E_mean) if self.E_mean > 0 else math.nan

    @property
    def kinetic_energy_mean(self) -> float:
        return 0.5 * self.kappa1**3 * self.E_mean


def _band_residual(sample: BudgetSample) -> np.ndarray:
    """Per-band budget residual eps - dflux - prod on [shell_i, shell_{i+1}) and [last, inf).

    Pathwise this equals -kappa1^3 d/dt ||u_band||^2 / 2, so its long-run
    mean vanishes in a statistically steady state.
    """
    pad = lambda a: np.concatenate([a, [0.0]])
    eps = pad(sample.eps_high)
    flx = pad(sample.flux)
    prd = pad(sample.prod_high)
    return (eps[:-1] - eps[1:]) - (flx[:-1] - flx[1:]) - (prd[:-1] - prd[1:])


def build_report(stats: RunningStats, basis: Basis, profile) -> CascadeReport:
    """Average the accumulated ledger and compute derived wavenumbers."""
    if stats.count == 0:
        raise ValueError("no samples past the burn-in; cannot build a report")
    times = stats.series(lambda s: s.t)
    pick = lambda name: stats.block_stats(lambda s: getattr(s, name))
    e_mean, e_err = pick("E")
    g_mean, g_err = pick("G")
    eps_mean, eps_err = pick("eps_tot")
    pt_mean, pt_err = pick("prod_total")
    flux_mean, flux_err = pick("flux")
    eps_low_mean, eps_low_err = pick("eps_low")
    eps_high_mean, eps_high_err = pick("eps_high")
    eps_hxy_mean, eps_hxy_err = pick("eps_high_xy")
    eps_hz_mean, eps_hz_err = pick("eps_high_z")
    prod_mean, prod_err = pick("prod_high")
    eh_mean, eh_err = pick("e_high")
    gxyh_mean, gxyh_err = pick("gxy_high")
    closure_mean, closure_err = stats.block_stats(_band_residual)
    tc_mean, tc_err = stats.block_stats(lambda s: s.eps_tot - s.prod_total)

    return CascadeReport(
        shells=basis.shells,
        nu=basis.domain.nu,
        shear=float(profile.shear_strength()),
        kappa1=basis.domain.kappa1,
        n_samples=stats.count,
        n_blocks=min(stats.n_blocks, stats.count),
        burn_in=stats.burn_in,
        t_start=float(times.min()),
        t_end=float(times.max()),
        E_mean=float(e_mean),
        E_err=float(e_err),
        G_mean=float(g_mean),
        G_err=float(g_err),
        eps_tot_mean=float(eps_mean),
        eps_tot_err=float(eps_err),
        prod_total_mean=float(pt_mean),
        prod_total_err=float(pt_err),
        flux_mean=flux_mean,
        flux_err=flux_err,
        eps_low_mean=eps_low_mean,
        eps_low_err=eps_low_err,
        eps_high_mean=eps_high_mean,
        eps_high_err=eps_high_err,
        eps_high_xy_mean=eps_hxy_mean,
        eps_high_xy_err=eps_hxy_err,
        eps_high_z_mean=eps_hz_mean,
        eps_high_z_err=eps_hz_err,
        prod_high_mean=prod_mean,
        prod_high_err=prod_err,
        e_high_mean=eh_mean,
        e_high_err=eh_err,
        gxy_high_mean=gxyh_mean,
        gxy_high_err=gxyh_err,
        closure_mean=closure_mean,
        closure_err=closure_err,
        total_closure_mean=float(tc_mean),
        total_closure_err=float(tc_err),
    )


@dataclass(frozen=True)
class AuditResult:
    """Per-shell cascade-condition flags and flux-bound verdicts.

    Shells where both conditions hold form the admissible set; on it the
    flux must sit between (1-delta)^2 and (1+delta) times the mean
    dissipation, within two standard errors.  overall is 'pass', 'fail',
    or 'vacuous' (empty admissible set, reported distinctly).
    """

    delta: float
    shells: np.ndarray
    cond_a: np.ndarray
    cond_b: np.ndarray
    admissible: np.ndarray
    lower_ok: np.ndarray
    upper_ok: np.ndarray
    overall: str

    @property
    def shell_verdicts(self) -> list:
        out = []
        for i in range(self.shells.size):
            if not self.admissible[i]:
                out.append("not-admissible")
            elif self.lower_ok[i] and self.upper_ok[i]:
                out.append("pass")
            else:
                out.append("fail")
        return out


def cascade_audit_values(
    shells, kcal, eps_low_mean, flux_mean, flux_err,
    eps_tot_mean, eps_tot_err, kappa_s, delta,
) -> AuditResult:
    """Array-level cascade audit (shared by reports and persisted CSVs)."""
    if not (delta > 0.0):
        raise ValueError(f"delta must be positive, got {delta!r}")
    shells = np.asarray(shells, dtype=float)
    kcal = np.asarray(kcal, dtype=float)
    ks2 = kappa_s**2
    with np.errstate(divide="ignore", invalid="ignore"):
        lhs_a = np.where(ks2 == 0.0, 0.0, 0.5 * ks2 / kcal**2)
    cond_a = np.where(np.isnan(lhs_a), False, lhs_a <= delta)
    cond_b = (
        np.asarray(eps_low_mean) <= delta * eps_tot_mean
        if eps_tot_mean > 0
        else np.zeros(shells.size, dtype=bool)
    )
    admissible = cond_a & cond_b

    lower = (1.0 - delta) ** 2 * eps_tot_mean
    upper = (1.0 + delta) * eps_tot_mean
    flux_mean = np.asarray(flux_mean, dtype=float)
    flux_err = np.asarray(flux_err, dtype=float)
    lower_sig = np.sqrt(flux_err**2 + ((1.0 - delta) ** 2 * eps_tot_err) ** 2)
    upper_sig = np.sqrt(flux_err**2 + ((1.0 + delta) * eps_tot_err) ** 2)
    lower_ok = flux_mean >= lower - 2.0 * lower_sig
    upper_ok = flux_mean <= upper + 2.0 * upper_sig

    if not np.any(admissible):
        overall = "vacuous"
    elif np.all(lower_ok[admissible] & upper_ok[admissible]):
        overall = "pass"
    else:
        overall = "fail"
    return AuditResult(
        delta=delta,
        shells=shells,
        cond_a=cond_a,
        cond_b=np.asarray(cond_b, dtype=bool),
        admissible=admissible,
        lower_ok=lower_ok,
        upper_ok=upper_ok,
        overall=overall,
    )


def cascade_audit(report: CascadeReport, delta: float) -> AuditResult:
    """Check the cascade bounds on every admissible shell.

    Condition A: kappa_s^2 / (2 kcal^2) <= delta; condition B:
    eps_low / eps_tot <= delta.  On admissible shells the flux (equal to
    the restricted flux here) must satisfy
    (1-delta)^2 eps_tot <= flux <= (1+delta) eps_tot within two combined
    standard errors.  The bounds carry information for delta in (0, 1];
    beyond that the admissibility conditions no longer force the product
    (1-a)(1-b) above (1-delta)^2, so larger delta is accepted but the
    verdicts are not backed by the derivation.
    """
    return cascade_audit_values(
        report.shells, report.kcal, report.eps_low_mean,
        report.flux_mean, report.flux_err,
        report.eps_tot_mean, report.eps_tot_err,
        report.kappa_s, delta,
    )


@dataclass(frozen=True)
class MonotonicityResult:
    eligible: np.ndarray      # shells with kbar^2 > kappa_s^2 / 2
    nonincreasing_ok: np.ndarray  # adjacent eligible pairs within error bars
    nonnegative_ok: np.ndarray
    overall: bool


def flux_monotonicity_check(report: CascadeReport, kappa_s: float | None = None) -> MonotonicityResult:
    """Averaged flux must be nonnegative and nonincreasing above kappa_s/sqrt(2).

    Both assertions carry two combined standard errors of slack.
    """
    ks = report.kappa_s if kappa_s is None else kappa_s
    eligible = report.shells**2 > 0.5 * ks**2
    idx = np.where(eligible)[0]
    pair_ok = np.ones(max(idx.size - 1, 0), dtype=bool)
    for n in range(idx.size - 1):
        i, j = idx[n], idx[n + 1]
        slack = 2.0 * math.sqrt(report.flux_err[i] ** 2 + report.flux_err[j] ** 2)
        pair_ok[n] = report.flux_mean[i] >= report.flux_mean[j] - slack
    nonneg = report.flux_mean[idx] >= -2.0 * report.flux_err[idx]
    return MonotonicityResult(
        eligible=eligible,
        nonincreasing_ok=pair_ok,
        nonnegative_ok=nonneg,
        overall=bool(np.all(pair_ok) and np.all(nonneg)),
    )


@dataclass(frozen=True)
class ScaleSet:
    """Characteristic wavenumbers and their inverse lengths."""

    kappa_s: float
    kappa_c: float
    kappa_eta: float
    kappa_t: float
    ell_s: float
    ell_c: float
    ell_eta: float
    ell_t: float
    identity_ratio: float  # kappa_s^3 / kappa_eta^2 / kappa_c, equals 1 algebraically


def characteristic_scales(eps: float, K: float | None, nu: float, shear: float) -> ScaleSet:
    """Closed-form scale evaluation from (eps, K, nu, S).

    K (mean kinetic energy per unit mass) feeds only the Taylor scale
    ell_t = sqrt(10 nu K / eps); pass None to skip it.
    """
    for name, val in (("eps", eps), ("nu", nu), ("shear", shear)):
        if not (val > 0.0):
            raise ValueError(f"{name} must be strictly positive, got {val!r}")
    if K is not None and not (K > 0.0):
        raise ValueError(f"K must be strictly positive, got {K!r}")
    kappa_s = math.sqrt(shear / nu)
    kappa_c = shear**1.5 / math.sqrt(eps)
    kappa_eta = (eps / nu**3) ** 0.25
    if K is None:
        ell_t = math.nan
        kappa_t = math.nan
    else:
        ell_t = math.sqrt(10.0 * nu * K / eps)
        kappa_t = 1.0 / ell_t
    return ScaleSet(
        kappa_s=kappa_s,
        kappa_c=kappa_c,
        kappa_eta=kappa_eta,
        kappa_t=kappa_t,
        ell_s=1.0 / kappa_s,
        ell_c=1.0 / kappa_c,
        ell_eta=1.0 / kappa_eta,
        ell_t=ell_t,
        identity_ratio=kappa_s**3 / kappa_eta**2 / kappa_c,
    )


def scales_from_lab(shear: float, ell_s: float, ell_c: float, K: float | None = None):
    """Recover (nu, eps) from measured viscous-shear and transition lengths.

    ell_s = sqrt(nu/S) gives nu = ell_s^2 S; ell_c = sqrt(eps/S^3) gives
    eps = ell_c^2 S^3.  Returns (nu, eps, ScaleSet).
    """
    for name, val in (("shear", shear), ("ell_s", ell_s), ("ell_c", ell_c)):
        if not (val > 0.0):
            raise ValueError(f"{name} must be strictly positive, got {val!r}")
    nu = ell_s**2 * shear
    eps = ell_c**2 * shear**3
    return nu, eps, characteristic_scales(eps, K, nu, shear)


def kolmogorov_heuristic(kbar: float, kappa_eta: float) -> float:
    """Inertial-range estimate of the band Taylor wavenumber squared.

    Under a -5/3 spectrum cut off at kappa_eta the squared band Taylor
    wavenumber of [kbar, inf) is kappa_eta^(4/3) kbar^(2/3) / 3; the
    spectrum constant cancels.  Monotone increasing in kbar; requires
    kbar <= kappa_eta.
    """
    if not (kbar > 0.0 and kappa_eta > 0.0):
        raise ValueError("wavenumbers must be strictly positive")
    if kbar > kappa_eta:
        raise ValueError(f"kbar = {kbar} exceeds the dissipation wavenumber {kappa_eta}")
    return kappa_eta ** (4.0 / 3.0) * kbar ** (2.0 / 3.0) / 3.0


def kolmogorov_threshold(kappa_s: float, kappa_eta: float, delta: float) -> float:
    """Smallest kbar whose heuristic band Taylor wavenumber satisfies condition A.

    Solving kappa_eta^(4/3) kbar^(2/3) / 3 = kappa_s^2 / (2 delta) gives
    kbar = (3 kappa_s^2 / (2 delta))^(3/2) / kappa_eta^2, proportional to
    the Corrsin wavenumber with slope (3 / (2 delta))^(3/2).
    """
    if not (kappa_s > 0.0 and kappa_eta > 0.0 and delta > 0.0):
        raise ValueError("inputs must be strictly positive")
    return (1.5 * kappa_s**2 / delta) ** 1.5 / kappa_eta**2
