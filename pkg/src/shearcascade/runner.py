"""Run orchestration: stepping loop, periodic diagnostics, artifact layout.

A run directory contains::

    manifest.json          config echo, package version, basis checksum
    diag.csv               per-sample ledger (shearcascade.samples.v1)
    report.csv             averaged ledger + audit flags (shearcascade.report.v1)
    audit.txt              structured per-shell verdicts for every requested delta
    snapshots/step_*.json  snapshot headers (+ .dat coefficient files)
    FAILED                 present only if the run blew up (partial artifacts remain)

The environment variable SHEARCASCADE_OUT, when set, overrides the root
against which a relative ``output.directory`` is resolved.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .basis import Basis
from .config import RunConfig
from .diagnostics import (
    CascadeReport,
    RunningStats,
    budget_sample,
    build_report,
    cascade_audit,
    flux_monotonicity_check,
)
from .dynamics import GalerkinRHS, IntegratorConfig, SimState, Stepper
from .errors import BlowUpError
from .field import random_field
from .reporting import audit_text, write_report_csv, write_samples_csv
from .snapshots import load_snapshot, ordering_checksum, save_snapshot


@dataclass
class RunResult:
    outdir: Path
    report: CascadeReport | None
    audits: list
    failed: bool = False
    failure_reason: str = ""


def resolve_outdir(config: RunConfig) -> Path:
    root = os.environ.get("SHEARCASCADE_OUT", "")
    out = Path(config.output_directory)
    if root and not out.is_absolute():
        out = Path(root) / out
    return out


def run_simulate(config: RunConfig, resume_from=None) -> RunResult:
    """Execute a configured run; writes all artifacts, returns the result.

    resume_from names a snapshot stem; the trajectory continues from its
    stored time, step counter, and step size, reproducing an uninterrupted
    run exactly.
    """
    outdir = resolve_outdir(config)
    outdir.mkdir(parents=True, exist_ok=True)
    snapdir = outdir / "snapshots"

    basis = Basis(config.domain, config.truncation)
    profile = config.build_profile()
    rhs = GalerkinRHS(basis, profile)

    cfg = config.integrator
    if resume_from is not None:
        u0, t0, step0, extra = load_snapshot(resume_from, basis)
        if "dt" in extra:
            cfg = IntegratorConfig(dt=float(extra["dt"]), scheme=cfg.scheme,
                                   safety=cfg.safety, adapt_every=cfg.adapt_every)
        state = SimState(t=t0, u=u0, step=step0)
    else:
        rng = np.random.default_rng(config.seed)
        state = SimState(t=0.0, u=random_field(basis, rng, config.initial_energy), step=0)

    manifest = {
        "package": "shearcascade",
        "version": __version__,
        "config": config.raw,
        "seed": config.seed,
        "ordering_checksum": ordering_checksum(basis),
        "n_modes": basis.n_modes,
        "shells": [float(s) for s in basis.shells],
        "resumed_from": str(resume_from) if resume_from else None,
    }
    with open(outdir / "manifest.json", "w") as f:
        json.dump(manifest, f, indent=1)
        f.write("\n")

    stepper = Stepper(rhs, cfg, state, dt_cap=config.integrator.dt)
    stats = RunningStats(burn_in=config.burn_in, n_blocks=config.n_blocks)
    samples = []
    failure = ""

    def take_snapshot(st: SimState):
        save_snapshot(snapdir / f"step_{st.step:08d}", st.u, st.t, st.step,
                      extra={"dt": stepper.cfg.dt})

    try:
        while stepper.state.t < config.total_time - 1e-12:
            st = stepper.advance()
            if st.step % config.sample_every_steps == 0:
                sample = budget_sample(st.u, rhs.ops, rhs.nonlinear(st.u.coeff), t=st.t)
                samples.append(sample)
                stats.add(sample)
            if config.snapshot_every_steps and st.step % config.snapshot_every_steps == 0:
                take_snapshot(st)
    except BlowUpError as exc:
        failure = f"{exc} (last good time {exc.last_good_time})"

    take_snapshot(stepper.state)
    if samples:
        write_samples_csv(outdir / "diag.csv", samples)

    report = None
    audits = []
    if failure:
        (outdir / "FAILED").write_text(failure + "\n")
        return RunResult(outdir=outdir, report=None, audits=[], failed=True, failure_reason=failure)

    if stats.count >= 2:
        report = build_report(stats, basis, profile)
        audits = [cascade_audit(report, d) for d in config.deltas]
        mono = flux_monotonicity_check(report)
        write_report_csv(outdir / "report.csv", report, audits[0])
        (outdir / "audit.txt").write_text(audit_text(report, audits, mono))
    return RunResult(outdir=outdir, report=report, audits=audits)
