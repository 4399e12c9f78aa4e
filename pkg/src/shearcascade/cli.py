"""Command-line front end.

Subcommands: simulate, basis-check, diagnose, scales, audit.
Exit codes: 0 pass, 1 failure (including blow-up or failed checks),
2 configuration error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .basis import Basis
from .checks import run_basis_suite
from .config import load_config
from .diagnostics import budget_sample, cascade_audit_values, characteristic_scales, scales_from_lab
from .domain import Domain, Truncation
from .dynamics import GalerkinRHS
from .errors import ConfigError, SchemaVersionError, ShearCascadeError, SnapshotError
from .reporting import read_report_csv, write_samples_csv
from .runner import run_simulate
from .snapshots import load_snapshot

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def _cmd_simulate(args) -> int:
    config = load_config(args.config)
    result = run_simulate(config, resume_from=args.resume)
    if result.failed:
        print(f"FAILED: {result.failure_reason}", file=sys.stderr)
        return EXIT_FAIL
    print(f"artifacts written to {result.outdir}")
    for audit in result.audits:
        print(f"delta={audit.delta}: {audit.overall}")
    return EXIT_PASS


def _cmd_basis_check(args) -> int:
    domain = Domain(Lx=args.Lx, Ly=args.Ly, h=args.h, nu=args.nu)
    trunc = Truncation(jmax=args.jmax, lmax=args.lmax, kmax=args.kmax)
    result = run_basis_suite(domain, trunc, corrupt=args.corrupt)

    if args.table:
        basis = Basis(domain, trunc)
        out = open(args.table, "w") if args.table != "-" else sys.stdout
        out.write("j,l,k,iota,eigenvalue,kh,A,B,C\n")
        for m in basis.modes:
            idx = m.index
            out.write(
                f"{idx.j},{idx.l},{idx.k},{idx.iota},{m.eigenvalue!r},{m.kh!r},"
                f"{m.coeff[0]!r},{m.coeff[1]!r},{m.coeff[2]!r}\n"
            )
        if out is not sys.stdout:
            out.close()

    print(f"gram deviation        {result.gram_deviation:.3e}")
    print(f"divergence residual   {result.divergence_residual:.3e}")
    print(f"boundary residual     {result.boundary_residual:.3e}")
    print(f"eigen residual        {result.eigen_residual:.3e}")
    print(f"constraint residual   {result.constraint_residual:.3e}")
    print(f"norm deviation        {result.norm_deviation:.3e}")
    print(f"first eigenvalue      {result.first_eigenvalue!r} "
          f"(multiplicity {result.first_multiplicity}, expected {result.expected_multiplicity})")
    print("PASS" if result.ok else "FAIL")
    return EXIT_PASS if result.ok else EXIT_FAIL


def _cmd_diagnose(args) -> int:
    config = load_config(args.config)
    basis = Basis(config.domain, config.truncation)
    profile = config.build_profile()
    rhs = GalerkinRHS(basis, profile)
    samples = []
    for stem in args.snapshots:
        u, t, _, _ = load_snapshot(stem, basis)
        samples.append(budget_sample(u, rhs.ops, rhs.nonlinear(u.coeff), t=t))
    samples.sort(key=lambda s: s.t)
    write_samples_csv(args.out, samples)
    print(f"ledger for {len(samples)} snapshots written to {args.out}")
    return EXIT_PASS


def _cmd_scales(args) -> int:
    if args.ls is not None or args.lc is not None:
        if args.ls is None or args.lc is None:
            raise ConfigError("recovery mode needs both --ls and --lc")
        nu, eps, scales = scales_from_lab(args.S, args.ls, args.lc, K=args.K)
        print(f"# recovered nu = {nu!r}, eps = {eps!r}")
    else:
        if args.nu is None or args.eps is None:
            raise ConfigError("direct mode needs --nu and --eps (or use --ls/--lc recovery)")
        scales = characteristic_scales(args.eps, args.K, args.nu, args.S)
    print("kappa_s,kappa_C,kappa_eta,kappa_T,ell_s,ell_C,ell_eta,ell_T,identity_ratio")
    print(",".join(repr(v) for v in (
        scales.kappa_s, scales.kappa_c, scales.kappa_eta, scales.kappa_t,
        scales.ell_s, scales.ell_c, scales.ell_eta, scales.ell_t,
        scales.identity_ratio,
    )))
    return EXIT_PASS


def _cmd_audit(args) -> int:
    scalars, columns = read_report_csv(args.report)
    worst = EXIT_PASS
    for delta in args.delta:
        audit = cascade_audit_values(
            shells=columns["kappa"],
            kcal=columns["Kcal"],
            eps_low_mean=columns["eps_low_mean"],
            flux_mean=columns["flux_mean"],
            flux_err=columns["flux_err"],
            eps_tot_mean=scalars["eps_tot_mean"],
            eps_tot_err=scalars["eps_tot_err"],
            kappa_s=scalars["kappa_s"],
            delta=delta,
        )
        print(f"delta={delta}: {audit.overall}")
        verdicts = audit.shell_verdicts
        for i, kb in enumerate(audit.shells):
            print(f"  kappa={kb:<12.6g} condA={bool(audit.cond_a[i])!s:<5} "
                  f"condB={bool(audit.cond_b[i])!s:<5} {verdicts[i]}")
        if audit.overall == "fail":
            worst = EXIT_FAIL
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shearcascade",
        description="Galerkin simulator and energy-cascade diagnostics for free-shear fluctuations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a configured simulation")
    p.add_argument("config", help="JSON run configuration")
    p.add_argument("--resume", default=None, help="snapshot stem to continue from")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("basis-check", help="validate the eigenbasis and print a mode table")
    p.add_argument("--Lx", type=float, default=2.0 * np.pi)
    p.add_argument("--Ly", type=float, default=2.0 * np.pi)
    p.add_argument("--h", type=float, default=np.pi)
    p.add_argument("--nu", type=float, default=1e-2)
    p.add_argument("--jmax", type=int, default=4)
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--table", default=None, help="write the mode table CSV here ('-' for stdout)")
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)  # failure-path hook
    p.set_defaults(func=_cmd_basis_check)

    p = sub.add_parser("diagnose", help="recompute the ledger from stored snapshots")
    p.add_argument("snapshots", nargs="+", help="snapshot stems or headers")
    p.add_argument("--config", required=True, help="run configuration (for box, truncation, profile)")
    p.add_argument("--out", default="diagnose.csv", help="output CSV path")
    p.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("scales", help="characteristic-scale table")
    p.add_argument("--S", type=float, required=True, help="shear-gradient strength")
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--K", type=float, default=None)
    p.add_argument("--ls", type=float, default=None, help="viscous shear length (recovery mode)")
    p.add_argument("--lc", type=float, default=None, help="transition length (recovery mode)")
    p.set_defaults(func=_cmd_scales)

    p = sub.add_parser("audit", help="re-audit a persisted averaged report")
    p.add_argument("report", help="report CSV path")
    p.add_argument("--delta", type=float, action="append", default=None)
    p.set_defaults(func=_cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "delta", None) is None and args.command == "audit":
        args.delta = [0.5]
    try:
        return args.func(args)
    except (ConfigError, SchemaVersionError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SnapshotError, ShearCascadeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
