"""Published CSV schemas and the structured audit text.

Two CSV layouts, both versioned in their first header line:

``shearcascade.samples.v1`` -- one row per diagnostics sample:
    t, E, G, eps_tot, prod_total, then one column group per shell i:
    kappa_i, eps_low_i, eps_high_i, eps_high_xy_i, eps_high_z_i, flux_i,
    prod_high_i, Kcal_i, E_high_i, Gxy_high_i.

``shearcascade.report.v1`` -- the averaged ledger: scalar summary fields
as ``# key = value`` lines, then one row per shell with mean/err columns
plus the audit flags of the run's first delta.

Floats are written with full round-trip precision.  Readers reject
mismatched schema versions.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .diagnostics import AuditResult, BudgetSample, CascadeReport, MonotonicityResult
from .errors import SchemaVersionError

SAMPLES_SCHEMA = "shearcascade.samples.v1"
REPORT_SCHEMA = "shearcascade.report.v1"

_SHELL_FIELDS = [
    ("kappa", None),
    ("eps_low", "eps_low"),
    ("eps_high", "eps_high"),
    ("eps_high_xy", "eps_high_xy"),
    ("eps_high_z", "eps_high_z"),
    ("flux", "flux"),
    ("prod_high", "prod_high"),
    ("Kcal", None),
    ("E_high", "e_high"),
    ("Gxy_high", "gxy_high"),
]

_REPORT_SCALARS = [
    "nu", "shear", "kappa1", "n_samples", "n_blocks", "burn_in", "t_start", "t_end",
    "E_mean", "E_err", "G_mean", "G_err", "eps_tot_mean", "eps_tot_err",
    "prod_total_mean", "prod_total_err", "total_closure_mean", "total_closure_err",
    "flux_at_infinity",
]

_REPORT_SHELL_COLUMNS = (
    ["kappa"]
    + [f"{name}_{suffix}" for name in
       ("flux", "eps_low", "eps_high", "eps_high_xy", "eps_high_z",
        "prod_high", "E_high", "Gxy_high", "closure")
       for suffix in ("mean", "err")]
    + ["Kcal", "cond_a", "cond_b", "admissible", "lower_ok", "upper_ok", "verdict"]
)


def _fmt(x) -> str:
    return repr(float(x))


def samples_header(n_shells: int) -> list:
    cols = ["t", "E", "G", "eps_tot", "prod_total"]
    for i in range(n_shells):
        cols.extend(f"{name}_{i:02d}" for name, _ in _SHELL_FIELDS)
    return cols


def write_samples_csv(path, samples: list[BudgetSample]):
    if not samples:
        raise ValueError("no samples to write")
    n_shells = samples[0].shells.size
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(f"# schema: {SAMPLES_SCHEMA}\n")
        writer = csv.writer(f)
        writer.writerow(samples_header(n_shells))
        for s in samples:
            row = [_fmt(s.t), _fmt(s.E), _fmt(s.G), _fmt(s.eps_tot), _fmt(s.prod_total)]
            kcal = s.kcal_inst
            for i in range(n_shells):
                for name, attr in _SHELL_FIELDS:
                    if name == "kappa":
                        row.append(_fmt(s.shells[i]))
                    elif name == "Kcal":
                        row.append(_fmt(kcal[i]))
                    else:
                        row.append(_fmt(getattr(s, attr)[i]))
            writer.writerow(row)
    return path


def _read_schema_line(f, expected: str):
    first = f.readline().strip()
    if not first.startswith("# schema:"):
        raise SchemaVersionError(f"missing schema line, expected {expected}")
    found = first.split(":", 1)[1].strip()
    if found != expected:
        raise SchemaVersionError(f"schema {found!r} does not match expected {expected!r}")


def read_samples_csv(path):
    """Returns (column_names, data array of shape (n_rows, n_cols))."""
    with open(path) as f:
        _read_schema_line(f, SAMPLES_SCHEMA)
        reader = csv.reader(f)
        cols = next(reader)
        data = np.array([[float(v) for v in row] for row in reader])
    return cols, data


def write_report_csv(path, report: CascadeReport, audit: AuditResult):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(f"# schema: {REPORT_SCHEMA}\n")
        for name in _REPORT_SCALARS:
            f.write(f"# {name} = {_fmt(getattr(report, name))}\n")
        f.write(f"# kappa_s = {_fmt(report.kappa_s)}\n")
        f.write(f"# kappa_C = {_fmt(report.kappa_c)}\n")
        f.write(f"# kappa_eta = {_fmt(report.kappa_eta)}\n")
        f.write(f"# kappa_T = {_fmt(report.kappa_t)}\n")
        f.write(f"# delta = {_fmt(audit.delta)}\n")
        writer = csv.writer(f)
        writer.writerow(_REPORT_SHELL_COLUMNS)
        kcal = report.kcal
        verdicts = audit.shell_verdicts
        for i in range(report.shells.size):
            row = [_fmt(report.shells[i])]
            for name in ("flux", "eps_low", "eps_high", "eps_high_xy", "eps_high_z",
                         "prod_high", "e_high", "gxy_high", "closure"):
                row.append(_fmt(getattr(report, f"{name}_mean")[i]))
                row.append(_fmt(getattr(report, f"{name}_err")[i]))
            row.append(_fmt(kcal[i]))
            row.extend([
                str(int(audit.cond_a[i])), str(int(audit.cond_b[i])),
                str(int(audit.admissible[i])), str(int(audit.lower_ok[i])),
                str(int(audit.upper_ok[i])), verdicts[i],
            ])
            writer.writerow(row)
    return path


def read_report_csv(path):
    """Parse a report CSV into (scalars dict, columns dict of arrays/lists)."""
    scalars = {}
    with open(path) as f:
        _read_schema_line(f, REPORT_SCHEMA)
        pos = f.tell()
        line = f.readline()
        while line.startswith("#"):
            key, _, value = line[1:].partition("=")
            scalars[key.strip()] = float(value)
            pos = f.tell()
            line = f.readline()
        f.seek(pos)
        reader = csv.reader(f)
        names = next(reader)
        rows = list(reader)
    columns = {}
    for c, name in enumerate(names):
        vals = [row[c] for row in rows]
        if name == "verdict":
            columns[name] = vals
        elif name in ("cond_a", "cond_b", "admissible", "lower_ok", "upper_ok"):
            columns[name] = np.array([bool(int(v)) for v in vals])
        else:
            columns[name] = np.array([float(v) for v in vals])
    return scalars, columns


def audit_text(report: CascadeReport, audits: list[AuditResult],
               monotonicity: MonotonicityResult | None = None) -> str:
    """Human-readable structured verdict report."""
    out = io.StringIO()
    out.write("cascade audit\n")
    out.write("=============\n")
    out.write(f"samples            {report.n_samples} in {report.n_blocks} blocks, "
              f"t in [{report.t_start:.6g}, {report.t_end:.6g}]\n")
    out.write(f"eps_tot            {report.eps_tot_mean:.6e} +- {report.eps_tot_err:.3e}\n")
    out.write(f"prod_total         {report.prod_total_mean:.6e} +- {report.prod_total_err:.3e}\n")
    out.write(f"total closure      {report.total_closure_mean:+.3e} +- {report.total_closure_err:.3e}\n")
    out.write(f"kappa_s            {report.kappa_s:.6g}\n")
    out.write(f"kappa_C            {report.kappa_c:.6g}\n")
    out.write(f"kappa_eta          {report.kappa_eta:.6g}\n")
    out.write(f"kappa_T            {report.kappa_t:.6g}\n")
    out.write(f"flux at infinity   {report.flux_at_infinity} (identically zero in finite truncation)\n")
    if monotonicity is not None:
        n_el = int(np.sum(monotonicity.eligible))
        out.write(f"flux monotone      {'ok' if monotonicity.overall else 'VIOLATED'} "
                  f"on {n_el} shells above kappa_s/sqrt(2)\n")
    for audit in audits:
        out.write(f"\ndelta = {audit.delta}\n")
        out.write(f"overall verdict: {audit.overall}\n")
        out.write("  kappa        condA condB admissible flux-in-band verdict\n")
        verdicts = audit.shell_verdicts
        for i, kb in enumerate(audit.shells):
            inband = "-"
            if audit.admissible[i]:
                inband = "yes" if (audit.lower_ok[i] and audit.upper_ok[i]) else "NO"
            out.write(
                f"  {kb:<12.6g} {str(bool(audit.cond_a[i])):<5} {str(bool(audit.cond_b[i])):<5} "
                f"{str(bool(audit.admissible[i])):<10} {inband:<12} {verdicts[i]}\n"
            )
    return out.getvalue()
