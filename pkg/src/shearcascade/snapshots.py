"""Snapshot persistence: a JSON sidecar header plus raw little-endian float64 coefficients.

A snapshot is a pair of files sharing one stem: ``<stem>.json`` holds the
domain, truncation, time, step and an ordering checksum; ``<stem>.dat``
holds the coefficient vector in basis order.  The checksum pins the mode
ordering, so a snapshot can be reloaded only against a basis that
enumerates identically.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .basis import Basis
from .domain import Domain, Truncation
from .errors import SnapshotError
from .field import SpectralField

SNAPSHOT_FORMAT = "shearcascade.snapshot.v1"

__all__ = ["ordering_checksum", "save_snapshot", "load_snapshot", "SNAPSHOT_FORMAT"]


def ordering_checksum(basis: Basis) -> str:
    """Hash of the ordered index list and the box geometry."""
    hasher = hashlib.sha256()
    dom = basis.domain
    hasher.update(f"{dom.Lx!r}|{dom.Ly!r}|{dom.h!r}\n".encode())
    for m in basis.modes:
        idx = m.index
        hasher.update(f"{idx.j},{idx.l},{idx.k},{idx.iota};".encode())
    return hasher.hexdigest()


def save_snapshot(stem, field: SpectralField, t: float, step: int, extra: dict | None = None):
    """Write ``<stem>.json`` and ``<stem>.dat``; returns the header path.

    extra (plain JSON-serializable values) rides along in the header; the
    runner stores the live time-step size there so a resumed run keeps the
    original schedule.
    """
    stem = Path(stem)
    basis = field.basis
    dom, tr = basis.domain, basis.truncation
    header = {
        "format": SNAPSHOT_FORMAT,
        "t": t,
        "step": step,
        "n_modes": basis.n_modes,
        "domain": {"Lx": dom.Lx, "Ly": dom.Ly, "h": dom.h, "nu": dom.nu},
        "truncation": {"jmax": tr.jmax, "lmax": tr.lmax, "kmax": tr.kmax},
        "ordering_checksum": ordering_checksum(basis),
        "extra": extra or {},
    }
    stem.parent.mkdir(parents=True, exist_ok=True)
    with open(stem.with_suffix(".json"), "w") as f:
        json.dump(header, f, indent=1)
        f.write("\n")
    field.coeff.astype("<f8").tofile(stem.with_suffix(".dat"))
    return stem.with_suffix(".json")


def load_snapshot(stem, basis: Basis | None = None):
    """Read a snapshot pair; returns (SpectralField, t, step, extra).

    With basis=None the basis is rebuilt from the header; otherwise the
    header must match the supplied basis (checksum included).
    """
    stem = Path(stem)
    if stem.suffix == ".json":
        stem = stem.with_suffix("")
    try:
        with open(stem.with_suffix(".json")) as f:
            header = json.load(f)
    except FileNotFoundError as exc:
        raise SnapshotError(f"missing snapshot header {stem.with_suffix('.json')}") from exc
    if header.get("format") != SNAPSHOT_FORMAT:
        raise SnapshotError(f"unexpected snapshot format {header.get('format')!r}")

    if basis is None:
        dom = Domain(**header["domain"])
        tr = Truncation(**header["truncation"])
        basis = Basis(dom, tr)
    if header["ordering_checksum"] != ordering_checksum(basis):
        raise SnapshotError("snapshot ordering checksum does not match the basis")
    raw = np.fromfile(stem.with_suffix(".dat"), dtype="<f8")
    if raw.size != basis.n_modes:
        raise SnapshotError(
            f"snapshot holds {raw.size} coefficients, basis has {basis.n_modes}"
        )
    field = SpectralField(basis, raw.astype(float))
    return field, float(header["t"]), int(header["step"]), header.get("extra", {})
