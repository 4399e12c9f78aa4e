"""Run configuration: a strict JSON schema with dotted-path error reporting.

Unknown keys are rejected everywhere; a silent typo in a physical
parameter is the main operator hazard this guards against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .domain import Domain, Truncation
from .dynamics import IntegratorConfig
from .errors import ConfigError
from .profiles import ShearProfile, profile_from_spec


@dataclass(frozen=True)
class RunConfig:
    domain: Domain
    profile_kind: str
    profile_params: dict
    truncation: Truncation
    integrator: IntegratorConfig
    seed: int
    initial_energy: float
    burn_in: float
    total_time: float
    sample_every_steps: int
    snapshot_every_steps: int
    n_blocks: int
    deltas: tuple
    output_directory: str
    raw: dict = field(repr=False, default_factory=dict)

    def build_profile(self) -> ShearProfile:
        return profile_from_spec(self.profile_kind, self.profile_params)


def _section(data: dict, name: str, keys: dict, path: str = "") -> dict:
    """Pull a mapping, checking presence, types, and unknown keys.

    keys maps key name -> (type tuple, required, default).
    """
    where = f"{path}{name}"
    if name not in data:
        raise ConfigError(f"missing section '{where}'")
    section = data[name]
    if not isinstance(section, dict):
        raise ConfigError(f"'{where}' must be a mapping")
    unknown = set(section) - set(keys)
    if unknown:
        raise ConfigError(f"unknown key '{where}.{sorted(unknown)[0]}'")
    out = {}
    for key, (types, required, default) in keys.items():
        if key not in section:
            if required:
                raise ConfigError(f"missing key '{where}.{key}'")
            out[key] = default
            continue
        value = section[key]
        if types is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, types if isinstance(types, tuple) else (types,)) or isinstance(value, bool):
            raise ConfigError(f"'{where}.{key}' has the wrong type (got {type(value).__name__})")
        out[key] = value
    return out


def parse_config(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be a mapping")
    unknown = set(data) - {"domain", "profile", "truncation", "integrator", "run", "audit", "output"}
    if unknown:
        raise ConfigError(f"unknown section '{sorted(unknown)[0]}'")

    dom = _section(data, "domain", {
        "Lx": (float, True, None), "Ly": (float, True, None),
        "h": (float, True, None), "nu": (float, True, None),
    })
    prof = _section(data, "profile", {
        "kind": (str, True, None), "params": (dict, True, None),
    })
    tr = _section(data, "truncation", {
        "jmax": (int, True, None), "lmax": (int, True, None), "kmax": (int, True, None),
    })
    integ = _section(data, "integrator", {
        "dt": (float, True, None), "scheme": (str, False, "ifrk3"),
        "safety": (float, False, 0.5), "adapt_every": (int, False, 100),
    })
    run = _section(data, "run", {
        "seed": (int, True, None), "initial_energy": (float, True, None),
        "burn_in": (float, True, None), "total_time": (float, True, None),
        "sample_every_steps": (int, False, 1), "snapshot_every_steps": (int, False, 0),
        "n_blocks": (int, False, 10),
    })
    audit = _section(data, "audit", {"delta": (list, False, [0.5])}) if "audit" in data else {"delta": [0.5]}
    output = _section(data, "output", {"directory": (str, True, None)})

    try:
        domain = Domain(**dom)
        truncation = Truncation(**tr)
        integrator = IntegratorConfig(**integ)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    for key in ("burn_in", "total_time"):
        if run[key] < 0 or (key == "total_time" and run[key] <= 0):
            raise ConfigError(f"'run.{key}' must be positive")
    if run["burn_in"] >= run["total_time"]:
        raise ConfigError("'run.burn_in' must be smaller than 'run.total_time'")
    if run["initial_energy"] <= 0:
        raise ConfigError("'run.initial_energy' must be positive")
    if run["sample_every_steps"] < 1:
        raise ConfigError("'run.sample_every_steps' must be >= 1")
    deltas = tuple(float(d) for d in audit["delta"])
    if not deltas or any(d <= 0 for d in deltas):
        raise ConfigError("'audit.delta' must be a nonempty list of positive numbers")

    return RunConfig(
        domain=domain,
        profile_kind=prof["kind"],
        profile_params=prof["params"],
        truncation=truncation,
        integrator=integrator,
        seed=run["seed"],
        initial_energy=run["initial_energy"],
        burn_in=run["burn_in"],
        total_time=run["total_time"],
        sample_every_steps=run["sample_every_steps"],
        snapshot_every_steps=run["snapshot_every_steps"],
        n_blocks=run["n_blocks"],
        deltas=deltas,
        output_directory=output["directory"],
        raw=data,
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except FileNotFoundError as exc:
        raise ConfigError(f"configuration file {path} not found") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration file {path} is not valid JSON: {exc}") from exc
    cfg = parse_config(data)
    # validate the profile spec eagerly so typos fail before any stepping
    try:
        cfg.build_profile()
    except Exception as exc:
        raise ConfigError(f"'profile': {exc}") from exc
    return cfg
