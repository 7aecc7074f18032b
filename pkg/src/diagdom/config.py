"""Run configuration shared by the CLI and the experiment harnesses.

All randomness flows from the single seed recorded in every report, so
reports are byte-identical for identical (config, inputs).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, asdict, field

from .scalars import DEFAULT_PRIME, is_probable_prime

CONFIG_ENV = "DIAGDOM_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str = "randomized"            # symbolic | randomized
    prime: int = DEFAULT_PRIME
    coincidence_base: int = 1 << 16
    coincidence_growth: str = "tower"
    dmax: int = 6
    max_vertices: int = 3
    max_edges: int = 5
    max_boundary: int = 2
    seed: int = 0
    catalog_version: str = "v1-order15"
    output_format: str = "text"          # text | json

    def __post_init__(self):
        if self.mode not in ("symbolic", "randomized"):
            raise ConfigError(f"bad mode {self.mode!r}")
        if not is_probable_prime(self.prime):
            raise ConfigError(f"modulus {self.prime} is not prime")
        if self.coincidence_base < 2:
            raise ConfigError("coincidence base must be at least 2")
        if self.dmax < 1:
            raise ConfigError("dmax must be at least 1")
        if self.output_format not in ("text", "json"):
            raise ConfigError(f"bad output format {self.output_format!r}")

    def to_dict(self):
        return asdict(self)


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults <- optional JSON file (arg or $DIAGDOM_CONFIG) <- overrides."""
    data: dict = {}
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        try:
            with open(path) as fh:
                data.update(json.load(fh))
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    for key, val in (overrides or {}).items():
        if val is not None:
            data[key] = val
    try:
        return RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(f"unknown config key: {exc}") from exc
