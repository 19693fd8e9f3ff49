"""Runtime caps.

Values come from, in increasing priority: built-in defaults, the file named by
``SEMIRING_LAB_CONFIG`` (``key = value`` lines, TOML syntax), and explicit
overrides passed to :func:`load_config`.
"""

from __future__ import annotations

import dataclasses
import os
import sys
from dataclasses import dataclass

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

ENV_VAR = "SEMIRING_LAB_CONFIG"


@dataclass(frozen=True)
class Config:
    size_cap: int = 4096
    congruence_cap: int = 100_000
    semiring_order: int = 4
    monoid_order: int = 6
    universe_order: int = 3
    search_budget: int = 1 << 20
    poset_size: int = 5
    threads: int = 1


_current: Config | None = None


def load_config(path: str | None = None, **overrides) -> Config:
    values = {}
    path = path or os.environ.get(ENV_VAR)
    if path:
        with open(path, "rb") as fh:
            values.update(tomllib.load(fh))
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return Config(**{k: int(v) for k, v in values.items()})


def get_config() -> Config:
    global _current
    if _current is None:
        _current = load_config()
    return _current


def set_config(cfg: Config) -> None:
    global _current
    _current = cfg
