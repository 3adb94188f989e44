"""Run configuration: defaults, optional JSON file, environment, then flags."""
from __future__ import annotations

import json
import os
import re
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

ENV_CACHE_DIR = "WIRING_CACHE_DIR"
ENV_THREADS = "WIRING_THREADS"

_UNITS = {"": 1, "k": 1 << 10, "m": 1 << 20, "g": 1 << 30, "t": 1 << 40}
_SECONDS = {"": 1, "s": 1, "m": 60, "h": 3600, "d": 86400}


def parse_bytes(text: str | int) -> int:
    if isinstance(text, int):
        return text
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([kmgt]?)(?:i?b)?\s*", str(text).lower())
    if not m:
        raise ValueError(f"bad memory size {text!r}")
    return int(float(m.group(1)) * _UNITS[m.group(2)])


def parse_seconds(text: str | float) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([smhd]?)\s*", str(text).lower())
    if not m:
        raise ValueError(f"bad duration {text!r}")
    return float(m.group(1)) * _SECONDS[m.group(2)]


def default_cache_dir() -> str:
    return str(Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "wiring")


@dataclass(frozen=True)
class Config:
    targets: tuple[str, ...] | None = None  # finite group names; None means all defaults
    budget_mem: int = 8 << 30
    budget_time: float = 12 * 3600.0
    enum_node_cap: int | None = None
    hom_node_cap: int = 50_000_000
    lattice_node_cap: int = 1_000_000
    threads: int = 1
    delta_policy: str | None = None  # None: try every variant
    orientation: str = "ccw"
    cache_dir: str = field(default_factory=default_cache_dir)
    seed: int = 20240101

    def __post_init__(self):
        if self.budget_mem <= 0 or self.budget_time <= 0:
            raise ValueError("budgets must be positive")
        if self.threads < 1:
            raise ValueError("thread count must be at least 1")
        if self.delta_policy not in (None, "equiv", "literal"):
            raise ValueError(f"unknown delta policy {self.delta_policy!r}")
        if self.orientation not in ("ccw", "cw"):
            raise ValueError(f"unknown orientation {self.orientation!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["targets"] = list(self.targets) if self.targets is not None else None
        return d


def _coerce(name: str, value):
    if value is None:
        return None
    if name == "budget_mem":
        return parse_bytes(value)
    if name == "budget_time":
        return parse_seconds(value)
    if name == "targets":
        return tuple(value.split(",")) if isinstance(value, str) else tuple(value)
    if name in ("threads", "hom_node_cap", "lattice_node_cap", "enum_node_cap", "seed"):
        return int(value)
    return value


def load_config(path: str | os.PathLike | None = None, env=None, **overrides) -> Config:
    """Defaults < config file < environment < explicit overrides (flags)."""
    env = os.environ if env is None else env
    known = {f.name for f in fields(Config)}
    values: dict = {}
    if path is not None:
        data = json.loads(Path(path).read_text())
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    if env.get(ENV_CACHE_DIR):
        values["cache_dir"] = env[ENV_CACHE_DIR]
    if env.get(ENV_THREADS):
        values["threads"] = env[ENV_THREADS]
    values.update({k: v for k, v in overrides.items() if v is not None})
    return replace(Config(), **{k: _coerce(k, v) for k, v in values.items()})
