"""Engine configuration.

The defaults 4 and 3 define the retrieval contract (threads searched,
snippets per thread) and live only here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

ENV_CONFIG = "SNIPASSIST_CONFIG"


@dataclass(slots=True)
class Config:
    store_dir: str = "store"
    index_path: str = "tasks.index"
    port: int = 8080
    max_threads: int = 4
    max_snippets_per_thread: int = 3
    suggest_limit_default: int = 10
    comment_leader: str = "//"
    base_url: str = "https://stackoverflow.com"
    session_ttl_seconds: int = 1800


_INT_FIELDS = {
    "port", "max_threads", "max_snippets_per_thread",
    "suggest_limit_default", "session_ttl_seconds",
}


def parse_config_file(path: str | Path) -> dict[str, str]:
    # Comments are full lines only, so "#" stays usable as a value.
    values: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line {raw!r} (expected key = value)")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def load_config(path: str | Path | None = None, **overrides) -> Config:
    """Build a Config from file + overrides.

    With no explicit path, the SNIPASSIST_CONFIG environment variable is
    consulted; explicit keyword overrides always win over the file.
    """
    if path is None:
        path = os.environ.get(ENV_CONFIG) or None
    config = Config()
    known = {f.name for f in fields(Config)}
    if path is not None:
        for key, value in parse_config_file(path).items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            setattr(config, key, int(value) if key in _INT_FIELDS else value)
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in known:
            raise ValueError(f"unknown config key {key!r}")
        setattr(config, key, value)
    return config
