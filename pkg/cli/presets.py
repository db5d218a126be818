"""
Named experiment presets bundled in config/presets.json.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

from components.errors import ConfigError
from components.resource_manager import load_config_json

from .run_config import RunConfig, build_config, parse_lines

PRESET_FILE = "presets.json"
KINDS = ("basins", "seeds")


@dataclass(frozen=True)
class Preset:
    name: str
    kind: str
    description: str
    config: RunConfig


def _table() -> Dict[str, dict]:
    try:
        return load_config_json(PRESET_FILE)
    except FileNotFoundError as e:
        raise ConfigError(f"preset table not found: {e}") from e


def preset_names() -> List[str]:
    return sorted(_table())


def load_preset(name: str, base: Optional[RunConfig] = None) -> Preset:
    table = _table()
    if name not in table:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(sorted(table))}", key="preset")
    entry = table[name]
    kind = entry.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"preset {name!r} has unknown kind {kind!r}", key="preset")
    lines = [f"{key}={value}" for key, value in entry.get("settings", {}).items()]
    values = parse_lines(lines)
    values["preset"] = name
    config = build_config(values, base)
    return Preset(name=name, kind=kind, description=entry.get("description", ""), config=config)
