"""settings.yaml as a plain dict, plus the builtin run configurations."""

from pathlib import Path
from typing import Any

import yaml

CONFIG_DIR = Path(__file__).parent


def load_settings(path: Path | str | None = None) -> dict[str, Any]:
    """Read a settings file (config/settings.yaml by default); an empty file gives {}."""
    with open(path or CONFIG_DIR / "settings.yaml", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


settings = load_settings()

# Flat key = value files accepted by `hilfer solve` and `hilfer bounds`
problems_dir = CONFIG_DIR / "problems"

__all__ = ["CONFIG_DIR", "load_settings", "settings", "problems_dir"]
