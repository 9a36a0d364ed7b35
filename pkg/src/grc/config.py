"""Configuration management for grc."""

import os
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field

from .entropy import DEFAULT_BASE, DEFAULT_TOLERANCE


def get_grc_home() -> Path:
    """Get the grc home directory."""
    return Path(os.environ.get("GRC_HOME", Path.home() / ".grc"))


class AnalysisConfig(BaseModel):
    """Defaults for `grc analyze`."""
    tolerance: float = Field(DEFAULT_TOLERANCE, gt=0)
    base: float = Field(DEFAULT_BASE, gt=1)
    lenient: bool = False


class LawsConfig(BaseModel):
    """Defaults for `grc laws`."""
    cases: int = Field(500, ge=1)
    max_dim: int = Field(5, ge=2)
    seed: int = 42
    tolerance: float = Field(DEFAULT_TOLERANCE, gt=0)
    max_denominator: int = Field(64, ge=2)
    entropy_samples: int = Field(50, ge=1)
    shrink: bool = True


class Settings(BaseModel):
    """Main grc configuration."""
    log_level: str = "INFO"
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    laws: LawsConfig = Field(default_factory=LawsConfig)

    @classmethod
    def load(cls, path: Path | None = None) -> "Settings":
        """Load configuration from file; a missing file gives the defaults."""
        if path is None:
            path = get_grc_home() / "config.yml"

        data: dict[str, Any] = {}
        if path.exists():
            with open(path) as f:
                data = yaml.safe_load(f) or {}

        data = _resolve_env_vars(data)
        if "GRC_LOG_LEVEL" in os.environ:
            data["log_level"] = os.environ["GRC_LOG_LEVEL"]

        return cls.model_validate(data)

    def save(self, path: Path | None = None) -> Path:
        """Save configuration to file."""
        if path is None:
            path = get_grc_home() / "config.yml"

        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, "w") as f:
            yaml.dump(self.model_dump(mode="json"), f, default_flow_style=False, sort_keys=False)
        return path


def _resolve_env_vars(data: Any) -> Any:
    """Recursively resolve ${VAR} references in config."""
    if isinstance(data, str):
        if data.startswith("${") and data.endswith("}"):
            var_name = data[2:-1]
            return os.environ.get(var_name, "")
        return data
    elif isinstance(data, dict):
        return {k: _resolve_env_vars(v) for k, v in data.items()}
    elif isinstance(data, list):
        return [_resolve_env_vars(v) for v in data]
    return data


def get_default_config_template() -> str:
    """Get the default config file template with comments."""
    return '''# grc configuration
# Environment variables can be referenced as ${VAR_NAME}

log_level: INFO

# grc analyze
analysis:
  tolerance: 1.0e-09   # entropy comparisons, in units of the log base
  base: 2.0            # 2 = bits
  lenient: false       # report condrev as n/a instead of failing on nondeterministic aggregates

# grc laws
laws:
  cases: 500
  max_dim: 5
  seed: 42
  tolerance: 1.0e-09
  max_denominator: 64  # denominators of generated probabilities
  entropy_samples: 50  # contexts sampled per matrix for entropic characterizations
  shrink: true         # minimize a failing case before reporting it
'''
