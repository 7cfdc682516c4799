"""
Configuration management utilities

Loads configuration from YAML files and environment variables.
"""

import os
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

from utils.errors import ConfigError

# Load environment variables
load_dotenv()

# Environment variable -> (section, key, type)
ENV_OVERRIDES = {
    "LOG_LEVEL": ("logging", "level", str),
    "TWWT_BUDGET": ("secrecy", "budget", int),
    "TWWT_SEED": ("secrecy", "seed", int),
}


def load_config(config_path: str = "config.yaml") -> Dict[str, Any]:
    """
    Load configuration from YAML file.

    Args:
        config_path: Path to config file

    Returns:
        Configuration dictionary

    Raises:
        ConfigError: if the file cannot be read, is not a YAML mapping,
            or an environment override does not parse
    """
    # Try to find config file
    if not os.path.exists(config_path):
        # Try in parent directory
        config_path = os.path.join(os.path.dirname(__file__), "..", config_path)

    try:
        with open(config_path, 'r') as f:
            config = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot load config {config_path}: {e}") from e

    if not isinstance(config, dict):
        raise ConfigError(f"config {config_path} must be a YAML mapping")

    # Override with environment variables where applicable
    for name, (section, key, kind) in ENV_OVERRIDES.items():
        raw = os.getenv(name)
        if not raw:
            continue
        try:
            config.setdefault(section, {})[key] = kind(raw)
        except ValueError as e:
            raise ConfigError(f"{name}={raw!r} is not a valid {kind.__name__}") from e

    return config


def get_setting(config: Dict[str, Any], section: str, key: str, default: Any) -> Any:
    """Read `config[section][key]`, falling back to `default`."""
    return (config.get(section) or {}).get(key, default)
