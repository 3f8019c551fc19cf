"""
Configuration management for renorm-lab experiments
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from utils.error_handling import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    "experiment": {
        "kind": "scan",
        "check": False,
    },
    "sequence": {
        # periodic | bernoulli | markov | rotation | buffer
        "model": "periodic",
        "pattern": [1, 2],
        "probabilities": [0.5, 0.5],
        "transition": [[0.5, 0.5], [0.5, 0.5]],
        "initial": [1.0, 0.0],
        "theta": 0.6180339887498949,
        "beta": 0.5,
        "seed": 42,
        "symbols_file": None,
    },
    "matrices": {
        # symbol -> rows of entries; an entry is a real or a [re, im] pair
        "table": {
            "1": [[0, 1], [0, 0]],
            "2": [[0, 0], [1, 0]],
        },
        "matrix": [[0, 0], [0, 0]],
    },
    "parameters": {
        "t": [1.0, 0.0],
        "t_grid": [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0],
        "n": 100000,
        "n_grid": [100, 1000, 10000],
        "k": 2,
        "k_max": 4,
        "n_max": 12,
        "scalar_pattern": [[1.0, 0.0]],
        "base_point": [0.0, 1.0],
        "mean": None,
        "tol": 1e-15,
        "workers": 1,
    },
    "tolerances": {
        "exp": 1e-12,
        "product": 1e-4,
        "scan": 1e-3,
        "symsum": 1e-12,
        "lemma_weighted": 1e-3,
        "hyperwalk": 2e-3,
    },
    "output": {
        "directory": "results",
        "record_timings": False,
        "trajectory_csv": "trajectory.csv",
        "figure_svg": "hyperwalk.svg",
    },
    "logging": {
        "level": "INFO",
        "directory": "logs",
        # runs slower than this log a performance warning
        "slow_run_seconds": 10.0,
    },
}


def merge_dicts(default: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge ``loaded`` over ``default``"""
    result = copy.deepcopy(default)
    for key, value in loaded.items():
        if key in result and isinstance(value, dict) and isinstance(result[key], dict):
            result[key] = merge_dicts(result[key], value)
        else:
            result[key] = copy.deepcopy(value)
    return result


class ConfigManager:
    """Loads an experiment configuration and answers dotted-path queries"""

    def __init__(self, config_path: Optional[Path] = None) -> None:
        """
        Initialize ConfigManager

        Args:
            config_path: Optional path to a JSON config file; defaults apply when absent
        """
        self.config_path = Path(config_path) if config_path else None
        self.default_config: Dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)
        self.config: Dict[str, Any] = {}
        self._load_config()

    def _load_config(self) -> None:
        """Load the config file over the defaults"""
        if self.config_path is None:
            self.config = copy.deepcopy(self.default_config)
            logger.debug("No config file given, using defaults")
            return

        if not self.config_path.exists():
            raise ConfigurationError(
                f"Config file not found: {self.config_path}",
                context={"path": str(self.config_path)},
            )

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                loaded = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationError(
                f"Invalid JSON in config file {self.config_path}: {e}",
                context={"path": str(self.config_path)},
            ) from e

        if not isinstance(loaded, dict):
            raise ConfigurationError(
                f"Config file {self.config_path} must contain a JSON object"
            )

        self.config = merge_dicts(self.default_config, loaded)
        logger.info("Configuration loaded successfully from %s", self.config_path)

    def get_config(self) -> Dict[str, Any]:
        """Get the current configuration"""
        return self.config

    def get_section(self, section: str) -> Dict[str, Any]:
        """Get a specific configuration section"""
        return self.config.get(section, {})

    def get_value(self, path: str, default: Any = None) -> Any:
        """
        Get a configuration value using dot notation

        Args:
            path: Dot-separated path (e.g., 'parameters.n_grid')
            default: Default value if path not found
        """
        if not path:
            return default

        value: Any = self.config
        for key in path.split("."):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def set_value(self, path: str, value: Any) -> None:
        """
        Set a configuration value using dot notation

        Args:
            path: Dot-separated path (e.g., 'sequence.seed')
            value: Value to set
        """
        if not path:
            raise ConfigurationError("Empty path provided to set_value")

        keys = path.split(".")
        config = self.config
        for key in keys[:-1]:
            if key not in config:
                config[key] = {}
            elif not isinstance(config[key], dict):
                raise ConfigurationError(
                    f"Cannot set {path}: {key} is not a section",
                    context={"field": path},
                )
            config = config[key]

        config[keys[-1]] = value
        logger.debug("Set config value: %s = %s", path, value)

    def apply_override(self, assignment: str) -> None:
        """
        Apply a ``dotted.path=value`` override; the value is parsed as JSON when possible

        Args:
            assignment: Override string from the command line
        """
        if "=" not in assignment:
            raise ConfigurationError(
                f"Override must look like key=value: {assignment!r}",
                context={"field": assignment},
            )
        path, raw = assignment.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        self.set_value(path.strip(), value)

    def update_section(self, section: str, updates: Dict[str, Any]) -> None:
        """
        Update a configuration section with new values

        Args:
            section: Configuration section name
            updates: Dictionary of updates to apply
        """
        if section not in self.config:
            self.config[section] = {}

        self.config[section].update(updates)
        logger.debug("Updated config section %s", section)

    def save_config(self, path: Optional[Path] = None) -> Path:
        """
        Save configuration to file

        Args:
            path: Destination, the loaded config path by default

        Returns:
            The path written
        """
        target = Path(path) if path else self.config_path
        if target is None:
            raise ConfigurationError("No path to save the configuration to")

        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "w", encoding="utf-8", newline="\n") as f:
                json.dump(self.config, f, indent=2)
                f.write("\n")
        except OSError as e:
            raise ConfigurationError(
                f"Error saving config to {target}: {e}", context={"path": str(target)}
            ) from e

        logger.debug("Configuration saved to %s", target)
        return target
