"""Configuration management for dendrokit."""
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import yaml

logger = logging.getLogger(__name__)

CONFIG_ENV = "DENDROKIT_CONFIG"


@dataclass
class EngineConfig:
    """Default bounds and output settings for the engines and the CLI."""

    max_vertices: int = 3
    max_arity: int = 3
    arity_bound: Optional[int] = None
    seed: int = 0
    output_format: str = "text"
    log_level: str = "WARNING"
    workers: int = 1
    verify_max_edges: int = 6

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "EngineConfig":
        """
        Load configuration from YAML file.

        Args:
            path: Path to bounds.yaml. If None, uses $DENDROKIT_CONFIG or the
                repository's config/bounds.yaml.

        Returns:
            EngineConfig instance with loaded values or defaults.
        """
        if path is None:
            env_path = os.environ.get(CONFIG_ENV)
            if env_path:
                path = Path(env_path)
            else:
                path = Path(__file__).parent.parent.parent / "config" / "bounds.yaml"

        if not path.exists():
            return cls()

        try:
            with open(path) as f:
                data = yaml.safe_load(f) or {}

            filtered = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
            return cls(**filtered)
        except Exception as e:
            logger.warning("Failed to load config from %s: %s. Using defaults.", path, e)
            return cls()
