"""
star-covers Configuration Management

This module provides centralized configuration for the star-covers toolkit.
All environment variables are loaded from ~/.starcover/.env regardless
of the current working directory.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

from .errors import ConfigurationError


class StarCoverConfig:
    """Centralized configuration manager for star-covers."""

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._load_environment()
            self._initialized = True

    def _load_environment(self):
        """Load environment variables from ~/.starcover/.env"""
        env_file = self.home_dir / ".env"

        # A missing file means defaults everywhere
        if env_file.exists():
            load_dotenv(dotenv_path=env_file)

    def _int(self, key: str, default: int) -> int:
        raw = os.getenv(key)
        if raw is None or raw.strip() == "":
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigurationError(f"{key} must be an integer, got {raw!r}")

    @property
    def home_dir(self) -> Path:
        """Get the star-covers home directory."""
        return Path.home() / ".starcover"

    @property
    def subgroup_order_limit(self) -> int:
        """Largest group order accepted by subgroup enumeration."""
        return self._int("STARCOVER_SUBGROUP_LIMIT", 5040)

    @property
    def isomorphism_vertex_limit(self) -> int:
        """Largest vertex count accepted by the isomorphism search."""
        return self._int("STARCOVER_ISO_LIMIT", 200)

    @property
    def star_degree_limit(self) -> int:
        """Largest n for which star_cover(n) is built."""
        return self._int("STARCOVER_STAR_LIMIT", 5)

    @property
    def prime_length_limit(self) -> int:
        return self._int("STARCOVER_PRIME_LIMIT", 16)

    @property
    def series_length_limit(self) -> int:
        return self._int("STARCOVER_SERIES_LIMIT", 32)

    @property
    def artin_length_limit(self) -> int:
        return self._int("STARCOVER_ARTIN_LIMIT", 10)

    @property
    def partition_size_limit(self) -> int:
        return self._int("STARCOVER_PARTITION_LIMIT", 20)

    @property
    def tableau_size_limit(self) -> int:
        return self._int("STARCOVER_TABLEAU_LIMIT", 12)

    @property
    def multiplicity_degree_limit(self) -> int:
        return self._int("STARCOVER_MULT_LIMIT", 9)

    @property
    def log_level(self) -> str:
        """Get the default log level name."""
        return os.getenv("STARCOVER_LOG_LEVEL", "WARNING").upper()

    @property
    def timestamps(self) -> bool:
        """Whether reports carry a timestamp field."""
        return os.getenv("STARCOVER_TIMESTAMPS", "true").strip().lower() not in ("0", "false", "no", "off")

    def create_default_env_file(self) -> Path:
        """Create a default .env file with example configuration."""
        self.home_dir.mkdir(parents=True, exist_ok=True)
        env_file = self.home_dir / ".env"

        default_content = """# star-covers configuration
# Enumeration guards (raise GuardExceededError beyond these)
STARCOVER_SUBGROUP_LIMIT=5040
STARCOVER_ISO_LIMIT=200
STARCOVER_STAR_LIMIT=5
STARCOVER_PRIME_LIMIT=16
STARCOVER_SERIES_LIMIT=32
STARCOVER_ARTIN_LIMIT=10
STARCOVER_PARTITION_LIMIT=20
STARCOVER_TABLEAU_LIMIT=12
STARCOVER_MULT_LIMIT=9

# Logging: DEBUG, INFO, WARNING, ERROR
STARCOVER_LOG_LEVEL=WARNING

# Set to false for byte-identical JSON reports
STARCOVER_TIMESTAMPS=true
"""

        # Only create if it doesn't exist
        if not env_file.exists():
            env_file.write_text(default_content)
            load_dotenv(dotenv_path=env_file)

        return env_file


# Global config instance - singleton pattern
config = StarCoverConfig()


def get_config() -> StarCoverConfig:
    """Get the global star-covers configuration instance."""
    return config
