"""
Configuration settings for the torus orbifold toolkit
"""

import os
from dataclasses import dataclass
from typing import Optional
from dotenv import load_dotenv

load_dotenv()

MODES = ("integral", "rational")
FORMATS = ("human", "json")


@dataclass
class Settings:
    """Application settings loaded from environment variables."""

    # Face enumeration visits every subset of outgoing darts, so valence is capped
    valence_cap: int = int(os.getenv("ORBIFOLD_VALENCE_CAP", "8"))

    # Derived structures kept per session, least recently used dropped first
    cache_size: int = int(os.getenv("ORBIFOLD_CACHE_SIZE", "32"))

    # CLI defaults
    default_mode: str = os.getenv("ORBIFOLD_MODE", "integral")
    default_format: str = os.getenv("ORBIFOLD_FORMAT", "human")
    log_level: str = os.getenv("ORBIFOLD_LOG_LEVEL", "WARNING")

    # MCP server settings
    server_name: str = os.getenv("ORBIFOLD_SERVER_NAME", "torus-orbifold-mcp")
    workspace_path: Optional[str] = os.getenv("WORKSPACE_PATH")

    def __post_init__(self):
        self.default_mode = self.default_mode.strip().lower()
        self.default_format = self.default_format.strip().lower()
        self.log_level = self.log_level.strip().upper()
        if self.valence_cap < 1:
            raise ValueError(f"ORBIFOLD_VALENCE_CAP must be positive, got {self.valence_cap}")
        if self.cache_size < 1:
            raise ValueError(f"ORBIFOLD_CACHE_SIZE must be positive, got {self.cache_size}")
        if self.default_mode not in MODES:
            raise ValueError(f"ORBIFOLD_MODE must be one of {MODES}, got {self.default_mode!r}")
        if self.default_format not in FORMATS:
            raise ValueError(f"ORBIFOLD_FORMAT must be one of {FORMATS}, got {self.default_format!r}")


# Singleton settings instance
settings = Settings()
