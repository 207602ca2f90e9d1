"""
Settings configuration for the planning toolkit.
"""

import os
from typing import Any, Dict, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class PlannerSettings(BaseSettings):
    """Planner defaults applied when a scenario does not override them."""

    eta_fraction: float = Field(default=0.1, gt=0)
    gamma_multiplier: float = Field(default=1.1, gt=0)
    rrg_query_stride: int = Field(default=50, ge=1)
    index_backend: str = Field(default="kd", pattern="^(kd|linear)$")
    kd_epsilon: float = Field(default=0.0, ge=0)
    kd_rebuild_factor: float = Field(default=2.0, gt=1)
    max_rejections: int = Field(default=1_000_000, ge=1)
    debug_invariants: bool = False

    model_config = SettingsConfigDict(env_prefix="OPTRRT_PLANNER_")


class BenchSettings(BaseSettings):
    """Monte-Carlo defaults (desk scale)."""

    trials: int = Field(default=50, ge=1)
    iterations: int = Field(default=20000, ge=1)
    record_stride: int = Field(default=100, ge=1)
    base_seed: int = Field(default=0, ge=0)
    oracle_resolution: int = Field(default=512, ge=64)

    model_config = SettingsConfigDict(env_prefix="OPTRRT_BENCH_")


class LoggingSettings(BaseSettings):
    """Logging configuration settings."""

    level: str = "WARNING"
    file_path: Optional[str] = None
    max_file_size: int = 10485760  # 10MB
    backup_count: int = 5
    json_format: bool = False

    model_config = SettingsConfigDict(env_prefix="OPTRRT_LOG_")


class Settings(BaseSettings):
    """Main application settings."""

    app_name: str = "optrrt"
    app_version: str = "1.0.0"

    # OPTRRT_THREADS caps the bench worker count; unset means one per CPU.
    threads: Optional[int] = Field(default=None, ge=1)

    scenarios_dir: str = os.path.join(PROJECT_ROOT, "scenarios")
    experiments_dir: str = os.path.join(PROJECT_ROOT, "experiments")

    planner: PlannerSettings = Field(default_factory=PlannerSettings)
    bench: BenchSettings = Field(default_factory=BenchSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    model_config = SettingsConfigDict(
        env_prefix="OPTRRT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def get_planner_config(self) -> Dict[str, Any]:
        """Get planner configuration as dictionary."""
        return self.planner.model_dump()

    def get_bench_config(self) -> Dict[str, Any]:
        """Get bench configuration as dictionary."""
        return self.bench.model_dump()

    def get_logging_config(self) -> Dict[str, Any]:
        """Get logging configuration as dictionary."""
        return {
            "level": self.logging.level,
            "log_file": self.logging.file_path,
            "max_file_size": self.logging.max_file_size,
            "backup_count": self.logging.backup_count,
            "json_format": self.logging.json_format,
        }

    def worker_count(self) -> int:
        """Number of bench workers after applying OPTRRT_THREADS."""
        cpus = os.cpu_count() or 1
        if self.threads is None:
            return cpus
        return max(1, min(self.threads, cpus))


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings


def load_settings_from_file(config_file: str) -> Settings:
    """
    Load settings from a dotenv-style configuration file.

    Args:
        config_file: Path to configuration file

    Returns:
        Settings instance
    """
    return Settings(_env_file=config_file)
