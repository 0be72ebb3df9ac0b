"""Application settings and configuration management."""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    # Logging
    log_level: str = Field(default="WARNING")
    log_format: Literal["console", "json"] = Field(default="console")

    # Reports
    output_mode: Literal["human", "machine", "json"] = Field(default="human")

    # Invariant-system search
    brute_force_budget: int = Field(default=12, ge=1)

    # Oracles
    samples: int = Field(default=100, ge=0)
    seed: int = Field(default=7, ge=0)
    max_set_size: int = Field(default=4, ge=0)
    max_vect_dim: int = Field(default=6, ge=0)
    sampling_retries: int = Field(default=2000, ge=1)
    nat_search_budget: int = Field(default=20000, ge=1)  # backtracking nodes

    # Naturality solver tiers
    exhaustive_limit: int = Field(default=100_000, ge=1)
    sampling_trials: int = Field(default=10_000, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="FROBENIUS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached application settings."""
    return Settings()
