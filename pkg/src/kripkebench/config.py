"""Configuration settings for kripkebench."""

import logging

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """kripkebench configuration loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="KRIPKEBENCH_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="WARNING", description="Root log level for the CLI")

    # Reproducibility
    seed: int = Field(default=0, description="Seed for randomized corpus choices")

    # Bounded search
    search_budget: int = Field(
        default=200_000, description="Max candidate models examined by the bounded oracle"
    )
    tiling_budget: int = Field(
        default=2_000_000, description="Max candidate grids examined by tiling search"
    )
    max_worlds: int = Field(default=3, description="Default world bound for sat")
    max_domain: int = Field(default=2, description="Default domain bound for sat")
    feasible_cells: int = Field(
        default=12, description="Soft limit on max_worlds * max_domain before warning"
    )

    # Suites
    godel_size_cap: int = Field(default=8, description="Formula size cap for the Godel suite")
    godel_max_worlds: int = Field(default=3, description="World cap for the Godel suite")
    suite_depth: int = Field(
        default=3, description="Default letter count / truncation depth for suites"
    )

    # Validators
    @field_validator(
        "search_budget",
        "tiling_budget",
        "max_worlds",
        "max_domain",
        "feasible_cells",
        "godel_size_cap",
        "godel_max_worlds",
        "suite_depth",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Validate sizes and budgets are positive."""
        if v < 1:
            raise ValueError(f"Value must be positive, got {v}")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalise and validate the log level name."""
        level = v.strip().upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level, got {v}")
        return level


# Global settings instance
settings = Settings()
