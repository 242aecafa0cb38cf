"""Application configuration."""

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "Inspected Levy Toolkit"
    APP_VERSION: str = "0.1.0"

    # Logging
    LOG_LEVEL: str = "INFO"

    # Root finding
    ROOT_ABS_TOL: float = 1e-12
    ROOT_REL_TOL: float = 1e-12
    ROOT_MAX_ITER: int = 200

    # Transforms
    SINGULARITY_THRESHOLD: float = 1e-8

    # Inversion
    INVERSION_TARGET_ACCURACY: float = 1e-8
    EULER_TERMS: int = 38
    EULER_BINOMIAL_TERMS: int = 11
    STEHFEST_ORDER: int = 16

    # Simulation
    SIM_BLOCK_SIZE: int = 4096
    SIM_THREADS: int = 1

    # Statistical checks
    KS_LEVEL: float = 0.01
    STAT_Z_THRESHOLD: float = 4.0

    # Output
    OUTPUT_DIR: str = "./output"

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Accept log levels in any case."""
        return str(v).upper()


settings = Settings()
