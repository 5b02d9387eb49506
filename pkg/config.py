import os
from pathlib import Path
from typing import Any, Dict, Optional

import tomli
from pydantic import ValidationError as PydanticValidationError
from pydantic import field_validator
from pydantic_settings import BaseSettings

from common import ValidationError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    THREADS: int = os.cpu_count() or 1
    LOG_LEVEL: str = "WARNING"
    HOM_GUARD: float = 1e8
    CONTRACTION_GUARD: float = 1e11
    CONTRACTION_MEMORY: float = 5e7
    SAMPLE_GUARD: float = 1e7
    CUTNORM_MAX_STEPS: int = 26
    CUTNORM_AUTO_STEPS: int = 20
    CATALOG_GUARD: int = 200_000
    BLOCK_SIZE: int = 2 ** 18
    DISTRIBUTION_TOL: float = 1e-12
    MOMENT_TOL: float = 1e-9
    MERGE_TOL: float = 1e-14
    SHOW_PROGRESS: bool = False

    @field_validator("LOG_LEVEL")
    @classmethod
    def check_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")
        return level

    class Config:
        env_prefix = "DEKO_"
        env_file = ".env"  # Load environment variables from .env file
        extra = "ignore"


def load_settings(config_file: Optional[str] = None, **overrides: Any) -> Settings:
    """
    Build settings from the environment, an optional TOML file and explicit overrides

    Args:
        config_file: Path to a file of ``key = value`` lines (TOML)
        overrides: Values that win over everything else (CLI flags); ``None`` is ignored

    Returns:
        A validated Settings instance

    Raises:
        ValidationError: If the file cannot be parsed or names unknown keys
    """
    values: Dict[str, Any] = {}
    if config_file:
        try:
            with Path(config_file).open("rb") as handle:
                raw = tomli.load(handle)
        except (OSError, tomli.TOMLDecodeError) as e:
            raise ValidationError(f"Cannot read config file {config_file}: {e}")
        unknown = sorted(key for key in raw if key.upper() not in Settings.model_fields)
        if unknown:
            raise ValidationError(f"Unknown settings in {config_file}: {', '.join(unknown)}")
        values.update({key.upper(): value for key, value in raw.items()})
    values.update({key.upper(): value for key, value in overrides.items() if value is not None})
    try:
        return Settings(**values)
    except PydanticValidationError as e:
        raise ValidationError(f"Invalid configuration: {e}")


settings = Settings()


def apply_settings(new_settings: Settings) -> None:
    """Copy values onto the shared ``settings`` instance so every module sees them."""
    for key, value in new_settings.model_dump().items():
        setattr(settings, key, value)
