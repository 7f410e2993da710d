from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Process-level settings.

    Notes:
    - Defaults are local and deterministic.
    - Override via env vars, e.g. `ROSI_LOG_LEVEL=DEBUG` or `ROSI_CONFIG_PATH=...`.
    """

    model_config = SettingsConfigDict(env_prefix="ROSI_", extra="ignore")

    config_path: str | None = None
    log_level: str = "INFO"

    def resolved_config_path(self) -> Path:
        if self.config_path:
            return Path(self.config_path)

        repo_root = Path(__file__).resolve().parents[1]
        return repo_root / "config" / "monitor.yaml"


@lru_cache
def get_settings() -> Settings:
    return Settings()
