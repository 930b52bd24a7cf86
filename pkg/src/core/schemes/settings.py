from pathlib import Path
from typing import Annotated

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LogSettings(BaseModel):
    level: str = 'INFO'
    directory: Path | None = None


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file='.env', env_prefix='WIDTHFORGE_', extra='ignore', env_nested_delimiter='__'
    )

    threads: Annotated[int | None, Field(ge=1)] = None
    logs: LogSettings = LogSettings()
    version: str = '0.1.0'
