from typing import Literal, Optional

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file='./.env',
        env_file_encoding='utf-8',
        env_prefix='VIRCERT_',
        extra='ignore',
    )

    MAX_K: int = Field(default=8, ge=1)
    MAX_PRECISION_BITS: int = Field(default=4096, ge=64)
    INITIAL_PRECISION_BITS: int = Field(default=64, ge=16)
    CACHE_PATH: Optional[str] = None
    CACHE_MODE: Literal['none', 'sqlite'] = 'none'
    CACHE_VERIFY_EVERY: int = Field(default=8, ge=0)
    OUTPUT: Literal['json', 'table'] = 'json'
    PREVIEW_DIGITS: int = Field(default=12, ge=1)
    LOG_LEVEL: str = 'INFO'

    @model_validator(mode='after')
    def check_consistency(self) -> 'Settings':
        if self.INITIAL_PRECISION_BITS > self.MAX_PRECISION_BITS:
            raise ValueError(
                'INITIAL_PRECISION_BITS must be <= MAX_PRECISION_BITS'
            )
        if self.CACHE_MODE == 'sqlite' and not self.CACHE_PATH:
            raise ValueError('CACHE_PATH is required when CACHE_MODE=sqlite')
        return self
