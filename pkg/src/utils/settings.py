"""
Runtime Settings
Typed configuration shared by the simulator, scans and CLI
"""
from functools import lru_cache
from pathlib import Path
from typing import Tuple, Type

from pydantic import BaseModel, Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    YamlConfigSettingsSource,
)

CONFIG_FILE = Path(__file__).resolve().parents[2] / "config" / "config.yaml"


class TruncationSettings(BaseModel):
    """Fock-space truncation"""
    eps_tail: float = Field(default=1e-12, gt=0.0, lt=1e-3)


class TimeGridSettings(BaseModel):
    """Sampling of gt axes"""
    samples_per_period: int = Field(default=20, ge=20)
    batch_elements: int = Field(default=1_000_000, ge=10_000)


class OptimizationSettings(BaseModel):
    """Minimum refinement"""
    refine_xtol: float = Field(default=1e-6, gt=0.0)


class ObservableSettings(BaseModel):
    """Squeezing-parameter evaluation"""
    degenerate_threshold: float = Field(default=1e-9, gt=0.0)


class EnvelopeSettings(BaseModel):
    """Envelope-minimum detection"""
    prominence: float = Field(default=1e-4, ge=0.0, le=1.0)


class OutputSettings(BaseModel):
    """CSV output"""
    float_format: str = "%.12g"


class SqueezeSettings(BaseSettings):
    """
    Settings resolved from kwargs, TC_SQUEEZE_* environment variables,
    a .env file and config/config.yaml, in that order of priority
    """
    model_config = SettingsConfigDict(
        env_prefix="TC_SQUEEZE_",
        env_nested_delimiter="__",
        env_file=".env",
        extra="ignore",
        yaml_file=CONFIG_FILE,
    )

    threads: int = Field(default=0, ge=0)
    truncation: TruncationSettings = TruncationSettings()
    time_grid: TimeGridSettings = TimeGridSettings()
    optimization: OptimizationSettings = OptimizationSettings()
    observables: ObservableSettings = ObservableSettings()
    envelope: EnvelopeSettings = EnvelopeSettings()
    output: OutputSettings = OutputSettings()

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            YamlConfigSettingsSource(settings_cls),
        )


@lru_cache(maxsize=1)
def get_settings() -> SqueezeSettings:
    """Process-wide settings instance"""
    return SqueezeSettings()
