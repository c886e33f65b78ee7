from functools import lru_cache
from pathlib import Path
from typing import List, Tuple, Type

from pydantic import BaseModel
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    YamlConfigSettingsSource,
)

CONFIG_PATH = Path(__file__).parent / "config.yml"


class OracleSettings(BaseModel):
    max_paths: int = 1_000_000
    embedding_node_bound: int = 10


class DetectorSettings(BaseModel):
    witness_node_bound: int = 16


class WitnessSettings(BaseModel):
    demand: str = "1"


class CliSettings(BaseModel):
    workers: int = 1


class FuzzSettings(BaseModel):
    seed: int = 20240601
    samples: int = 10_000
    max_nodes: int = 8
    max_edges: int = 14
    acyclic_samples: int = 2_000
    gadget_pairs: int = 1_000
    gadget_max_nodes: int = 5


class ComplexitySettings(BaseModel):
    sizes: List[int] = [50, 100, 200, 400]
    edge_factor: int = 3
    back_edge_factor: int = 2
    max_slope: float = 3.5
    time_limit_seconds: float = 60.0


class Settings(BaseSettings):
    """
    Runtime configuration

    Sources, highest priority first: init arguments, BRAESS_* environment
    variables, .env, helpers/config.yml.
    """

    model_config = SettingsConfigDict(
        env_prefix="BRAESS_",
        env_nested_delimiter="__",
        env_file=".env",
        extra="ignore",
        yaml_file=CONFIG_PATH,
    )

    oracle: OracleSettings = OracleSettings()
    detector: DetectorSettings = DetectorSettings()
    witness: WitnessSettings = WitnessSettings()
    cli: CliSettings = CliSettings()
    fuzz: FuzzSettings = FuzzSettings()
    complexity: ComplexitySettings = ComplexitySettings()

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
def get_settings() -> Settings:
    return Settings()
