"""
Global ``lexgraph.toml`` configuration.

Relative paths resolve against the directory holding the config file.
Every section is optional; omitted keys take the documented defaults.
"""

import sys
from datetime import date
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import ConfigError
from ..freshness_search import MergeParams
from ..quality_loop import API_KEY_ENV, OptimizationConfig
from ..relevance import RelevanceParams
from ..retrieval import MatchParams

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class PathSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    graph: Optional[Path] = None
    terms: Optional[Path] = None
    templates: Optional[Path] = None
    search_fixture: Optional[Path] = None
    mock_script: Optional[Path] = None

    def resolved(self, base: Path) -> "PathSettings":
        return self.model_copy(
            update={
                name: (base / value if value is not None and not value.is_absolute() else value)
                for name, value in self.model_dump().items()
            }
        )


class RetrievalSettings(MatchParams):
    model_config = ConfigDict(frozen=True, extra="forbid")

    k: int = Field(8, ge=1)
    sigma: float = Field(1.0, gt=0.0)
    exclude_superseded: bool = True


class RelevanceSettings(RelevanceParams):
    model_config = ConfigDict(frozen=True, extra="forbid")

    background_size: int = Field(6, ge=1)


class PromptSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    score_floor: Optional[float] = None
    generic_template: Optional[str] = None


class SearchSettings(MergeParams):
    model_config = ConfigDict(frozen=True, extra="forbid")

    enabled: bool = False
    jurisdiction: Optional[str] = None
    as_of: Optional[date] = None
    max_results: int = Field(10, ge=1)
    endpoint: Optional[str] = None
    timeout: float = Field(30.0, gt=0.0)


class ProviderSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["mock", "http", "ollama"] = "mock"
    endpoint: Optional[str] = None
    model: str = ""
    api_key_env: str = API_KEY_ENV
    timeout: float = Field(60.0, gt=0.0)
    temperature: float = Field(0.0, ge=0.0)


class QuerySettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    jurisdictions: list[str] = Field(default_factory=list)


class LexGraphSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    paths: PathSettings = Field(default_factory=PathSettings)
    retrieval: RetrievalSettings = Field(default_factory=RetrievalSettings)
    relevance: RelevanceSettings = Field(default_factory=RelevanceSettings)
    prompt: PromptSettings = Field(default_factory=PromptSettings)
    quality: OptimizationConfig = Field(default_factory=OptimizationConfig)
    search: SearchSettings = Field(default_factory=SearchSettings)
    provider: ProviderSettings = Field(default_factory=ProviderSettings)
    query: QuerySettings = Field(default_factory=QuerySettings)


def _describe(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "<root>"
    return f"{location}: {first['msg']}"


def settings_from_dict(data: dict, base: Optional[Path] = None, source: str = "<config>") -> LexGraphSettings:
    try:
        settings = LexGraphSettings.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{source}: {_describe(e)}") from e
    if base is not None:
        settings = settings.model_copy(update={"paths": settings.paths.resolved(base)})
    return settings


def load_settings(path: Union[str, Path]) -> LexGraphSettings:
    """
    Raises:
        ConfigError: when the file is missing, is not valid TOML, or a value
            violates its range; the message names the offending key.
    """
    path = Path(path)
    try:
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
    except OSError as e:
        raise ConfigError(f"cannot open config {path}: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: {e}") from e
    return settings_from_dict(data, base=path.resolve().parent, source=str(path))
