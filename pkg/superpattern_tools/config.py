"""
Settings for the command line and the term resolver.

Values come from dataclass defaults, then a TOML file, then the environment (only
BIOPORTAL_API_KEY), then command line flags.
"""

import dataclasses
import logging
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .errors import ConfigError
from .emitters.nanopub import DEFAULT_MINTED_NAMESPACE, DEFAULT_VOCAB_NAMESPACE

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = "superpattern.toml"
API_KEY_ENV = "BIOPORTAL_API_KEY"
OUTPUT_FORMATS = ("text", "structured")


@dataclass(frozen=True)
class SourceEndpoint:
    url: str
    query_param: str


def _default_endpoints() -> Dict[str, SourceEndpoint]:
    return {
        "wikidata": SourceEndpoint("https://www.wikidata.org/w/api.php", "search"),
        "bioportal": SourceEndpoint("https://data.bioontology.org/search", "q"),
        "lov": SourceEndpoint("https://lov.linkeddata.es/dataset/lov/api/v2/term/search", "q"),
    }


@dataclass(frozen=True)
class ResolverConfig:
    endpoints: Dict[str, SourceEndpoint] = field(default_factory=_default_endpoints)
    user_agent: str = "superpattern-tools/0.1 (term lookup)"
    requests_per_second: float = 1.0
    cache_ttl: int = 30 * 24 * 3600
    timeout: float = 10.0
    page_size: int = 20
    bioportal_api_key: Optional[str] = None


@dataclass(frozen=True)
class CliConfig:
    base_iri: Optional[str] = None
    reflexive_accessibility: bool = True
    output_format: str = "text"
    cache_dir: str = os.path.join("~", ".cache", "superpattern-tools")
    offline: bool = False
    vocab_namespace: str = DEFAULT_VOCAB_NAMESPACE
    minted_namespace: str = DEFAULT_MINTED_NAMESPACE
    creator: Optional[str] = None
    resolver: ResolverConfig = field(default_factory=ResolverConfig)

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"output_format must be one of {', '.join(OUTPUT_FORMATS)}, "
                f"not {self.output_format!r}"
            )

    @property
    def cache_path(self) -> str:
        return os.path.expanduser(self.cache_dir)

    def override(self, **values: Any) -> "CliConfig":
        """
        Copy with the given values replaced; None means "not given".
        """
        return dataclasses.replace(self, **{k: v for k, v in values.items() if v is not None})


def _known(cls, data: Dict[str, Any], section: str) -> None:
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"Unknown key(s) in [{section}]: {', '.join(unknown)}")


def _resolver_from(data: Dict[str, Any]) -> ResolverConfig:
    _known(ResolverConfig, data, "resolver")
    data = dict(data)
    endpoints = _default_endpoints()
    for source, values in data.pop("endpoints", {}).items():
        if source not in endpoints:
            raise ConfigError(f"Unknown search source {source!r}")
        current = endpoints[source]
        extra = set(values) - {"url", "query_param"}
        if extra:
            raise ConfigError(f"Unknown key(s) in [resolver.endpoints.{source}]: {', '.join(sorted(extra))}")
        endpoints[source] = SourceEndpoint(
            values.get("url", current.url), values.get("query_param", current.query_param)
        )
    return ResolverConfig(endpoints=endpoints, **data)


def config_from_data(data: Dict[str, Any]) -> CliConfig:
    data = dict(data)
    try:
        resolver = _resolver_from(data.pop("resolver", {}))
        _known(CliConfig, data, "top level")
        return CliConfig(resolver=resolver, **data)
    except TypeError as e:
        raise ConfigError(str(e))


def load_config(path: Optional[str] = None, environ: Optional[Dict[str, str]] = None) -> CliConfig:
    """
    Read the TOML file at `path`, or ./superpattern.toml if it exists, and apply the
    environment on top.
    """
    environ = os.environ if environ is None else environ
    if path is None and os.path.exists(DEFAULT_CONFIG_FILE):
        path = DEFAULT_CONFIG_FILE

    data: Dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, "rb") as fl:
                data = tomllib.load(fl)
        except FileNotFoundError:
            raise ConfigError(f"Config file not found: {path}")
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"{path}: {e}")
        logger.debug("loaded config from %s", path)

    config = config_from_data(data)
    if key := environ.get(API_KEY_ENV):
        config = dataclasses.replace(
            config, resolver=dataclasses.replace(config.resolver, bioportal_api_key=key)
        )
    return config
