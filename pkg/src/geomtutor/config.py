"""Server configuration: input-mode gating and the external matcher hook.

Read from a JSON file at startup; GEOM_CORPUS and GEOM_PORT environment
variables override the corpus path and port.  A configuration that
disables both input modes leaves no way to submit lines and is rejected.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidConfigError
from .matching import AUTO_ACCEPT_THRESHOLD, ExternalMatcherConfig, MatcherConfig

DEFAULT_PORT = 8421


@dataclass(frozen=True)
class ServiceConfig:
    constructed_mode_enabled: bool = True
    writein_enabled: bool = True
    external_matcher_enabled: bool = False
    external_matcher_url: str | None = None
    auto_accept_threshold: float = AUTO_ACCEPT_THRESHOLD
    port: int = DEFAULT_PORT
    corpus_path: str | None = None

    def __post_init__(self):
        if not self.constructed_mode_enabled and not self.writein_enabled:
            raise InvalidConfigError("both input modes disabled; no way to submit lines")
        if self.external_matcher_enabled and not self.external_matcher_url:
            raise InvalidConfigError("external matcher enabled but no URL configured")
        if not 0.0 < self.auto_accept_threshold <= 1.0:
            raise InvalidConfigError("auto_accept_threshold must be in (0, 1]")
        if not 0 < self.port < 65536:
            raise InvalidConfigError(f"bad port {self.port}")

    def matcher_config(self) -> MatcherConfig:
        external = None
        if self.external_matcher_enabled and self.external_matcher_url:
            external = ExternalMatcherConfig(url=self.external_matcher_url)
        return MatcherConfig(
            auto_accept_threshold=self.auto_accept_threshold,
            external=external,
            strict_only=not self.writein_enabled,
        )

    def as_public_dict(self) -> dict:
        return {
            "constructed_mode_enabled": self.constructed_mode_enabled,
            "writein_enabled": self.writein_enabled,
            "external_matcher_enabled": self.external_matcher_enabled,
        }


_KNOWN_KEYS = {
    "constructed_mode_enabled",
    "writein_enabled",
    "external_matcher_enabled",
    "external_matcher_url",
    "auto_accept_threshold",
    "port",
    "corpus_path",
}


def load_config(path: str | Path | None = None, **overrides) -> ServiceConfig:
    values: dict = {}
    if path is not None:
        try:
            raw = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InvalidConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidConfigError("config root must be an object")
        unknown = set(data) - _KNOWN_KEYS
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    values.update({k: v for k, v in overrides.items() if v is not None})
    if os.environ.get("GEOM_PORT") and "port" not in overrides:
        try:
            values["port"] = int(os.environ["GEOM_PORT"])
        except ValueError as exc:
            raise InvalidConfigError(f"bad GEOM_PORT: {os.environ['GEOM_PORT']!r}") from exc
    try:
        return ServiceConfig(**values)
    except TypeError as exc:
        raise InvalidConfigError(str(exc)) from exc
