"""Service configuration and documented defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ProlivisError
from .layout import LayoutParams

SNAPSHOT_ENV_VAR = "PROLIVIS_SNAPSHOT"
DEFAULT_THETA = 3

#: Outbound database search templates; ``{symbol}`` is mandatory, ``{taxid}``
#: optional. These are configuration, not logic — override per deployment.
DEFAULT_URL_TEMPLATES: dict[str, str] = {
    "biogrid": "https://thebiogrid.org/search.php?search={symbol}&organism={taxid}",
    "uniprot": "https://www.uniprot.org/uniprotkb?query={symbol}",
    "amigo": "https://amigo.geneontology.org/amigo/search/bioentity?q={symbol}",
}


class InvalidConfig(ProlivisError):
    code = "invalid_config"


@dataclass
class ServiceConfig:
    snapshot_path: Path
    host: str = "127.0.0.1"
    port: int = 8020
    theta: int = DEFAULT_THETA
    layout: LayoutParams = field(default_factory=LayoutParams)
    url_templates: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_URL_TEMPLATES))
    static_dir: Path | None = None

    def validate(self) -> None:
        if not 1 <= self.port <= 65535:
            raise InvalidConfig(f"port {self.port} outside [1, 65535]")
        if self.theta < 1:
            raise InvalidConfig(f"collapse threshold must be >= 1, got {self.theta}")
        self.layout.validate()


def default_snapshot_path() -> Path | None:
    value = os.environ.get(SNAPSHOT_ENV_VAR)
    return Path(value) if value else None
