"""Run-time defaults shared by the library entry points and the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .words import DEFAULT_MAX_LENGTH

CATALOG_ENV = "GENUS2LF_CATALOG"


@dataclass(frozen=True)
class WorkbenchConfig:
    max_length: int = DEFAULT_MAX_LENGTH  # cap on intermediate surface words
    tietze_budget: int = 10_000  # elementary moves
    catalog_dir: str | None = None  # directory holding catalog.txt

    @classmethod
    def from_env(cls) -> "WorkbenchConfig":
        return cls(catalog_dir=os.environ.get(CATALOG_ENV) or None)
