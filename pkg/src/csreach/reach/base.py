from __future__ import annotations

from dataclasses import dataclass


class IndexGuardError(RuntimeError):
    """An index would exceed its configured size limit."""


@dataclass(frozen=True)
class SchemeCapabilities:
    name: str
    returns_paths: bool
