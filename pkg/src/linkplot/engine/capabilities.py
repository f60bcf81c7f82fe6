"""Optional-feature detection via dynamic import probing.

Capabilities are detected once at startup and immutable afterwards;
plugins and optional ingestion paths declare which capability names they
need and are disabled (with a diagnostic) when one is missing.
"""

from __future__ import annotations

import importlib.util
from dataclasses import dataclass

#: capability name -> module whose importability enables it
_PROBES = {
    "ingest.extended-formats": "pandas",
}


@dataclass(frozen=True)
class CapabilityFlags:
    available: frozenset

    def has(self, name: str) -> bool:
        return name in self.available

    def missing(self, required) -> list[str]:
        return sorted(set(required) - self.available)


def detect_capabilities() -> CapabilityFlags:
    found = {
        name
        for name, module in _PROBES.items()
        if importlib.util.find_spec(module) is not None
    }
    return CapabilityFlags(available=frozenset(found))
