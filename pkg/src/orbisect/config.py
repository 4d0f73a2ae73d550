"""Size caps for the enumeration routines.

Caps are configuration: defaults can be overridden per call or through the
``ORBISECT_MAX_GROUP`` / ``ORBISECT_MAX_HOMS`` environment variables.
"""
from __future__ import annotations

import os
from dataclasses import dataclass


class CapExceeded(RuntimeError):
    """Raised when a computation would exceed a configured size cap."""


@dataclass(frozen=True)
class Caps:
    max_group: int = 10_000
    max_homs: int = 10**7

    @classmethod
    def from_env(cls) -> "Caps":
        defaults = cls()
        return cls(
            max_group=int(os.environ.get("ORBISECT_MAX_GROUP", defaults.max_group)),
            max_homs=int(os.environ.get("ORBISECT_MAX_HOMS", defaults.max_homs)),
        )


def resolve(caps: Caps | None) -> Caps:
    return caps if caps is not None else Caps.from_env()
