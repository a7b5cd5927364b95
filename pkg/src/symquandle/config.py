"""Size guards shared by every module."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class SizeGuardError(RuntimeError):
    """A configured size guard would be exceeded."""


@dataclass(frozen=True)
class Limits:
    max_verify_size: int = 64
    max_search_size: int = 12
    max_degree: int = 4
    max_matrix_entries: int = 200_000
    max_coloring_space: int = 10**15

    def check(self, name: str, value: int) -> None:
        cap = getattr(self, name)
        if value > cap:
            raise SizeGuardError(f"{name} exceeded: {value} > {cap}")


DEFAULT_LIMITS = Limits()
_current = DEFAULT_LIMITS


def limits() -> Limits:
    return _current


def set_limits(new: Limits | None = None, **overrides) -> Limits:
    """Install new global limits; returns the previous ones."""
    global _current
    old = _current
    base = new if new is not None else _current
    _current = replace(base, **overrides) if overrides else base
    return old


def load_limits(path: str) -> Limits:
    with open(path) as fh:
        raw = json.load(fh)
    known = {f.name for f in fields(Limits)}
    unknown = set(raw) - known
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    return replace(DEFAULT_LIMITS, **{k: int(v) for k, v in raw.items()})
