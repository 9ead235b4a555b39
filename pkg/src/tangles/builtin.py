"""Bundled schemas used by the verification suite and the CLI."""

from __future__ import annotations

from importlib import resources

from .schema import SchemaGraph, parse_schema

SUITE = ("ray", "dray", "star", "spider", "comb", "cliq")
EXTRAS = ("fan", "ladder", "twostars", "twohub")

_cache: dict[str, SchemaGraph] = {}


def builtin_names() -> tuple[str, ...]:
    return SUITE + EXTRAS


def schema_text(name: str) -> str:
    if name not in builtin_names():
        raise KeyError(f"unknown builtin schema {name!r}")
    return (resources.files("tangles") / "schemas" / f"{name}.schema").read_text()


def load(name: str) -> SchemaGraph:
    if name not in _cache:
        _cache[name] = parse_schema(schema_text(name))
    return _cache[name]


def load_input(path_or_builtin: str) -> SchemaGraph:
    """Load a schema from a file path or a ``builtin:<name>`` reference."""
    if path_or_builtin.startswith("builtin:"):
        return load(path_or_builtin.split(":", 1)[1])
    with open(path_or_builtin) as fh:
        return parse_schema(fh.read())
