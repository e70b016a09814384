"""Plain-text ``key = value`` configuration documents."""

from __future__ import annotations

from dataclasses import asdict, fields

from .core import ConfigError, SimConfig

# Bound errors are reported against whichever of the pair appeared last.
_PARTNERS = {"speed_min": "speed_max", "size_min": "size_max"}


class ConfigParseError(ConfigError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message, field)
        self.line = line


def parse_config(text: str, base: SimConfig | None = None) -> SimConfig:
    """Parse a config document over ``base`` (the defaults if omitted).

    Blank lines are ignored and ``#`` starts a comment. Unknown keys,
    malformed lines, non-numeric values and violated bounds raise
    ConfigParseError carrying the line number.
    """
    types = SimConfig.field_types()
    values: dict[str, int | float] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key or not value:
            raise ConfigParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if key not in types:
            raise ConfigParseError(f"unknown key {key!r}", lineno, key)
        if key in lines:
            raise ConfigParseError(f"duplicate key {key!r}", lineno, key)
        try:
            values[key] = _convert(value, types[key])
        except ValueError:
            kind = "an integer" if types[key] is int else "a number"
            raise ConfigParseError(f"{key} must be {kind}, got {value!r}", lineno, key) from None
        lines[key] = lineno

    config = SimConfig(**{**asdict(base or SimConfig()), **values})
    try:
        return config.validate()
    except ConfigError as exc:
        candidates = [k for k in (exc.field, _PARTNERS.get(exc.field or "")) if k in lines]
        lineno = max((lines[k] for k in candidates), default=None)
        raise ConfigParseError(str(exc), lineno, exc.field) from None


def serialize_config(config: SimConfig) -> str:
    out = []
    for f in fields(SimConfig):
        value = getattr(config, f.name)
        out.append(f"{f.name} = {value!r}")
    return "\n".join(out) + "\n"


def _convert(value: str, kind: type) -> int | float:
    if kind is int:
        return int(value, 10)
    result = float(value)
    if result != result:
        raise ValueError("nan")
    return result
