"""Analyzer configuration, overridable from a JSON file."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError
from .sections import SectionConfig
from .selectors import SelectorList

DEFAULT_LAZY_ATTRS = (
    "data-src",
    "data-srcset",
    "data-original",
    "data-lazy-src",
    "data-echo",
)

DEFAULT_DISCLOSURE_CLASSES = (
    "dropdown-toggle",
    "accordion-button",
    "accordion-toggle",
    "navbar-toggler",
)


@dataclass(frozen=True)
class AnalyzerConfig:
    lazy_attrs: tuple[str, ...] = DEFAULT_LAZY_ATTRS
    disclosure_classes: tuple[str, ...] = DEFAULT_DISCLOSURE_CLASSES
    large_image_min_px: int = 100
    # `#`/`#top` anchors count as standard go-to-top buttons, not breakage.
    hash_go_to_top: bool = True
    # Pages whose analysis exceeds this budget are tallied as skipped.
    page_budget_s: float = 60.0
    sections: SectionConfig = field(default_factory=SectionConfig)


_SECTION_KEYS = {
    "main": "main_selectors",
    "header": "header_selectors",
    "footer": "footer_selectors",
    "aside": "aside_selectors",
    "nav": "nav_selectors",
}


def _parse_sections(raw: object) -> SectionConfig:
    if not isinstance(raw, dict):
        raise ConfigError("'sections' must be an object of selector strings")
    kwargs = {}
    for key, value in raw.items():
        if key not in _SECTION_KEYS:
            raise ConfigError(f"unknown section key {key!r}")
        if not isinstance(value, str):
            raise ConfigError(f"section {key!r} must be a selector string")
        kwargs[_SECTION_KEYS[key]] = SelectorList.parse(value)
    return SectionConfig(**kwargs)


def _string_tuple(value: object, key: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ConfigError(f"{key!r} must be a list of strings")
    return tuple(value)


def config_from_dict(data: dict) -> AnalyzerConfig:
    cfg = AnalyzerConfig()
    for key, value in data.items():
        if key == "lazy_attrs":
            cfg = replace(cfg, lazy_attrs=_string_tuple(value, key))
        elif key == "disclosure_classes":
            cfg = replace(cfg, disclosure_classes=_string_tuple(value, key))
        elif key == "large_image_min_px":
            if not isinstance(value, int) or value < 0:
                raise ConfigError("'large_image_min_px' must be a non-negative integer")
            cfg = replace(cfg, large_image_min_px=value)
        elif key == "hash_go_to_top":
            if not isinstance(value, bool):
                raise ConfigError("'hash_go_to_top' must be a boolean")
            cfg = replace(cfg, hash_go_to_top=value)
        elif key == "page_budget_s":
            if not isinstance(value, (int, float)) or value <= 0:
                raise ConfigError("'page_budget_s' must be a positive number")
            cfg = replace(cfg, page_budget_s=float(value))
        elif key == "sections":
            cfg = replace(cfg, sections=_parse_sections(value))
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return cfg


def load_config(path: str | Path) -> AnalyzerConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    return config_from_dict(data)
