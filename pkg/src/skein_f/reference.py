"""Published polynomial values used as regression oracles (bundled JSON)."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .ratfun import RatFun, from_text

SECTIONS = ("simple", "three_colored", "equal_f3", "sum_pair", "four_component")


@lru_cache(maxsize=1)
def _raw() -> dict:
    return json.loads(resources.files("skein_f").joinpath("data/reference.json").read_text())


def value(section: str, key: str) -> RatFun:
    try:
        entry = _raw()[section][key]
    except KeyError:
        raise KeyError(f"no reference value {section}/{key}") from None
    return from_text(entry["value"])


def keys(section: str) -> list[str]:
    return sorted(_raw()[section])


def source(section: str, key: str) -> str:
    """The expression as transcribed, before canonicalization."""
    return _raw()[section][key]["source"]
