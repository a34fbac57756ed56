"""Exact computations with l-adic systems up to Artin-Rees equivalence."""

from ._arl import (
    ArlError,
    HyperNat,
    Tower,
    ZlModule,
    limit,
    load_tower_file,
    parse_tower_file,
    replay,
    suites,
    tensor_zl,
    to_tower,
    upsilon,
    verify,
)

__all__ = [
    "ArlError",
    "HyperNat",
    "Tower",
    "ZlModule",
    "limit",
    "load_tower_file",
    "parse_tower_file",
    "replay",
    "suites",
    "tensor_zl",
    "to_tower",
    "upsilon",
    "verify",
]
