"""Characteristic cycles and micro-packets from orbit data."""

import json
from pathlib import Path

from . import _charcyc
from ._charcyc import DatasetError, InconsistentSystemError

__all__ = [
    "DatasetError",
    "InconsistentSystemError",
    "bundled_dataset",
    "check_halfinteger_roots",
    "packets",
    "solve",
    "validate",
    "verify",
]


def bundled_dataset() -> str:
    return str(Path(__file__).parent / "data" / "f4a3.json")


def validate(path: str) -> list:
    return json.loads(_charcyc.validate(str(path)))


def solve(path: str) -> dict:
    return json.loads(_charcyc.solve(str(path)))


def packets(path: str) -> dict:
    return json.loads(_charcyc.packets(str(path)))


def verify(path: str) -> dict:
    return json.loads(_charcyc.verify(str(path)))


def check_halfinteger_roots(roots) -> bool:
    return _charcyc.check_halfinteger_roots([str(r) for r in roots])
