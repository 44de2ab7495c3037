"""Shared enumerations and small helpers."""

from enum import Enum
from pathlib import Path


class WitnessKind(Enum):
    """The two outcomes of the Ramsey dichotomy. Values are the strings used in witness files."""
    ISOTROPIC = "isotropic"
    COMPLETE = "complete"

    @classmethod
    def getFriendlyStrings(cls):
        return ["Totally-isotropic", "Complete"]

    @classmethod
    def numToFriendlyString(cls, num):
        if isinstance(num, WitnessKind):
            num = list(WitnessKind).index(num)
        return WitnessKind.getFriendlyStrings()[num]


class GenMode(Enum):
    UNIFORM = "uniform"
    BGH_LOWER = "bgh_lower"


def ensure_parent(path) -> Path:
    """Creates the directory holding path if needed and returns path as a Path."""
    path = Path(path)
    if not path.parent.exists():
        path.parent.mkdir(parents=True)
    return path
