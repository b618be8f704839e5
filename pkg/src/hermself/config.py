from __future__ import annotations

from dataclasses import dataclass


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured bound."""


@dataclass(frozen=True)
class Caps:
    words: int = 2**26  # codewords enumerated by weight distributions / min distance
    points: int = 10**8  # projective points scanned for common zeros
    subset: int = 8  # largest dependent-column set searched for
    combos: int = 2 * 10**7  # partial sums held by the column search

    def __post_init__(self):
        for name in ("words", "points", "subset", "combos"):
            if getattr(self, name) <= 0:
                raise ValueError(f"cap {name} must be positive")


DEFAULT_CAPS = Caps()
