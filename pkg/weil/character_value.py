"""
Exact character values ε·√c
"""

import math
from dataclasses import dataclass
from typing import Any, Dict

from algebra.errors import RejectedInputError, SnapError
from algebra.gauss import FourthRoot
from config import Config


@dataclass(frozen=True)
class CharacterValue:
    """ψ(g) = eps·√c with c = |C_V(g)|."""

    c: int
    eps: FourthRoot

    def __post_init__(self):
        if self.c < 0:
            raise RejectedInputError(f"c must be non-negative, got {self.c}")

    def to_complex(self) -> complex:
        return self.eps.value * math.sqrt(self.c)

    def __mul__(self, other: "CharacterValue") -> "CharacterValue":
        return CharacterValue(self.c * other.c, self.eps * other.eps)

    def __neg__(self) -> "CharacterValue":
        return CharacterValue(self.c, -self.eps)

    def conjugate(self) -> "CharacterValue":
        return CharacterValue(self.c, self.eps.conjugate())

    @property
    def is_real(self) -> bool:
        return self.eps.is_real

    @classmethod
    def snap(cls, z: complex, c: int, tolerance: float = None) -> "CharacterValue":
        """Exact value ε√c closest to ``z``; the scale √c is fixed by the caller."""
        tolerance = Config.SNAP_TOLERANCE if tolerance is None else tolerance
        if c == 0:
            raise SnapError("Character values never vanish")
        root = math.sqrt(c)
        try:
            eps = FourthRoot.snap(z / root, tolerance)
        except SnapError as exc:
            raise SnapError(f"Value {z:.12g} is not of the form ε·√{c}") from exc
        return cls(c, eps)

    def to_dict(self) -> Dict[str, Any]:
        return {"c": self.c, "eps": str(self.eps)}

    def __str__(self) -> str:
        return f"{self.eps}·√{self.c}"
