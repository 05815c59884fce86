"""
Arithmetic in Z/m for odd m: the ring, its primitive additive characters,
Jacobi symbols and the sign character on units.
"""

import cmath
import logging
from dataclasses import dataclass
from math import gcd
from typing import List

import numpy as np
from sympy import jacobi_symbol, primefactors

from algebra.errors import RejectedInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ring:
    """The coefficient ring Z/m with m odd; ``half`` is the inverse of 2."""

    m: int
    half: int

    def reduce(self, a: int) -> int:
        return a % self.m

    def is_unit(self, a: int) -> bool:
        return gcd(a % self.m, self.m) == 1

    def units(self) -> List[int]:
        return [a for a in range(1, self.m) if gcd(a, self.m) == 1]

    def inverse(self, a: int) -> int:
        if not self.is_unit(a):
            raise RejectedInputError(f"{a} is not a unit mod {self.m}")
        return pow(a % self.m, -1, self.m)

    def primes(self) -> List[int]:
        return list(primefactors(self.m))


def ring_new(m: int) -> Ring:
    """
    Build Z/m for an odd modulus m >= 3

    Args:
        m: The modulus

    Returns:
        Ring with half = (m + 1) / 2
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise RejectedInputError(f"Modulus must be an integer, got {m!r}")
    if m < 3 or m % 2 == 0:
        raise RejectedInputError(f"Modulus must be odd and at least 3, got {m}")
    return Ring(m=m, half=(m + 1) // 2)


@dataclass(frozen=True)
class AdditiveCharacter:
    """The primitive character r -> exp(2*pi*i*s*r/m)."""

    ring: Ring
    s: int = 1

    def __post_init__(self):
        if not self.ring.is_unit(self.s):
            raise RejectedInputError(
                f"Character twist {self.s} is not a unit mod {self.ring.m}, character would not be primitive"
            )
        object.__setattr__(self, "s", self.s % self.ring.m)

    def __call__(self, r: int) -> complex:
        return char_eval(self, r)

    def values(self, exponents: np.ndarray) -> np.ndarray:
        """Vectorised evaluation on an integer array of residues."""
        m = self.ring.m
        reduced = (np.asarray(exponents, dtype=np.int64) * self.s) % m
        return np.exp(2j * np.pi * reduced / m)

    def scaled(self, t: int) -> "AdditiveCharacter":
        """The character r -> λ(t·r)."""
        return AdditiveCharacter(self.ring, (self.s * t) % self.ring.m)

    def squared(self) -> "AdditiveCharacter":
        return self.scaled(2)


def char_eval(chi: AdditiveCharacter, r: int) -> complex:
    m = chi.ring.m
    return cmath.exp(2j * cmath.pi * ((chi.s * r) % m) / m)


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m); 0 when gcd(a, m) > 1."""
    if m <= 0 or m % 2 == 0:
        raise RejectedInputError(f"Jacobi symbol needs an odd positive modulus, got {m}")
    if m == 1:
        return 1
    return int(jacobi_symbol(a % m, m))


def ring_sign(ring: Ring, a: int) -> int:
    """Parity of r -> r·a on Z/m, equal to the Jacobi symbol (a/m)."""
    if not ring.is_unit(a):
        raise RejectedInputError(f"ring_sign needs a unit, {a} is not a unit mod {ring.m}")
    return jacobi(a, ring.m)


def ring_sign_by_cycles(ring: Ring, a: int) -> int:
    """Reference parity of multiplication by ``a`` from its cycle decomposition."""
    if not ring.is_unit(a):
        raise RejectedInputError(f"ring_sign needs a unit, {a} is not a unit mod {ring.m}")
    m = ring.m
    seen = [False] * m
    cycles = 0
    for start in range(m):
        if seen[start]:
            continue
        cycles += 1
        r = start
        while not seen[r]:
            seen[r] = True
            r = (r * a) % m
    return 1 if (m - cycles) % 2 == 0 else -1


def is_square_unit(ring: Ring, s: int) -> bool:
    """A unit is a square mod odd m iff it is a square mod every prime divisor."""
    if not ring.is_unit(s):
        raise RejectedInputError(f"{s} is not a unit mod {ring.m}")
    return all(jacobi(s, p) == 1 for p in ring.primes())


def p_adic_valuation(a: int, p: int, cap: int) -> int:
    """Valuation of a at p, with 0 counted as ``cap``."""
    if a == 0:
        return cap
    v = 0
    while a % p == 0 and v < cap:
        a //= p
        v += 1
    return v


def crt_idempotents(ring: Ring) -> dict:
    """Idempotent e_p of Z/m for every prime p | m (1 on the p-part, 0 elsewhere)."""
    m = ring.m
    idempotents = {}
    for p in ring.primes():
        pa = 1
        while m % (pa * p) == 0:
            pa *= p
        rest = m // pa
        # e ≡ 1 mod p^a and e ≡ 0 mod rest
        idempotents[p] = (rest * pow(rest, -1, pa)) % m if pa > 1 else 0
    return idempotents
