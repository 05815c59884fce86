"""
Exact closed formulas for Weil characters
ψ(g) = √|C_V(g)| · sign(q/B_g) · γ_λ(-q), plus the special-case formulas
used as independent cross-checks.
"""

import logging
import math
from math import isqrt
from typing import Dict, Tuple

import numpy as np

from algebra.bforms import BilinearForm, bg_on, gram_determinant, symmetric_q
from algebra.errors import HypothesisError, RejectedInputError, SizeGuardError
from algebra.finmod import FinModule
from algebra.gauss import ONE, FourthRoot, gauss_sum
from algebra.modsign import perm_sign_fast, sign_ratio
from algebra.spgroup import SpElement, SymplecticModule, element_order, sp_minus_one
from algebra.zmod import AdditiveCharacter, jacobi
from config import Config
from weil.character_value import CharacterValue

logger = logging.getLogger(__name__)


def _parity_sign(k: int) -> int:
    return -1 if k % 2 else 1


class FormulaEngine:
    """
    Character values of the Weil representation of one (V, ω, λ) from exact formulas
    """

    def __init__(self, space: SymplecticModule, chi: AdditiveCharacter):
        """Initialize the engine with an empty value cache"""
        if chi.ring != space.ring:
            raise RejectedInputError("Character and module live over different rings")
        self.space = space
        self.chi = chi
        self._cache: Dict[Tuple[Tuple[int, ...], ...], CharacterValue] = {}

    def _check(self, g: SpElement) -> None:
        if g.space.module != self.space.module or g.space.omega.gram != self.space.omega.gram:
            raise RejectedInputError("Element belongs to a different symplectic module")

    def twisted(self, s: int) -> "FormulaEngine":
        """Engine for the character λ_s = λ(s·)."""
        return FormulaEngine(self.space, self.chi.scaled(s))

    def epsilon(self, g: SpElement, q: BilinearForm = None) -> FourthRoot:
        """sign(q/B_g)·γ_λ(-q) on X = V(1-g), with the canonical q unless one is given."""
        x = g.displacement
        if x.is_trivial:
            return ONE
        b = bg_on(g.hom, self.space.omega, x)
        q = symmetric_q(x) if q is None else q
        return sign_ratio(q, b) * gauss_sum(q.negated(), self.chi)

    def closed_value(self, g: SpElement) -> CharacterValue:
        """
        ψ(g) from the general formula

        Args:
            g: Symplectic element of the engine's module

        Returns:
            CharacterValue with c = |Ker(1-g)|
        """
        self._check(g)
        if g.key not in self._cache:
            self._cache[g.key] = CharacterValue(g.fixed.order, self.epsilon(g))
        return self._cache[g.key]

    def value_odd(self, g: SpElement) -> CharacterValue:
        """(1/√|V|) Σ_v λ(½ω(v, vg)) for g of odd order, snapped to ε√c."""
        self._check(g)
        if element_order(g) % 2 == 0:
            raise HypothesisError("value_odd needs an element of odd order")
        module = self.space.module
        if module.order > Config.MAX_ENUMERATION:
            raise SizeGuardError(f"|V| = {module.order} exceeds the enumeration guard")
        m = self.space.ring.m
        elements = module.element_array()
        images = (elements @ np.array(g.hom.matrix, dtype=np.int64)) % np.array(module.divisors, dtype=np.int64)
        gram = np.array(self.space.omega.gram, dtype=np.int64)
        pairings = np.einsum("ni,ij,nj->n", elements, gram, images) % m
        total = self.chi.values((self.space.ring.half * pairings) % m).sum() / math.sqrt(module.order)
        return CharacterValue.snap(complex(total), g.fixed.order)

    def value_involution(self, t: SpElement) -> CharacterValue:
        """(-1)^{(d-1)/2}·|C_V(t)|^{1/2} with d = √|V(1-t)|."""
        self._check(t)
        if not (t * t).is_identity():
            raise HypothesisError("value_involution needs t² = 1")
        size = t.displacement.order
        d = isqrt(size)
        if d * d != size:
            raise HypothesisError(f"|V(1-t)| = {size} is not a square")
        return CharacterValue(t.fixed.order, FourthRoot.from_sign(_parity_sign((d - 1) // 2)))

    def value_invertible(self, g: SpElement) -> CharacterValue:
        """(-1)^{(√|U|-1)/2}·sign_U(1-g) when U = V(1-g) meets C_V(g) trivially."""
        self._check(g)
        u = g.displacement
        k = g.fixed
        if not u.intersection(k).is_trivial:
            raise HypothesisError("1-g is not invertible on V(1-g)")
        size = u.order
        root = isqrt(size)
        if root * root != size:
            raise HypothesisError(f"|V(1-g)| = {size} is not a square")
        sign = _parity_sign((root - 1) // 2) * perm_sign_fast(g.one_minus(), u)
        return CharacterValue(k.order, FourthRoot.from_sign(sign))

    def psi_pm(self, g: SpElement) -> Tuple[complex, complex]:
        """ψ±(g) = (ψ(g) ± ψ(-1)ψ(-g))/2, the characters on E±."""
        psi = self.closed_value(g).to_complex()
        twisted = (self.closed_value(sp_minus_one(self.space)) * self.closed_value(-g)).to_complex()
        return (psi + twisted) / 2, (psi - twisted) / 2

    def value_prime_field(self, g: SpElement) -> CharacterValue:
        """√|C_V(g)|·γ_λ(-⟨1⟩)^{dim V(1-g)}·(det B_g / p), for m = p prime."""
        self._check(g)
        ring = self.space.ring
        if ring.primes() != [ring.m]:
            raise RejectedInputError("value_prime_field needs a prime modulus")
        x = g.displacement
        if x.is_trivial:
            return CharacterValue(g.fixed.order, ONE)
        line = FinModule(ring, (ring.m,))
        gamma = gauss_sum(BilinearForm(line, ((-1,),)), self.chi)
        disc = jacobi(gram_determinant(bg_on(g.hom, self.space.omega, x)), ring.m)
        return CharacterValue(g.fixed.order, gamma ** x.rank * disc)

    def dft_value(self) -> CharacterValue:
        """ψ of the DFT element: +1 when √|V| ≡ 1, 3 mod 8, else -1."""
        return CharacterValue(1, FourthRoot.from_sign(jacobi(-2, self.space.n)))
