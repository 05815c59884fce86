"""
The symplectic algebra: formal sums Σ a_v b_v with b_v b_w = λ(½ω(v, w)) b_{v+w},
Ward's operator P(g), the cocycle c(g, h), and the realization as n x n
matrices through matrix units e_st = b_s^{-1} e b_t over a Lagrangian L.

In hyperbolic frame coordinates v = (a, b) with L = span(e_i) and coset
representatives s = (0, b_s), the matrix of b_v is monomial: row s has its
only entry in the column t with b_t = b_s + b_v, equal to
λ(-½ Σ_i d_i a_i (b_s,i + b_t,i)).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Dict, Tuple

import numpy as np

from algebra.bforms import bg_on
from algebra.errors import RejectedInputError, SizeGuardError
from algebra.finmod import Element, Submodule, coordinate_grid
from algebra.spgroup import SpElement, SymplecticModule
from algebra.zmod import AdditiveCharacter
from config import Config

logger = logging.getLogger(__name__)


def _same_context(space: SymplecticModule, other: SymplecticModule) -> bool:
    return space is other or (space.module == other.module and space.omega.gram == other.omega.gram)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Sparse element Σ coeffs[v]·b_v of the symplectic algebra of (V, ω, λ)."""

    space: SymplecticModule
    chi: AdditiveCharacter
    coeffs: Dict[Element, complex] = field(default_factory=dict)

    def coefficient(self, v) -> complex:
        return self.coeffs.get(self.space.module.reduce(v), 0j)

    def _check(self, other: "AlgebraElement") -> None:
        if not _same_context(self.space, other.space) or self.chi != other.chi:
            raise RejectedInputError("Algebra elements belong to different symplectic algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        coeffs = dict(self.coeffs)
        for v, a in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0j) + a
        return AlgebraElement(self.space, self.chi, coeffs)

    def scaled(self, s: complex) -> "AlgebraElement":
        return AlgebraElement(self.space, self.chi, {v: s * a for v, a in self.coeffs.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return alg_mult(self, other)

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """(elements, coefficients) as numpy arrays."""
        if not self.coeffs:
            return np.zeros((0, self.space.module.rank), dtype=np.int64), np.zeros(0, dtype=complex)
        keys = list(self.coeffs)
        return np.array(keys, dtype=np.int64), np.array([self.coeffs[k] for k in keys], dtype=complex)


def basis_element(space: SymplecticModule, chi: AdditiveCharacter, v, coeff: complex = 1.0) -> AlgebraElement:
    return AlgebraElement(space, chi, {space.module.check(v): complex(coeff)})


def alg_mult(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Twisted convolution extending b_v b_w = λ(½ω(v, w)) b_{v+w}."""
    a._check(b)
    module = a.space.module
    omega = a.space.omega
    half = a.space.ring.half
    result: Dict[Element, complex] = {}
    for v, x in a.coeffs.items():
        for w, y in b.coeffs.items():
            key = module.add(v, w)
            result[key] = result.get(key, 0j) + x * y * a.chi(half * omega.evaluate(v, w))
    return AlgebraElement(a.space, a.chi, result)


def _quadratic_terms(form_gram: np.ndarray, coords: np.ndarray, m: int) -> np.ndarray:
    return np.einsum("ni,ij,nj->n", coords, form_gram, coords) % m


def p_terms(g: SpElement, chi: AdditiveCharacter) -> Tuple[np.ndarray, np.ndarray]:
    """Elements x of V(1-g) and the coefficients λ(½B_g(x, x)) of P(g)."""
    x = g.displacement
    module = g.space.module
    if x.is_trivial:
        return np.zeros((1, module.rank), dtype=np.int64), np.ones(1, dtype=complex)
    b = bg_on(g.hom, g.space.omega, x)
    coords = x.coordinate_array()
    m = g.space.ring.m
    diagonal = _quadratic_terms(np.array(b.gram, dtype=np.int64), coords, m)
    coefficients = chi.values((g.space.ring.half * diagonal) % m)
    return x.element_array(), coefficients


def p_operator(g: SpElement, chi: AdditiveCharacter) -> AlgebraElement:
    """
    Ward's operator P(g) = Σ_{x ∈ V(1-g)} λ(½B_g(x, x)) b_x

    Args:
        g: Symplectic element
        chi: Primitive character λ

    Returns:
        P(g) as a sparse algebra element
    """
    elements, coefficients = p_terms(g, chi)
    coeffs = {tuple(int(a) for a in row): complex(c) for row, c in zip(elements, coefficients)}
    return AlgebraElement(g.space, chi, coeffs)


def conv_coeff(g: SpElement, h: SpElement, chi: AdditiveCharacter) -> complex:
    """c(g, h) with P(g)P(h) = c(g, h)P(gh)."""
    if not _same_context(g.space, h.space):
        raise RejectedInputError("Elements belong to different symplectic modules")
    meet = g.displacement.intersection(h.displacement)
    if meet.is_trivial:
        return 1 + 0j
    omega = g.space.omega
    m = g.space.ring.m
    coords = meet.coordinate_array()
    bg = np.array(bg_on(g.hom, omega, meet).gram, dtype=np.int64)
    bh = np.array(bg_on(h.hom, omega, meet).gram, dtype=np.int64)
    exponents = (g.space.ring.half * (_quadratic_terms(bg, coords, m) + _quadratic_terms(bh, coords, m))) % m
    return complex(chi.values(exponents).sum())


def lagrangian(space: SymplecticModule) -> Submodule:
    """L = span of the e-vectors of the hyperbolic frame, so L^⊥ = L."""
    lag = Submodule.generated_by(space.module, [e for e, _, _ in space.frame])
    if lag.order * lag.order != space.order:
        raise RejectedInputError(f"|L|² = {lag.order ** 2} differs from |V| = {space.order}")
    return lag


class MatrixUnitBasis:
    """
    Matrix realization of the symplectic algebra over the Lagrangian of the frame
    """

    def __init__(self, space: SymplecticModule, chi: AdditiveCharacter):
        if space.order > Config.MAX_ORACLE_ORDER:
            raise SizeGuardError(f"|V| = {space.order} exceeds the matrix guard {Config.MAX_ORACLE_ORDER}")
        if chi.ring != space.ring:
            raise RejectedInputError("Character and module live over different rings")
        self.space = space
        self.chi = chi
        self.lagrangian = lagrangian(space)
        frame = space.frame
        self.k = len(frame)
        self.orders = np.array(space.frame_orders, dtype=np.int64)
        self.pairings = np.array([d for _, _, d in frame], dtype=np.int64)
        self.n = prod(space.frame_orders)
        if self.n * self.lagrangian.order != space.order:
            raise RejectedInputError("Coset representatives do not form a transversal of L")
        self.reps = coordinate_grid(space.frame_orders)

    @cached_property
    def frame_table(self) -> np.ndarray:
        """Frame coordinates (a, b) of every element of V, by element index."""
        module = self.space.module
        grid = coordinate_grid(self.space.frame_orders + self.space.frame_orders)
        basis = np.array(
            [e for e, _, _ in self.space.frame] + [f for _, f, _ in self.space.frame], dtype=np.int64
        )
        ambient = (grid @ basis) % np.array(module.divisors, dtype=np.int64)
        table = np.zeros_like(grid)
        table[module.index_array(ambient)] = grid
        return table

    @cached_property
    def reps_ambient(self) -> np.ndarray:
        """Coset representatives t = Σ b_i f_i in module coordinates."""
        fs = np.array([f for _, f, _ in self.space.frame], dtype=np.int64)
        return (self.reps @ fs) % np.array(self.space.module.divisors, dtype=np.int64)

    def matrix(self, elements: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
        """Σ coefficients[j]·M(b_{elements[j]}) as a dense n x n matrix."""
        n, k = self.n, self.k
        out = np.zeros(n * n, dtype=complex)
        if len(elements) == 0:
            return out.reshape(n, n)
        module = self.space.module
        divisors = np.array(module.divisors, dtype=np.int64)
        table = self.frame_table[module.index_array(np.asarray(elements, dtype=np.int64) % divisors)]
        m = self.space.ring.m
        half = self.space.ring.half
        rows = np.arange(n, dtype=np.int64)
        chunk = max(1, Config.ORACLE_CHUNK)
        for start in range(0, len(table), chunk):
            a = table[start : start + chunk, :k]
            b = table[start : start + chunk, k:]
            coeff = np.asarray(coefficients[start : start + chunk])
            target = (self.reps[None, :, :] + b[:, None, :]) % self.orders
            cols = np.ravel_multi_index(tuple(np.moveaxis(target, -1, 0)), tuple(self.orders))
            weight = ((a * self.pairings) % m)[:, None, :] * (self.reps[None, :, :] + target)
            exponents = (-half * (weight.sum(axis=-1) % m)) % m
            values = coeff[:, None] * self.chi.values(exponents)
            np.add.at(out, (rows[None, :] * n + cols).ravel(), values.ravel())
        return out.reshape(n, n)

    def basis_matrix(self, v) -> np.ndarray:
        return self.matrix(np.array([self.space.module.check(v)], dtype=np.int64), np.ones(1, dtype=complex))


def matrixize(a: AlgebraElement, basis: MatrixUnitBasis) -> np.ndarray:
    """Image of ``a`` in the matrix-unit basis; matrixize(b_0) = I."""
    if not _same_context(a.space, basis.space) or a.chi != basis.chi:
        raise RejectedInputError("Matrix basis belongs to a different symplectic algebra")
    elements, coefficients = a.arrays()
    return basis.matrix(elements, coefficients)
