"""
Symplectic modules and their automorphism groups.

Elements act on row vectors, so ``g * h`` applies g first (v -> (vg)h).
The Cayley parametrization rebuilds g from the pair (V(1-g), B_g), and
factorize splits g along a decomposition V(1-g) = X ⊕ Y with B_g(Y, X) = 0.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import gcd, isqrt, lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np

from algebra.bforms import (
    BilinearForm,
    bg_on,
    is_nondegenerate,
    orth_split,
    preserves_form,
    restrict_form,
    self_paired_pivot,
)
from algebra.errors import (
    DegenerateFormError,
    HypothesisError,
    NotSymplecticError,
    RejectedInputError,
    SizeGuardError,
)
from algebra.finmod import (
    Element,
    FinModule,
    ModuleHom,
    Submodule,
    hom_add,
    hom_apply,
    hom_compose,
    hom_identity,
    hom_neg,
    hom_sub,
    image,
    kernel,
    perp,
    section,
)
from algebra.smith import IntegerSolver
from algebra.zmod import Ring
from config import Config

logger = logging.getLogger(__name__)

Frame = List[Tuple[Element, Element, int]]


@dataclass(frozen=True, eq=False)
class SymplecticModule:
    """A finite module V with a non-degenerate alternating form ω on its basis."""

    module: FinModule
    omega: BilinearForm

    def __post_init__(self):
        if self.omega.module != self.module:
            raise NotSymplecticError("Form does not live on the module")
        if not self.omega.alternating:
            raise NotSymplecticError(f"Gram matrix {self.omega.gram} is not alternating")
        if not is_nondegenerate(self.omega):
            raise NotSymplecticError(f"Gram matrix {self.omega.gram} is degenerate")

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def order(self) -> int:
        return self.module.order

    @property
    def n(self) -> int:
        """√|V|, the degree of the Weil representation."""
        return isqrt(self.module.order)

    @cached_property
    def frame(self) -> Frame:
        return hyperbolic_frame(self)

    @cached_property
    def frame_orders(self) -> Tuple[int, ...]:
        m = self.ring.m
        return tuple(m // gcd(d, m) for _, _, d in self.frame)

    @cached_property
    def _frame_submodule(self) -> Submodule:
        basis = tuple(e for e, _, _ in self.frame) + tuple(f for _, f, _ in self.frame)
        return Submodule(self.module, basis, self.frame_orders + self.frame_orders)

    def frame_coordinates(self, v: Sequence[int]) -> Tuple[Element, Element]:
        """(a, b) with v = Σ a_i e_i + Σ b_i f_i."""
        coords = self._frame_submodule.coordinates(v)
        k = len(self.frame)
        return coords[:k], coords[k:]

    def frame_vector(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self._frame_submodule.element_from_coordinates(tuple(a) + tuple(b))

    def __repr__(self) -> str:
        return f"SymplecticModule(m={self.ring.m}, divisors={self.module.divisors}, omega={self.omega.gram})"


@dataclass(frozen=True, eq=False)
class SpElement:
    hom: ModuleHom
    space: SymplecticModule

    def __post_init__(self):
        if self.hom.dom != self.space.module or self.hom.cod != self.space.module:
            raise RejectedInputError("Element must be an endomorphism of the symplectic module")
        if not preserves_form(self.hom, self.space.omega):
            raise NotSymplecticError(f"Matrix {self.hom.matrix} does not preserve ω")

    @property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return self.hom.matrix

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpElement):
            return NotImplemented
        return self.space.module == other.space.module and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.space.module, self.key))

    def _same_space(self, other: "SpElement") -> None:
        if self.space.module != other.space.module or self.space.omega.gram != other.space.omega.gram:
            raise RejectedInputError("Elements belong to different symplectic modules")

    def __mul__(self, other: "SpElement") -> "SpElement":
        self._same_space(other)
        return SpElement(hom_compose(self.hom, other.hom), self.space)

    def __neg__(self) -> "SpElement":
        return SpElement(hom_neg(self.hom), self.space)

    def __pow__(self, k: int) -> "SpElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = sp_identity(self.space)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, v: Sequence[int]) -> Element:
        return hom_apply(self.hom, v)

    def inverse(self) -> "SpElement":
        rows = tuple(section(self.hom, b) for b in self.space.module.standard_basis())
        return SpElement(ModuleHom(self.hom.dom, self.hom.cod, rows), self.space)

    def one_minus(self) -> ModuleHom:
        return hom_sub(hom_identity(self.space.module), self.hom)

    def one_plus(self) -> ModuleHom:
        return hom_add(hom_identity(self.space.module), self.hom)

    @cached_property
    def displacement(self) -> Submodule:
        """V(1-g)."""
        return image(self.one_minus())

    @cached_property
    def fixed(self) -> Submodule:
        """C_V(g) = Ker(1-g)."""
        return kernel(self.one_minus())

    def is_identity(self) -> bool:
        return self.key == hom_identity(self.space.module).matrix

    def to_list(self) -> List[List[int]]:
        return self.hom.rows_as_lists()

    def __repr__(self) -> str:
        return f"SpElement({self.to_list()})"


def sp_identity(space: SymplecticModule) -> SpElement:
    return SpElement(hom_identity(space.module), space)


def sp_minus_one(space: SymplecticModule) -> SpElement:
    return SpElement(hom_neg(hom_identity(space.module)), space)


def sp_element(space: SymplecticModule, matrix: Sequence[Sequence[int]]) -> SpElement:
    return SpElement(ModuleHom(space.module, space.module, tuple(tuple(r) for r in matrix)), space)


def sp_check(hom: ModuleHom, omega: BilinearForm) -> bool:
    """True iff ``hom`` is an invertible endomorphism preserving ω."""
    if not hom.is_endomorphism or hom.dom != omega.module:
        return False
    return preserves_form(hom, omega) and kernel(hom).is_trivial


def cayley_param(space: SymplecticModule, x: Submodule, b: BilinearForm) -> SpElement:
    """
    The unique g with V(1-g) = X and B_g = B

    Args:
        space: The symplectic module
        x: Submodule of V
        b: Non-degenerate form on the basis of ``x`` with B(x, y) - B(y, x) = ω(x, y)

    Returns:
        g = 1 - α, where α is defined by ω(v, x) = B(vα, x) for all x in X
    """
    if x.ambient != space.module:
        raise RejectedInputError("Submodule does not live in the symplectic module")
    if x.is_trivial:
        return sp_identity(space)
    if b.module.divisors != x.orders:
        raise RejectedInputError(f"Form has orders {b.module.divisors}, submodule basis has {x.orders}")
    omega = space.omega
    m = space.ring.m
    r = x.rank
    for i in range(r):
        for j in range(r):
            if (b.gram[i][j] - b.gram[j][i] - omega.evaluate(x.basis[i], x.basis[j])) % m:
                raise RejectedInputError("B(x, y) - B(y, x) differs from ω(x, y) on the submodule")
    if not is_nondegenerate(b):
        raise DegenerateFormError("Cayley parametrization needs a non-degenerate form")

    lifted = [list(row) for row in b.gram] + [[m if i == j else 0 for j in range(r)] for i in range(r)]
    solver = IntegerSolver(lifted, r)
    alpha_rows = []
    for v in space.module.standard_basis():
        target = [omega.evaluate(v, xk) for xk in x.basis]
        c = solver.solve(target)
        if c is None:
            raise DegenerateFormError(f"No α image for basis vector {v}")
        alpha_rows.append(space.module.combine(c[:r], x.basis))
    alpha = ModuleHom(space.module, space.module, tuple(alpha_rows))
    g = SpElement(hom_sub(hom_identity(space.module), alpha), space)

    # roundtrip on the given basis
    if bg_on(g.hom, omega, x).gram != b.gram:
        raise DegenerateFormError("Cayley roundtrip does not reproduce B")
    return g


def cayley_from_symmetric(space: SymplecticModule, s_gram: Sequence[Sequence[int]]) -> SpElement:
    """Element with X = V and B = ½ω + S for a symmetric S on the basis of V."""
    omega = space.omega
    half = space.ring.half
    r = omega.rank
    gram = tuple(tuple(half * omega.gram[i][j] + s_gram[i][j] for j in range(r)) for i in range(r))
    b = BilinearForm(space.module, gram)
    return cayley_param(space, Submodule.whole(space.module), b)


def transvection(space: SymplecticModule, u: Sequence[int], a: int) -> SpElement:
    """Element with V(1-g) = Ru and B_g(x, x) = a on the generator x of Ru."""
    x = Submodule.generated_by(space.module, [u])
    if x.is_trivial:
        return sp_identity(space)
    return cayley_param(space, x, BilinearForm(x.as_module(), ((a,),)))


def factorize(g: SpElement, x: Submodule, y: Submodule) -> Tuple[SpElement, SpElement]:
    """
    Split g = h * k along V(1-g) = X ⊕ Y with B_g(Y, X) = 0

    Returns:
        (h, k) with V(1-h) = X and V(1-k) = Y
    """
    space = g.space
    u = g.displacement
    if not x.intersection(y).is_trivial or not x.sum(y).equals(u):
        raise HypothesisError("X and Y do not form a direct decomposition of V(1-g)")
    one_minus = g.one_minus()
    omega = space.omega
    for yb in y.basis:
        pre = section(one_minus, yb)
        if any(omega.evaluate(pre, xb) for xb in x.basis):
            raise HypothesisError("B_g(Y, X) does not vanish")
    h = cayley_param(space, x, bg_on(g.hom, omega, x)) if not x.is_trivial else sp_identity(space)
    k = cayley_param(space, y, bg_on(g.hom, omega, y)) if not y.is_trivial else sp_identity(space)
    if h * k != g:
        raise HypothesisError("Factors do not reassemble the element")
    return h, k


def split_candidates(g: SpElement) -> List[Tuple[Submodule, Submodule]]:
    """Two-block splits of V(1-g) built around a self-paired pivot of B_g."""
    u = g.displacement
    zero = Submodule.zero(g.space.module)
    candidates = [(u, zero)]
    if u.is_trivial:
        return candidates
    b = bg_on(g.hom, g.space.omega, u)
    pivot = self_paired_pivot(b)
    if pivot is None:
        logger.debug("B_g has no self-paired pivot, only the trivial split is offered")
        return candidates
    line = Submodule.generated_by(b.module, [pivot])
    ambient = g.space.module
    x = Submodule.generated_by(ambient, [b.to_ambient(pivot)])
    for side in ("left", "right"):
        rest = perp(line, b, side, check=False)
        rest_ambient = Submodule.generated_by(ambient, [b.to_ambient(c) for c in rest.basis])
        if rest_ambient.is_trivial:
            continue
        # B(Y, X) = 0 needs the left perp of the pivot as Y, or the right perp as X
        candidates.append((x, rest_ambient) if side == "left" else (rest_ambient, x))
    return candidates


def _symmetric_perturbation(space: SymplecticModule, rng: np.random.Generator) -> List[List[int]]:
    m = space.ring.m
    divisors = space.module.divisors
    r = len(divisors)
    s = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            g = gcd(divisors[i], divisors[j])
            value = int(rng.integers(0, g)) * (m // g)
            s[i][j] = s[j][i] = value
    return s


def sp_random(
    space: SymplecticModule,
    seed: Optional[int] = None,
    steps: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> SpElement:
    """
    Product of ``steps`` Cayley elements with X = V and B = ½ω + S, S random symmetric

    Args:
        space: The symplectic module
        seed: Seed for a fresh generator, ignored when ``rng`` is given
        steps: Number of factors (Config.SAMPLE_STEPS by default)
        rng: Shared generator for drawing several elements

    Returns:
        A symplectic element, deterministic per seed
    """
    steps = Config.SAMPLE_STEPS if steps is None else steps
    if steps < 1:
        raise RejectedInputError(f"steps must be at least 1, got {steps}")
    if rng is None:
        rng = np.random.default_rng(Config.DEFAULT_SEED if seed is None else seed)
    result = sp_identity(space)
    for _ in range(steps):
        for attempt in range(Config.CAYLEY_RETRY_BUDGET):
            try:
                factor = cayley_from_symmetric(space, _symmetric_perturbation(space, rng))
                break
            except DegenerateFormError:
                logger.debug(f"Perturbation attempt {attempt + 1} gave a degenerate form, retrying")
        else:
            logger.warning(f"sp_random exhausted {Config.CAYLEY_RETRY_BUDGET} retries")
            raise HypothesisError("Retry budget exhausted without a non-degenerate perturbation")
        result = result * factor
    return result


def element_order(g: SpElement) -> int:
    """Multiplicative order: lcm of the orbit lengths of the basis vectors."""
    order = 1
    for b in g.space.module.standard_basis():
        length = 1
        v = g(b)
        while v != b:
            v = g(v)
            length += 1
            if length > g.space.order:
                raise RejectedInputError("Element is not invertible")
        order = lcm(order, length)
    return order


def enumerate_sp(space: SymplecticModule) -> List[SpElement]:
    """Every element of Sp(V) for small V, in lexicographic order of the image rows."""
    module = space.module
    if module.order > Config.MAX_SP_ENUMERATION:
        logger.warning(f"Sp enumeration on |V| = {module.order} refused")
        raise SizeGuardError(f"|V| = {module.order} exceeds the Sp enumeration guard {Config.MAX_SP_ENUMERATION}")
    omega = space.omega
    elements = list(module.elements())
    candidates = [
        [v for v in elements if all((d * a) % c == 0 for a, c in zip(v, module.divisors))]
        for d in module.divisors
    ]
    found: List[SpElement] = []
    rows: List[Element] = []

    def extend(i: int) -> None:
        if i == module.rank:
            found.append(SpElement(ModuleHom(module, module, tuple(rows)), space))
            return
        for v in candidates[i]:
            if all(omega.evaluate(rows[j], v) == omega.gram[j][i] for j in range(i)):
                rows.append(v)
                extend(i + 1)
                rows.pop()

    extend(0)
    logger.info(f"Enumerated {len(found)} symplectic elements on |V| = {module.order}")
    return found


def hyperbolic_frame(space: SymplecticModule) -> Frame:
    """Hyperbolic pairs (e_i, f_i, d_i) with ω(e_i, f_j) = δ_ij d_i."""
    return orth_split(space.omega)


def dft_element(space: SymplecticModule) -> SpElement:
    """e_i -> f_i and f_i -> -e_i in the hyperbolic frame, so g² = -1."""
    rows = []
    for v in space.module.standard_basis():
        a, b = space.frame_coordinates(v)
        rows.append(space.frame_vector([-x for x in b], a))
    return SpElement(ModuleHom(space.module, space.module, tuple(rows)), space)


def restrict_space(space: SymplecticModule, x: Submodule) -> SymplecticModule:
    """X with the restriction of ω, as a symplectic module on its own basis."""
    if x.ambient != space.module:
        raise RejectedInputError("Submodule does not live in the symplectic module")
    restricted = restrict_form(space.omega, x)
    return SymplecticModule(x.as_module(), BilinearForm(x.as_module(), restricted.gram))


def assemble_block_element(
    space: SymplecticModule, x1: Submodule, g1: SpElement, x2: Submodule, g2: SpElement
) -> SpElement:
    """The element acting as g1 on X1 and g2 on X2, for V = X1 ⊥ X2."""
    if x1.order * x2.order != space.order or not x1.intersection(x2).is_trivial:
        raise RejectedInputError("Blocks do not decompose V")
    if g1.space.module.divisors != x1.orders or g2.space.module.divisors != x2.orders:
        raise RejectedInputError("Block elements do not match the block bases")
    both = Submodule(space.module, x1.basis + x2.basis, x1.orders + x2.orders)
    r1 = x1.rank
    rows = []
    for v in space.module.standard_basis():
        c = both.coordinates(v)
        left = x1.element_from_coordinates(g1(c[:r1])) if r1 else space.module.zero
        right = x2.element_from_coordinates(g2(c[r1:])) if x2.rank else space.module.zero
        rows.append(space.module.add(left, right))
    return SpElement(ModuleHom(space.module, space.module, tuple(rows)), space)
