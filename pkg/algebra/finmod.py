"""
Finite Z/m-modules presented by divisor lists, their homomorphisms (row-vector
convention, v -> v·M), and exact kernels, images, sections and annihilators
computed from Smith normal forms of the lifted presentation [M; diag(c)].
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm, prod
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from algebra.errors import (
    DegenerateFormError,
    NoPreimageError,
    RejectedInputError,
    SizeGuardError,
)
from algebra.smith import IntegerSolver, row_times_matrix, smith_normal_form
from algebra.zmod import Ring
from config import Config

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


def _guard(size: int, limit: int, what: str) -> None:
    if size > limit:
        logger.warning(f"Refusing to enumerate {what}: {size} elements exceeds guard {limit}")
        raise SizeGuardError(f"{what} has {size} elements, above the enumeration guard {limit}")


@dataclass(frozen=True)
class FinModule:
    """⊕ Z/d_i over Z/m, elements are coordinate tuples with 0 <= a_i < d_i."""

    ring: Ring
    divisors: Tuple[int, ...]

    def __post_init__(self):
        divisors = tuple(int(d) for d in self.divisors)
        for d in divisors:
            if d <= 1 or self.ring.m % d:
                raise RejectedInputError(f"Divisor {d} must be > 1 and divide m = {self.ring.m}")
        object.__setattr__(self, "divisors", divisors)

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def order(self) -> int:
        return prod(self.divisors)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def canonical(self) -> "FinModule":
        return FinModule(self.ring, tuple(sorted(self.divisors)))

    def reduce(self, v: Sequence[int]) -> Element:
        if len(v) != self.rank:
            raise RejectedInputError(f"Element {tuple(v)} has length {len(v)}, module rank is {self.rank}")
        return tuple(int(a) % d for a, d in zip(v, self.divisors))

    def check(self, v: Sequence[int]) -> Element:
        """Validate an element given in reduced coordinates."""
        if len(v) != self.rank:
            raise RejectedInputError(f"Element {tuple(v)} has length {len(v)}, module rank is {self.rank}")
        for a, d in zip(v, self.divisors):
            if not 0 <= a < d:
                raise RejectedInputError(f"Coordinate {a} out of range for Z/{d}")
        return tuple(int(a) for a in v)

    def add(self, v: Sequence[int], w: Sequence[int]) -> Element:
        return tuple((a + b) % d for a, b, d in zip(v, w, self.divisors))

    def sub(self, v: Sequence[int], w: Sequence[int]) -> Element:
        return tuple((a - b) % d for a, b, d in zip(v, w, self.divisors))

    def neg(self, v: Sequence[int]) -> Element:
        return tuple((-a) % d for a, d in zip(v, self.divisors))

    def scale(self, s: int, v: Sequence[int]) -> Element:
        return tuple((s * a) % d for a, d in zip(v, self.divisors))

    def combine(self, coeffs: Sequence[int], elements: Sequence[Sequence[int]]) -> Element:
        return self.reduce(row_times_matrix(coeffs, [list(e) for e in elements]) if elements else self.zero)

    def standard_basis(self) -> List[Element]:
        return [tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank)]

    def element_order(self, v: Sequence[int]) -> int:
        order = 1
        for a, d in zip(v, self.divisors):
            order = lcm(order, d // gcd(a, d))
        return order

    def index(self, v: Sequence[int]) -> int:
        idx = 0
        for a, d in zip(v, self.divisors):
            idx = idx * d + a
        return idx

    def element(self, idx: int) -> Element:
        coords = []
        for d in reversed(self.divisors):
            idx, a = divmod(idx, d)
            coords.append(a)
        return tuple(reversed(coords))

    def elements(self) -> Iterator[Element]:
        _guard(self.order, Config.MAX_ENUMERATION, f"module {self.divisors}")
        for idx in range(self.order):
            yield self.element(idx)

    def element_array(self) -> np.ndarray:
        """All elements as an (order, rank) int64 array in index order."""
        _guard(self.order, Config.MAX_ENUMERATION, f"module {self.divisors}")
        return coordinate_grid(self.divisors)

    def index_array(self, coords: np.ndarray) -> np.ndarray:
        if self.rank == 0:
            return np.zeros(len(coords), dtype=np.int64)
        return np.ravel_multi_index(tuple(coords.T), self.divisors)


def coordinate_grid(orders: Sequence[int]) -> np.ndarray:
    size = prod(orders)
    if not orders:
        return np.zeros((1, 0), dtype=np.int64)
    return np.stack(np.unravel_index(np.arange(size, dtype=np.int64), tuple(orders)), axis=1).astype(np.int64)


@dataclass(frozen=True)
class ModuleHom:
    """Homomorphism dom -> cod; generator i of dom maps to Σ_j M_ij · generator j of cod."""

    dom: FinModule
    cod: FinModule
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.dom.ring != self.cod.ring:
            raise RejectedInputError("Domain and codomain live over different rings")
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(rows) != self.dom.rank or any(len(row) != self.cod.rank for row in rows):
            raise RejectedInputError(
                f"Matrix shape does not match {self.dom.rank}x{self.cod.rank} for dom {self.dom.divisors} and cod {self.cod.divisors}"
            )
        rows = tuple(tuple(x % c for x, c in zip(row, self.cod.divisors)) for row in rows)
        for i, d in enumerate(self.dom.divisors):
            for j, c in enumerate(self.cod.divisors):
                if (d * rows[i][j]) % c:
                    raise RejectedInputError(
                        f"Entry ({i},{j}) = {rows[i][j]} is incompatible with orders {d} -> {c}"
                    )
        object.__setattr__(self, "matrix", rows)

    def __call__(self, v: Sequence[int]) -> Element:
        return hom_apply(self, v)

    @property
    def is_endomorphism(self) -> bool:
        return self.dom == self.cod

    @property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return self.matrix

    @cached_property
    def _solver(self) -> IntegerSolver:
        lifted = [list(row) for row in self.matrix] + [
            [c if i == j else 0 for j in range(self.cod.rank)] for i, c in enumerate(self.cod.divisors)
        ]
        return IntegerSolver(lifted, self.cod.rank)

    def rows_as_lists(self) -> List[List[int]]:
        return [list(row) for row in self.matrix]


def hom_apply(h: ModuleHom, v: Sequence[int]) -> Element:
    v = h.dom.check(v)
    return h.cod.reduce(row_times_matrix(v, h.rows_as_lists()) if h.dom.rank else h.cod.zero)


def hom_compose(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    """The map v -> (v f) g, i.e. apply ``f`` first."""
    if f.cod != g.dom:
        raise RejectedInputError(f"Cannot compose: codomain {f.cod.divisors} != domain {g.dom.divisors}")
    rows = [row_times_matrix(row, g.rows_as_lists()) if g.dom.rank else [0] * g.cod.rank for row in f.matrix]
    return ModuleHom(f.dom, g.cod, tuple(tuple(r) for r in rows))


def _same_shape(f: ModuleHom, g: ModuleHom) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise RejectedInputError("Homomorphisms have different domains or codomains")


def hom_add(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    _same_shape(f, g)
    return ModuleHom(f.dom, f.cod, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(f.matrix, g.matrix)))


def hom_sub(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    _same_shape(f, g)
    return ModuleHom(f.dom, f.cod, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(f.matrix, g.matrix)))


def hom_neg(f: ModuleHom) -> ModuleHom:
    return ModuleHom(f.dom, f.cod, tuple(tuple(-a for a in r) for r in f.matrix))


def hom_scalar(module: FinModule, s: int) -> ModuleHom:
    return ModuleHom(module, module, tuple(tuple(s if i == j else 0 for j in range(module.rank)) for i in range(module.rank)))


def hom_identity(module: FinModule) -> ModuleHom:
    return hom_scalar(module, 1)


def hom_power(h: ModuleHom, k: int) -> ModuleHom:
    if not h.is_endomorphism or k < 0:
        raise RejectedInputError("Powers need an endomorphism and a non-negative exponent")
    result = hom_identity(h.dom)
    base = h
    while k:
        if k & 1:
            result = hom_compose(result, base)
        base = hom_compose(base, base)
        k >>= 1
    return result


@dataclass(frozen=True, eq=False)
class Submodule:
    """A subgroup of ``ambient`` with basis elements of exact orders ``orders``."""

    ambient: FinModule
    basis: Tuple[Element, ...]
    orders: Tuple[int, ...]

    @classmethod
    def generated_by(cls, ambient: FinModule, generators: Sequence[Sequence[int]]) -> "Submodule":
        basis, orders = _structure(ambient, generators)
        return cls(ambient, basis, orders)

    @classmethod
    def whole(cls, ambient: FinModule) -> "Submodule":
        return cls(ambient, tuple(ambient.standard_basis()), ambient.divisors)

    @classmethod
    def zero(cls, ambient: FinModule) -> "Submodule":
        return cls(ambient, (), ())

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    @cached_property
    def _solver(self) -> IntegerSolver:
        lifted = [list(b) for b in self.basis] + [
            [c if i == j else 0 for j in range(self.ambient.rank)] for i, c in enumerate(self.ambient.divisors)
        ]
        return IntegerSolver(lifted, self.ambient.rank)

    def contains(self, x: Sequence[int]) -> bool:
        return self._solver.solve(list(self.ambient.reduce(x))) is not None

    def coordinates(self, x: Sequence[int]) -> Element:
        """Coordinates of ``x`` on the basis, reduced mod the basis orders."""
        y = self._solver.solve(list(self.ambient.reduce(x)))
        if y is None:
            raise NoPreimageError(f"{tuple(x)} is not in the submodule")
        return tuple(c % e for c, e in zip(y[: self.rank], self.orders))

    def element_from_coordinates(self, coords: Sequence[int]) -> Element:
        return self.ambient.combine(coords, self.basis)

    def as_module(self) -> FinModule:
        return FinModule(self.ambient.ring, self.orders)

    def embedding(self) -> ModuleHom:
        return ModuleHom(self.as_module(), self.ambient, self.basis)

    def coordinate_array(self) -> np.ndarray:
        _guard(self.order, Config.MAX_ENUMERATION, "submodule")
        return coordinate_grid(self.orders)

    def element_array(self) -> np.ndarray:
        """Ambient coordinates of all elements, in coordinate-index order."""
        coords = self.coordinate_array()
        if not self.basis:
            return np.zeros((1, self.ambient.rank), dtype=np.int64)
        basis = np.array(self.basis, dtype=np.int64)
        divisors = np.array(self.ambient.divisors, dtype=np.int64)
        return (coords @ basis) % divisors

    def elements(self) -> Iterator[Element]:
        for row in self.element_array():
            yield tuple(int(a) for a in row)

    def is_subset_of(self, other: "Submodule") -> bool:
        return all(other.contains(b) for b in self.basis)

    def equals(self, other: "Submodule") -> bool:
        return (
            self.ambient == other.ambient
            and self.order == other.order
            and self.is_subset_of(other)
        )

    def sum(self, other: "Submodule") -> "Submodule":
        return Submodule.generated_by(self.ambient, list(self.basis) + list(other.basis))

    def intersection(self, other: "Submodule") -> "Submodule":
        if self.is_trivial or other.is_trivial:
            return Submodule.zero(self.ambient)
        pair = FinModule(self.ambient.ring, self.orders + other.orders)
        rows = list(self.basis) + [self.ambient.neg(b) for b in other.basis]
        relations = kernel(ModuleHom(pair, self.ambient, tuple(rows)))
        gens = [self.ambient.combine(c[: self.rank], self.basis) for c in relations.basis]
        return Submodule.generated_by(self.ambient, gens)

    def __repr__(self) -> str:
        return f"Submodule(order={self.order}, orders={self.orders}, basis={self.basis})"


def _structure(ambient: FinModule, generators: Sequence[Sequence[int]]) -> Tuple[Tuple[Element, ...], Tuple[int, ...]]:
    gens = [list(ambient.reduce(g)) for g in generators]
    gens = [g for g in gens if any(g)]
    if not gens:
        return (), ()
    k = len(gens)
    lifted = gens + [[c if i == j else 0 for j in range(ambient.rank)] for i, c in enumerate(ambient.divisors)]
    relations = [row[:k] for row in IntegerSolver(lifted, ambient.rank).left_kernel()]
    _, d, _, vinv = smith_normal_form(relations, k)
    diagonal = [abs(d[i][i]) for i in range(min(len(d), k))]
    basis, orders = [], []
    for i in range(k):
        e = diagonal[i] if i < len(diagonal) else 0
        if e == 1:
            continue
        if e == 0:
            raise RejectedInputError("Generators span an infinite group, presentation is inconsistent")
        basis.append(ambient.reduce(row_times_matrix(vinv[i], gens)))
        orders.append(e)
    return tuple(basis), tuple(orders)


def kernel(h: ModuleHom) -> Submodule:
    """Exact kernel of ``h`` from the left kernel of the lifted presentation."""
    k = h.dom.rank
    gens = [row[:k] for row in h._solver.left_kernel()]
    return Submodule.generated_by(h.dom, gens)


def image(h: ModuleHom) -> Submodule:
    return Submodule.generated_by(h.cod, h.matrix)


def section(h: ModuleHom, x: Sequence[int]) -> Element:
    """Some v with v·h = x; deterministic because the decomposition is cached on ``h``."""
    x = h.cod.check(x)
    y = h._solver.solve(list(x))
    if y is None:
        raise NoPreimageError(f"{x} has no preimage under the homomorphism")
    return h.dom.reduce(y[: h.dom.rank])


def smith_structure(x: Submodule) -> Tuple[Tuple[Element, ...], Tuple[int, ...]]:
    return x.basis, x.orders


def restrict_hom(h: ModuleHom, x: Submodule) -> ModuleHom:
    """The endomorphism induced by ``h`` on an invariant submodule, on the basis of ``x``."""
    if h.dom != x.ambient or h.cod != x.ambient:
        raise RejectedInputError("restrict_hom needs an endomorphism of the submodule's ambient module")
    try:
        rows = tuple(x.coordinates(hom_apply(h, b)) for b in x.basis)
    except NoPreimageError as exc:
        raise RejectedInputError("Submodule is not invariant under the homomorphism") from exc
    module = x.as_module()
    return ModuleHom(module, module, rows)


def _annihilator_hom(x: Submodule, form, side: str) -> ModuleHom:
    module = form.module
    if x.ambient != module:
        raise RejectedInputError("Submodule does not live in the form's domain")
    m = module.ring.m
    gram = [list(r) for r in form.gram]
    columns = []
    for b in x.basis:
        if side == "right":
            col = row_times_matrix(b, gram) if gram else []
        elif side == "left":
            col = [sum(gram[i][j] * b[j] for j in range(module.rank)) for i in range(module.rank)]
        else:
            raise RejectedInputError(f"Unknown side {side!r}, expected 'left' or 'right'")
        columns.append([c % m for c in col])
    cod = FinModule(module.ring, (m,) * len(columns))
    matrix = tuple(tuple(columns[j][i] for j in range(len(columns))) for i in range(module.rank))
    return ModuleHom(module, cod, matrix)


def perp(x: Submodule, form, side: str = "right", check: bool = True) -> Submodule:
    """
    Annihilator of ``x`` under a bilinear form on its ambient module

    Args:
        x: Submodule of ``form.module``
        form: Bilinear form (gram on the module basis)
        side: "right" gives {w : B(x, w) = 0}, "left" gives {u : B(u, x) = 0}
        check: Flag a degenerate form when |X|·|perp| != |module|

    Returns:
        The annihilator as a Submodule
    """
    result = kernel(_annihilator_hom(x, form, side))
    if check and x.order * result.order != form.module.order:
        raise DegenerateFormError(
            f"|X|·|perp(X)| = {x.order * result.order} differs from |U| = {form.module.order}, form is degenerate"
        )
    return result
