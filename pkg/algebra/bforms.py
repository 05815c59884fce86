"""
Z/m-valued bilinear forms on finite modules.

A form lives on an intrinsic module ⊕ Z/e_i (the basis orders of its domain)
and optionally carries an embedding of that basis into an ambient module.
This is how ω, the displacement form B_g, its symmetric part Q_g and the
companion forms q are all represented.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix

from algebra.errors import DegenerateFormError, NotSymplecticError, RejectedInputError
from algebra.finmod import (
    Element,
    FinModule,
    ModuleHom,
    Submodule,
    hom_add,
    hom_apply,
    hom_identity,
    hom_sub,
    image,
    kernel,
    perp,
    section,
)
from algebra.smith import IntegerSolver
from algebra.zmod import Ring, crt_idempotents, jacobi, p_adic_valuation

logger = logging.getLogger(__name__)

Gram = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class BilinearForm:
    module: FinModule
    gram: Gram
    ambient: Optional[FinModule] = None
    embedding: Optional[Tuple[Element, ...]] = None

    def __post_init__(self):
        m = self.module.ring.m
        r = self.module.rank
        gram = tuple(tuple(int(x) % m for x in row) for row in self.gram)
        if len(gram) != r or any(len(row) != r for row in gram):
            raise RejectedInputError(f"Gram matrix must be {r}x{r}")
        e = self.module.divisors
        for i in range(r):
            for j in range(r):
                if (e[i] * gram[i][j]) % m or (e[j] * gram[i][j]) % m:
                    raise RejectedInputError(
                        f"Gram entry ({i},{j}) = {gram[i][j]} is not well defined on Z/{e[i]} x Z/{e[j]}"
                    )
        object.__setattr__(self, "gram", gram)
        if self.embedding is not None:
            if self.ambient is None or len(self.embedding) != r:
                raise RejectedInputError("Embedding needs an ambient module and one image per basis element")
            object.__setattr__(self, "embedding", tuple(self.ambient.reduce(v) for v in self.embedding))

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def rank(self) -> int:
        return self.module.rank

    @cached_property
    def symmetric(self) -> bool:
        r = self.rank
        return all(self.gram[i][j] == self.gram[j][i] for i in range(r) for j in range(r))

    @cached_property
    def alternating(self) -> bool:
        m = self.ring.m
        r = self.rank
        return all(self.gram[i][i] == 0 for i in range(r)) and all(
            (self.gram[i][j] + self.gram[j][i]) % m == 0 for i in range(r) for j in range(r)
        )

    @cached_property
    def domain(self) -> Submodule:
        """The domain as a submodule of the ambient module (or of itself)."""
        if self.embedding is None:
            return Submodule.whole(self.module)
        return Submodule(self.ambient, self.embedding, self.module.divisors)

    def evaluate(self, x: Sequence[int], y: Sequence[int]) -> int:
        r = self.rank
        total = 0
        for i in range(r):
            if x[i]:
                row = self.gram[i]
                total += x[i] * sum(row[j] * y[j] for j in range(r))
        return total % self.ring.m

    def evaluate_ambient(self, x: Sequence[int], y: Sequence[int]) -> int:
        dom = self.domain
        return self.evaluate(dom.coordinates(x), dom.coordinates(y))

    def to_ambient(self, c: Sequence[int]) -> Element:
        if self.embedding is None:
            return self.module.reduce(c)
        return self.ambient.combine(c, self.embedding)

    def with_gram(self, gram) -> "BilinearForm":
        return BilinearForm(self.module, gram, self.ambient, self.embedding)

    def negated(self) -> "BilinearForm":
        return self.with_gram(tuple(tuple(-x for x in row) for row in self.gram))

    def scaled(self, s: int) -> "BilinearForm":
        return self.with_gram(tuple(tuple(s * x for x in row) for row in self.gram))

    def transposed(self) -> "BilinearForm":
        return self.with_gram(tuple(zip(*self.gram)) if self.gram else ())

    def symmetric_part(self) -> "BilinearForm":
        half = self.ring.half
        r = self.rank
        return self.with_gram(
            tuple(tuple(half * (self.gram[i][j] + self.gram[j][i]) for j in range(r)) for i in range(r))
        )

    def __repr__(self) -> str:
        return f"BilinearForm(orders={self.module.divisors}, gram={self.gram})"


def form_from_gram(module: FinModule, gram) -> BilinearForm:
    return BilinearForm(module, tuple(tuple(row) for row in gram))


def omega_hyperbolic(ring: Ring, divisors: Sequence[int]) -> Tuple[FinModule, BilinearForm]:
    """
    Hyperbolic module ⊕ Z/d_i e_i ⊕ ⊕ Z/d_i f_i with ω(e_i, f_i) = m/d_i

    Args:
        ring: The coefficient ring
        divisors: d_1, ..., d_k, each dividing m

    Returns:
        (V, ω)
    """
    for d in divisors:
        if d <= 1 or ring.m % d:
            raise RejectedInputError(f"Hyperbolic divisor {d} must be > 1 and divide m = {ring.m}")
    k = len(divisors)
    module = FinModule(ring, tuple(divisors) + tuple(divisors))
    gram = [[0] * (2 * k) for _ in range(2 * k)]
    for i, d in enumerate(divisors):
        gram[i][k + i] = ring.m // d
        gram[k + i][i] = -(ring.m // d)
    return module, form_from_gram(module, gram)


def form_eval(form: BilinearForm, x: Sequence[int], y: Sequence[int]) -> int:
    x = form.module.check(x)
    y = form.module.check(y)
    return form.evaluate(x, y)


def is_nondegenerate(form: BilinearForm) -> bool:
    whole = Submodule.whole(form.module)
    right = perp(whole, form, "right", check=False)
    left = perp(whole, form, "left", check=False)
    return right.is_trivial and left.is_trivial


def restrict_form(form: BilinearForm, y: Submodule) -> BilinearForm:
    """``form`` on the basis of a submodule ``y`` of its domain module."""
    if y.ambient != form.module:
        raise RejectedInputError("restrict_form needs a submodule of the form's domain")
    gram = tuple(tuple(form.evaluate(a, b) for b in y.basis) for a in y.basis)
    ambient = form.ambient if form.ambient is not None else form.module
    embedding = tuple(form.to_ambient(a) for a in y.basis)
    return BilinearForm(y.as_module(), gram, ambient, embedding)


def preserves_form(h: ModuleHom, omega: BilinearForm) -> bool:
    """ω(v h, w h) = ω(v, w) on all pairs of basis vectors."""
    if h.dom != omega.module or h.cod != omega.module:
        return False
    images = [hom_apply(h, b) for b in omega.module.standard_basis()]
    r = omega.rank
    return all(omega.evaluate(images[i], images[j]) == omega.gram[i][j] for i in range(r) for j in range(r))


def _check_symplectic(g: ModuleHom, omega: BilinearForm) -> None:
    if not preserves_form(g, omega):
        raise NotSymplecticError("Homomorphism does not preserve the symplectic form")


def bg_on(g: ModuleHom, omega: BilinearForm, x: Submodule) -> BilinearForm:
    """B_g on a submodule ``x`` of V(1-g): B_g(x_i, x_j) = ω(v_i, x_j) with v_i(1-g) = x_i."""
    one_minus = hom_sub(hom_identity(omega.module), g)
    sections = [section(one_minus, b) for b in x.basis]
    gram = tuple(tuple(omega.evaluate(s, b) for b in x.basis) for s in sections)
    return BilinearForm(x.as_module(), gram, omega.module, x.basis)


def bg_form(g: ModuleHom, omega: BilinearForm) -> BilinearForm:
    """The non-degenerate displacement form on X = V(1-g)."""
    _check_symplectic(g, omega)
    x = image(hom_sub(hom_identity(omega.module), g))
    return bg_on(g, omega, x)


def qg_radical(q_form: BilinearForm) -> Submodule:
    """Radical of a symmetric form, mapped into its ambient module."""
    rad = perp(Submodule.whole(q_form.module), q_form, "right", check=False)
    ambient = q_form.ambient if q_form.ambient is not None else q_form.module
    return Submodule.generated_by(ambient, [q_form.to_ambient(c) for c in rad.basis])


def qg_form(g: ModuleHom, omega: BilinearForm, verify: bool = True) -> BilinearForm:
    """
    Symmetric part Q_g of B_g

    Args:
        g: Symplectic endomorphism of V
        omega: The symplectic form
        verify: Check that the radical of Q_g equals Ker(1+g)

    Returns:
        Q_g on the basis of V(1-g)
    """
    q = bg_form(g, omega).symmetric_part()
    if verify:
        expected = kernel(hom_add(hom_identity(omega.module), g))
        radical = qg_radical(q)
        if not radical.equals(expected):
            logger.error(f"Radical of Q_g has order {radical.order}, Ker(1+g) has order {expected.order}")
            raise DegenerateFormError("Radical of Q_g differs from Ker(1+g)")
    return q


def _prime_cap(m: int, p: int) -> int:
    return p_adic_valuation(m, p, m)


def _valuation(value: int, m: int, p: int) -> int:
    cap = _prime_cap(m, p)
    return p_adic_valuation(value % m, p, cap)


def _combine(module: FinModule, choice: dict, idempotents: dict) -> Element:
    vectors = list(choice.values())
    if all(v == vectors[0] for v in vectors):
        return module.reduce(vectors[0])
    total = module.zero
    for p, vec in choice.items():
        total = module.add(total, module.scale(idempotents[p], vec))
    return total


def _pivot_pair(form: BilinearForm, left: Sequence[Element], right: Sequence[Element]) -> Tuple[Element, Element]:
    ring = form.ring
    m = ring.m
    idempotents = crt_idempotents(ring)
    left_choice, right_choice = {}, {}
    for p in ring.primes():
        best = None
        for i, a in enumerate(left):
            for j, b in enumerate(right):
                v = _valuation(form.evaluate(a, b), m, p)
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None or best[0] >= _prime_cap(m, p):
            continue
        left_choice[p] = left[best[1]]
        right_choice[p] = right[best[2]]
    if not left_choice:
        raise DegenerateFormError("Form vanishes on the remaining submodule")
    return _combine(form.module, left_choice, idempotents), _combine(form.module, right_choice, idempotents)


def _self_paired(form: BilinearForm, basis: Sequence[Element]) -> Optional[Element]:
    """u with R·B(u,u) equal to the ideal generated by B on span(basis), if one exists."""
    ring = form.ring
    m = ring.m
    module = form.module
    idempotents = crt_idempotents(ring)
    candidates = list(basis) + [
        module.add(basis[i], basis[j]) for i in range(len(basis)) for j in range(i + 1, len(basis))
    ]
    choice = {}
    for p in ring.primes():
        target = min(
            (_valuation(form.evaluate(a, b), m, p) for a in basis for b in basis),
            default=_prime_cap(m, p),
        )
        if target >= _prime_cap(m, p):
            continue
        best = None
        for c in candidates:
            v = _valuation(form.evaluate(c, c), m, p)
            if best is None or v < best[0]:
                best = (v, c)
        if best[0] > target:
            return None
        choice[p] = best[1]
    if not choice:
        return None
    return _combine(module, choice, idempotents)


def self_paired_pivot(form: BilinearForm) -> Optional[Element]:
    return _self_paired(form, form.module.standard_basis())


def orth_split(form: BilinearForm) -> List[Tuple[Element, Element, int]]:
    """
    Dual-basis pairs (u_i, w_i, d_i) with B(u_i, w_j) = δ_ij d_i and Rd_1 ⊇ Rd_2 ⊇ ...

    Alternating forms give hyperbolic pairs (e_i, f_i), symmetric forms give
    self-paired vectors u_i = w_i, other forms split left and right sides
    independently. Elements are in coordinates of ``form.module``.
    """
    if not is_nondegenerate(form):
        raise DegenerateFormError("orth_split needs a non-degenerate form")
    module = form.module
    pairs: List[Tuple[Element, Element, int]] = []
    if form.alternating:
        y = Submodule.whole(module)
        while not y.is_trivial:
            u, w = _pivot_pair(form, y.basis, y.basis)
            pairs.append((u, w, form.evaluate(u, w)))
            span = Submodule.generated_by(module, [u, w])
            y = y.intersection(perp(span, form, "right", check=False))
    elif form.symmetric:
        y = Submodule.whole(module)
        while not y.is_trivial:
            u = _self_paired(form, y.basis)
            if u is None:
                raise DegenerateFormError("No self-paired pivot in the remaining submodule")
            pairs.append((u, u, form.evaluate(u, u)))
            y = y.intersection(perp(Submodule.generated_by(module, [u]), form, "right", check=False))
    else:
        left = Submodule.whole(module)
        right = Submodule.whole(module)
        while not left.is_trivial:
            u, w = _pivot_pair(form, left.basis, right.basis)
            pairs.append((u, w, form.evaluate(u, w)))
            left = left.intersection(perp(Submodule.generated_by(module, [w]), form, "left", check=False))
            right = right.intersection(perp(Submodule.generated_by(module, [u]), form, "right", check=False))
        if not right.is_trivial:
            raise DegenerateFormError("Left and right splittings have different lengths")
    logger.debug(f"orth_split produced pairings {[d for _, _, d in pairs]}")
    return pairs


def symmetric_q(x: Submodule) -> BilinearForm:
    """Canonical companion form q(x_i, x_j) = δ_ij · m/e_i on the Smith basis of ``x``."""
    m = x.ambient.ring.m
    r = x.rank
    gram = tuple(tuple(m // x.orders[i] if i == j else 0 for j in range(r)) for i in range(r))
    return BilinearForm(x.as_module(), gram, x.ambient, x.basis)


def relating_automorphism(q: BilinearForm, b: BilinearForm) -> ModuleHom:
    """The unique α on the common domain with q(x, y) = B(x α, y)."""
    if q.module != b.module:
        raise RejectedInputError("Forms live on different domains")
    module = q.module
    r = module.rank
    m = module.ring.m
    lifted = [list(row) for row in b.gram] + [[m if i == j else 0 for j in range(r)] for i in range(r)]
    solver = IntegerSolver(lifted, r)
    rows = []
    for i in range(r):
        y = solver.solve(list(q.gram[i]))
        if y is None:
            raise DegenerateFormError("No automorphism relates the two forms, the second one is degenerate")
        rows.append(tuple(c % e for c, e in zip(y[:r], module.divisors)))
    alpha = ModuleHom(module, module, tuple(rows))
    basis = module.standard_basis()
    images = [hom_apply(alpha, v) for v in basis]
    for i in range(r):
        for j in range(r):
            if b.evaluate(images[i], basis[j]) != q.gram[i][j]:
                raise DegenerateFormError("Relating automorphism fails on a basis pair")
    if not kernel(alpha).is_trivial:
        raise DegenerateFormError("Relating map is not invertible, the first form is degenerate")
    return alpha


def form_direct_sum(bx: BilinearForm, by: BilinearForm) -> BilinearForm:
    """Block-diagonal sum; forms on a shared ambient module must have independent domains."""
    if bx.ring != by.ring:
        raise RejectedInputError("Forms live over different rings")
    module = FinModule(bx.ring, bx.module.divisors + by.module.divisors)
    rx, ry = bx.rank, by.rank
    gram = [[0] * (rx + ry) for _ in range(rx + ry)]
    for i in range(rx):
        for j in range(rx):
            gram[i][j] = bx.gram[i][j]
    for i in range(ry):
        for j in range(ry):
            gram[rx + i][rx + j] = by.gram[i][j]
    if bx.embedding is None and by.embedding is None:
        return BilinearForm(module, tuple(map(tuple, gram)))
    if bx.ambient is None or by.ambient is None or bx.ambient != by.ambient:
        raise RejectedInputError("Direct sum needs both forms embedded in the same ambient module")
    if not bx.domain.intersection(by.domain).is_trivial:
        raise RejectedInputError("Domains of the summands overlap")
    return BilinearForm(module, tuple(map(tuple, gram)), bx.ambient, bx.embedding + by.embedding)


def gram_determinant(form: BilinearForm) -> int:
    if form.rank == 0:
        return 1
    return int(Matrix([list(r) for r in form.gram]).det()) % form.ring.m


def disc_sign(form: BilinearForm) -> int:
    """Quadratic character of the discriminant, for forms over a prime field."""
    m = form.ring.m
    if len(form.ring.primes()) != 1 or form.ring.primes()[0] != m:
        raise RejectedInputError("Discriminant signs are defined here only for prime m")
    return jacobi(gram_determinant(form), m)
