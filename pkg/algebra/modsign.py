"""
Parity of the permutation an automorphism induces on a finite module.

perm_sign_direct walks the cycles. perm_sign_fast filters the module through
the chain X ⊇ pX for the primes p dividing its exponent and multiplies the
Jacobi symbols of the layer determinants.
"""

import logging
from typing import List, Optional

import numpy as np
from sympy import Matrix

from algebra.bforms import BilinearForm, relating_automorphism
from algebra.errors import RejectedInputError, SizeGuardError
from algebra.finmod import ModuleHom, Submodule, coordinate_grid, hom_scalar, restrict_hom
from algebra.zmod import jacobi
from config import Config

logger = logging.getLogger(__name__)


def _on_submodule(alpha: ModuleHom, x: Optional[Submodule]) -> ModuleHom:
    if not alpha.is_endomorphism:
        raise RejectedInputError("Permutation signs need an endomorphism")
    if x is None or (x.ambient == alpha.dom and x.basis == tuple(alpha.dom.standard_basis())):
        return alpha
    return restrict_hom(alpha, x)


def _image_indices(alpha: ModuleHom) -> np.ndarray:
    module = alpha.dom
    coords = coordinate_grid(module.divisors)
    if module.rank == 0:
        return np.zeros(1, dtype=np.int64)
    mat = np.array(alpha.matrix, dtype=np.int64)
    images = (coords @ mat) % np.array(module.divisors, dtype=np.int64)
    return module.index_array(images)


def perm_sign_direct(alpha: ModuleHom, x: Optional[Submodule] = None) -> int:
    """Sign from an explicit cycle decomposition over the elements of ``x``."""
    hom = _on_submodule(alpha, x)
    size = hom.dom.order
    if size > Config.MAX_DIRECT_SIGN:
        raise SizeGuardError(f"Direct sign on {size} elements exceeds guard {Config.MAX_DIRECT_SIGN}")
    target = _image_indices(hom)
    if len(np.unique(target)) != size:
        raise RejectedInputError("Map is not invertible on the submodule")
    seen = np.zeros(size, dtype=bool)
    cycles = 0
    for start in range(size):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = int(target[i])
    return 1 if (size - cycles) % 2 == 0 else -1


def _smallest_prime(divisors) -> int:
    n = min(divisors)
    p = 3
    while n % p:
        p += 2
    return p


def perm_sign_fast(alpha: ModuleHom, x: Optional[Submodule] = None) -> int:
    """
    Sign through prime layers: sign(α) = sign(α on X/pX) · sign(α on pX)

    Args:
        alpha: Automorphism of the ambient module
        x: Invariant submodule (the whole module when omitted)

    Returns:
        +1 or -1
    """
    hom = _on_submodule(alpha, x)
    divisors: List[int] = list(hom.dom.divisors)
    mat: List[List[int]] = [list(r) for r in hom.matrix]
    sign = 1
    while divisors:
        p = _smallest_prime(divisors)
        layer = [i for i, d in enumerate(divisors) if d % p == 0]
        det = int(Matrix([[mat[i][j] for j in layer] for i in layer]).det()) % p
        if det == 0:
            raise RejectedInputError("Map is not invertible on the submodule")
        sign *= jacobi(det, p)
        inside = set(layer)
        new_mat = []
        for i in range(len(divisors)):
            row = []
            for j in range(len(divisors)):
                a = mat[i][j]
                if i in inside and j not in inside:
                    a *= p
                elif i not in inside and j in inside:
                    a //= p
                row.append(a)
            new_mat.append(row)
        new_div = [d // p if i in inside else d for i, d in enumerate(divisors)]
        keep = [i for i, d in enumerate(new_div) if d > 1]
        divisors = [new_div[i] for i in keep]
        mat = [[new_mat[i][j] % new_div[j] for j in keep] for i in keep]
    return sign


def sign_ratio(q: BilinearForm, b: BilinearForm) -> int:
    return perm_sign_fast(relating_automorphism(q, b))


def scalar_sign(x: Submodule, s: int) -> int:
    """Parity of multiplication by the unit ``s`` on ``x``."""
    ring = x.ambient.ring
    if not ring.is_unit(s):
        raise RejectedInputError(f"{s} is not a unit mod {ring.m}")
    module = x.as_module()
    return perm_sign_fast(hom_scalar(module, s))


def half_set_sign(alpha: ModuleHom, x: Optional[Submodule] = None) -> int:
    """
    Gauss–Schering parity (-1)^{|Pα ∩ -P|}, where P holds the nonzero elements
    whose first nonzero coordinate is below half its cyclic order.
    """
    hom = _on_submodule(alpha, x)
    module = hom.dom
    if module.order > Config.MAX_DIRECT_SIGN:
        raise SizeGuardError(f"Half-set sign on {module.order} elements exceeds guard {Config.MAX_DIRECT_SIGN}")
    coords = coordinate_grid(module.divisors)
    if module.rank == 0:
        return 1
    divisors = np.array(module.divisors, dtype=np.int64)
    images = (coords @ np.array(hom.matrix, dtype=np.int64)) % divisors
    in_half = _in_half_set(coords, divisors)
    images_negated_in_half = _in_half_set((-images) % divisors, divisors)
    count = int(np.count_nonzero(in_half & images_negated_in_half))
    return 1 if count % 2 == 0 else -1


def _in_half_set(coords: np.ndarray, divisors: np.ndarray) -> np.ndarray:
    nonzero = coords != 0
    has_nonzero = nonzero.any(axis=1)
    first = np.argmax(nonzero, axis=1)
    rows = np.arange(len(coords))
    lead = coords[rows, first]
    return has_nonzero & (2 * lead < divisors[first])

