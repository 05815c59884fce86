"""
Normalized quadratic Gauss sums of symmetric non-degenerate forms, snapped
to exact fourth roots of unity, with Schur-matrix consistency checks.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Union

import numpy as np
from sympy import factorint

from algebra.bforms import BilinearForm, orth_split
from algebra.errors import RejectedInputError, SizeGuardError, SnapError
from algebra.finmod import coordinate_grid
from algebra.zmod import AdditiveCharacter
from config import Config

logger = logging.getLogger(__name__)

_LABELS = ("+1", "+i", "-1", "-i")
_VALUES = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class FourthRoot:
    """i**k for k in Z/4."""

    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    @property
    def value(self) -> complex:
        return _VALUES[self.k]

    @property
    def is_real(self) -> bool:
        return self.k % 2 == 0

    def __mul__(self, other: Union["FourthRoot", int]) -> "FourthRoot":
        if isinstance(other, FourthRoot):
            return FourthRoot(self.k + other.k)
        if other == 1:
            return self
        if other == -1:
            return FourthRoot(self.k + 2)
        raise RejectedInputError(f"Cannot multiply a fourth root by {other!r}")

    __rmul__ = __mul__

    def __neg__(self) -> "FourthRoot":
        return FourthRoot(self.k + 2)

    def __pow__(self, n: int) -> "FourthRoot":
        return FourthRoot(self.k * n)

    def conjugate(self) -> "FourthRoot":
        return FourthRoot(-self.k)

    def __str__(self) -> str:
        return _LABELS[self.k]

    def __repr__(self) -> str:
        return f"FourthRoot({_LABELS[self.k]})"

    @classmethod
    def from_label(cls, label: str) -> "FourthRoot":
        if label not in _LABELS:
            raise RejectedInputError(f"Unknown fourth root label {label!r}")
        return cls(_LABELS.index(label))

    @classmethod
    def from_sign(cls, sign: int) -> "FourthRoot":
        return cls(0 if sign == 1 else 2)

    @classmethod
    def snap(cls, z: complex, tolerance: float = None) -> "FourthRoot":
        tolerance = Config.SNAP_TOLERANCE if tolerance is None else tolerance
        for k, v in enumerate(_VALUES):
            if abs(z - v) < tolerance:
                return cls(k)
        raise SnapError(f"Value {z:.12g} is not within {tolerance} of a fourth root of unity")


ONE = FourthRoot(0)


def _check_symmetric(q: BilinearForm) -> None:
    if not q.symmetric:
        raise RejectedInputError("Gauss sums need a symmetric form")


def _half_diagonal_exponents(q: BilinearForm, coords: np.ndarray) -> np.ndarray:
    m = q.ring.m
    gram = np.array(q.gram, dtype=np.int64)
    values = np.einsum("ni,ij,nj->n", coords, gram, coords) % m
    return (q.ring.half * values) % m


def gauss_sum_direct(q: BilinearForm, chi: AdditiveCharacter) -> FourthRoot:
    _check_symmetric(q)
    size = q.module.order
    if size > Config.MAX_DIRECT_SIGN:
        raise SizeGuardError(f"Direct Gauss sum over {size} elements exceeds guard {Config.MAX_DIRECT_SIGN}")
    if q.rank == 0:
        return ONE
    coords = coordinate_grid(q.module.divisors)
    total = chi.values(_half_diagonal_exponents(q, coords)).sum() / math.sqrt(size)
    return FourthRoot.snap(complex(total))


def _cyclic_piece(chi: AdditiveCharacter, order: int, value: int) -> complex:
    """γ of Z/order with q(x, y) = value·xy, after isotropic reduction."""
    m = chi.ring.m
    c0 = m // order
    unit = value // c0
    f = 1
    for p, k in factorint(order).items():
        f *= p ** ((k + 1) // 2)
    r = f * f // order
    if r == 1:
        return 1 + 0j
    g0 = order // f
    exps = np.array([(chi.ring.half * c0 * unit * g0 * g0 * k * k) % m for k in range(r)], dtype=np.int64)
    return complex(chi.values(exps).sum() / math.sqrt(r))


def gauss_sum_reduced(q: BilinearForm, chi: AdditiveCharacter) -> FourthRoot:
    """Orthogonal splitting into cyclic pieces, each reduced by its isotropic part."""
    _check_symmetric(q)
    if q.rank == 0:
        return ONE
    m = q.ring.m
    total = 1 + 0j
    size = 1
    for _, _, d in orth_split(q):
        order = m // math.gcd(d, m)
        size *= order
        total *= _cyclic_piece(chi, order, d)
    if size != q.module.order:
        raise SnapError(f"Orthogonal pieces cover {size} elements, form domain has {q.module.order}")
    return FourthRoot.snap(total)


def gauss_sum(q: BilinearForm, chi: AdditiveCharacter) -> FourthRoot:
    """
    γ_λ(q) = |X|^{-1/2} Σ_x λ(½ q(x, x)) as an exact fourth root

    Args:
        q: Symmetric non-degenerate form
        chi: Primitive additive character

    Returns:
        The snapped value
    """
    if q.module.order > Config.GAUSS_REDUCTION_THRESHOLD:
        logger.debug(f"Gauss sum over {q.module.order} elements uses the reduction path")
        return gauss_sum_reduced(q, chi)
    return gauss_sum_direct(q, chi)


def schur_matrix(q: BilinearForm, chi: AdditiveCharacter) -> np.ndarray:
    size = q.module.order
    if size > Config.MAX_SCHUR_ORDER:
        raise SizeGuardError(f"Schur matrix of order {size} exceeds guard {Config.MAX_SCHUR_ORDER}")
    coords = coordinate_grid(q.module.divisors)
    m = q.ring.m
    if q.rank == 0:
        return np.ones((1, 1), dtype=complex)
    gram = np.array(q.gram, dtype=np.int64)
    values = (coords @ gram @ coords.T) % m
    return chi.values((q.ring.half * values) % m) / math.sqrt(size)


def schur_matrix_checks(q: BilinearForm, chi: AdditiveCharacter) -> Dict[str, Any]:
    """
    Verify F² = negation permutation, F⁴ = I, tr F = γ and γ = (-1)^((|X|²-1)/8) det F

    Returns:
        Report dict with the residual of every identity and an overall flag
    """
    _check_symmetric(q)
    f = schur_matrix(q, chi)
    size = f.shape[0]
    gamma = gauss_sum(q, chi)
    coords = coordinate_grid(q.module.divisors)
    if q.rank:
        negatives = q.module.index_array((-coords) % np.array(q.module.divisors, dtype=np.int64))
    else:
        negatives = np.zeros(1, dtype=np.int64)
    negation = np.zeros((size, size))
    negation[np.arange(size), negatives] = 1.0
    f2 = f @ f
    sign = -1 if ((size * size - 1) // 8) % 2 else 1
    residuals = {
        "square_is_negation": float(np.abs(f2 - negation).max()),
        "fourth_power_identity": float(np.abs(f2 @ f2 - np.eye(size)).max()),
        "trace_is_gamma": float(abs(np.trace(f) - gamma.value)),
        "determinant_identity": float(abs(sign * np.linalg.det(f) - gamma.value)),
    }
    passed = all(r < Config.SCHUR_TOLERANCE for r in residuals.values())
    if not passed:
        logger.warning(f"Schur checks failed for |X|={size}: {residuals}")
    return {"order": size, "gamma": str(gamma), "residuals": residuals, "passed": passed}
