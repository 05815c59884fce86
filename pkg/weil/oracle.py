"""
Brute-force numeric oracle for Weil characters
Builds the matrix image of P(g), normalizes it by the balanced determinant
condition on the ±1 eigenspaces of T = (1/√|V|) P(-1), and takes the trace.
"""

import logging
import math
from functools import cached_property
from typing import Dict, Tuple

import numpy as np

from algebra.errors import OracleNumericError, RejectedInputError
from algebra.spgroup import SpElement, SymplecticModule, sp_minus_one
from algebra.zmod import AdditiveCharacter
from config import Config
from weil.symplectic_algebra import MatrixUnitBasis, p_terms

logger = logging.getLogger(__name__)


def pivoted_basis(projector: np.ndarray, threshold: float = None) -> np.ndarray:
    """
    Orthonormal basis of the column space of a projector by pivoted Gram-Schmidt

    Args:
        projector: Square matrix whose range is wanted
        threshold: Stop once every residual column norm falls below this

    Returns:
        Matrix with orthonormal columns spanning the range
    """
    threshold = Config.PIVOT_THRESHOLD if threshold is None else threshold
    residual = np.array(projector, dtype=complex, copy=True)
    columns = []
    for _ in range(residual.shape[1]):
        norms = np.linalg.norm(residual, axis=0)
        pivot = int(np.argmax(norms))
        if norms[pivot] < threshold:
            break
        q = residual[:, pivot] / norms[pivot]
        columns.append(q)
        residual -= np.outer(q, q.conj() @ residual)
    if not columns:
        return np.zeros((projector.shape[0], 0), dtype=complex)
    return np.stack(columns, axis=1)


class OracleEngine:
    """
    Numeric Weil matrices W(g) and traces ψ(g) for one symplectic module and character
    """

    def __init__(self, space: SymplecticModule, chi: AdditiveCharacter):
        """Initialize the oracle; refuses modules above the oracle guard"""
        self.space = space
        self.chi = chi
        self.basis = MatrixUnitBasis(space, chi)
        self.n = self.basis.n
        self._weil_cache: Dict[Tuple[Tuple[int, ...], ...], Tuple[np.ndarray, complex]] = {}
        logger.debug(f"Oracle ready for |V| = {space.order}, matrix size {self.n}")

    @cached_property
    def t_matrix(self) -> np.ndarray:
        """T = (1/n) Σ_v M(b_v), an involution with trace 1."""
        elements = self.space.module.element_array()
        return self.basis.matrix(elements, np.full(len(elements), 1.0 / self.n, dtype=complex))

    @cached_property
    def eigenbases(self) -> Tuple[np.ndarray, np.ndarray]:
        """Orthonormal bases of E+ and E-, the ±1 eigenspaces of T."""
        identity = np.eye(self.n, dtype=complex)
        plus = pivoted_basis((identity + self.t_matrix) / 2)
        minus = pivoted_basis((identity - self.t_matrix) / 2)
        expected = ((self.n + 1) // 2, (self.n - 1) // 2)
        if (plus.shape[1], minus.shape[1]) != expected:
            logger.error(f"Eigenspace dimensions {(plus.shape[1], minus.shape[1])}, expected {expected}")
            raise OracleNumericError(
                f"Eigenspaces of T have dimensions {(plus.shape[1], minus.shape[1])}, expected {expected}"
            )
        return plus, minus

    def eta(self, c: np.ndarray) -> complex:
        """η(c) = det(c on E+) / det(c on E-)."""
        plus, minus = self.eigenbases
        det_plus = np.linalg.det(plus.conj().T @ c @ plus) if plus.shape[1] else 1.0
        det_minus = np.linalg.det(minus.conj().T @ c @ minus) if minus.shape[1] else 1.0
        if abs(det_minus) < Config.PIVOT_THRESHOLD:
            raise OracleNumericError("Operator is singular on the -1 eigenspace of T")
        return complex(det_plus / det_minus)

    def _check(self, g: SpElement) -> None:
        if g.space.module != self.space.module or g.space.omega.gram != self.space.omega.gram:
            raise RejectedInputError("Element belongs to a different symplectic module")

    def p_matrix(self, g: SpElement) -> np.ndarray:
        self._check(g)
        elements, coefficients = p_terms(g, self.chi)
        return self.basis.matrix(elements, coefficients)

    def weil_matrix(self, g: SpElement) -> np.ndarray:
        """
        The canonical Weil operator W(g) = P(g)/η(P(g))

        Args:
            g: Symplectic element

        Returns:
            Unitary n x n matrix
        """
        self._check(g)
        return self._normalized(g)[0]

    def _normalized(self, g: SpElement) -> Tuple[np.ndarray, complex]:
        if g.key not in self._weil_cache:
            size = g.displacement.order
            c = self.p_matrix(g) / math.sqrt(size)
            scale = self.eta(c)
            if abs(abs(scale) - 1) > Config.ORACLE_TOLERANCE:
                logger.warning(f"|η| = {abs(scale):.3g} for a unitary operator, numeric trouble likely")
            self._weil_cache[g.key] = (c / scale, scale)
        return self._weil_cache[g.key]

    def oracle_trace(self, g: SpElement) -> complex:
        """ψ(g) = √|V| / (√|V(1-g)| η(P(g)/√|V(1-g)|)); the b_0 coefficient of P(g) is 1."""
        self._check(g)
        _, scale = self._normalized(g)
        return complex(self.n / (math.sqrt(g.displacement.order) * scale))

    def minus_one_matrix(self) -> np.ndarray:
        return self.weil_matrix(sp_minus_one(self.space))
