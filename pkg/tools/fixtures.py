"""
Module descriptions, named fixtures and command-line argument parsing
"""

import json
import logging
import os
from typing import Dict, List, Optional

from pydantic import BaseModel, ValidationError, model_validator

from algebra.bforms import form_from_gram, omega_hyperbolic
from algebra.errors import RejectedInputError
from algebra.finmod import FinModule
from algebra.spgroup import SymplecticModule
from algebra.zmod import ring_new

logger = logging.getLogger(__name__)


class ModuleDescription(BaseModel):
    """
    A symplectic module as JSON: {"m", "divisors"} with an optional "omega"
    gram matrix, or {"m", "hyperbolic": [d_1, ..., d_k]}
    """

    m: int
    divisors: Optional[List[int]] = None
    omega: Optional[List[List[int]]] = None
    hyperbolic: Optional[List[int]] = None

    @model_validator(mode="after")
    def check_shape(self) -> "ModuleDescription":
        if self.hyperbolic is None and self.divisors is None:
            raise ValueError("either 'divisors' or 'hyperbolic' is required")
        if self.hyperbolic is not None and (self.divisors is not None or self.omega is not None):
            raise ValueError("'hyperbolic' excludes 'divisors' and 'omega'")
        if self.omega is not None:
            r = len(self.divisors)
            if len(self.omega) != r or any(len(row) != r for row in self.omega):
                raise ValueError(f"'omega' must be a {r}x{r} matrix")
        return self


FIXTURES: Dict[str, Dict] = {
    "Z3^2": {"m": 3, "divisors": [3, 3]},
    "Z5^2": {"m": 5, "divisors": [5, 5]},
    "Z9^2": {"m": 9, "divisors": [9, 9]},
    "H(3,3)": {"m": 3, "hyperbolic": [3, 3]},
    "H(3,9)": {"m": 9, "hyperbolic": [3, 9]},
    "Z15^2": {"m": 15, "divisors": [15, 15]},
}


def build_space(description: ModuleDescription) -> SymplecticModule:
    """
    Build the symplectic module of a description

    Args:
        description: Validated module description

    Returns:
        SymplecticModule; without "omega" a divisor list (d, d) gets the hyperbolic form
    """
    ring = ring_new(description.m)
    if description.hyperbolic is not None:
        module, omega = omega_hyperbolic(ring, description.hyperbolic)
        return SymplecticModule(module, omega)
    divisors = description.divisors
    if description.omega is not None:
        module = FinModule(ring, tuple(divisors))
        return SymplecticModule(module, form_from_gram(module, description.omega))
    k = len(divisors) // 2
    if len(divisors) % 2 or divisors[:k] != divisors[k:]:
        raise RejectedInputError(f"Divisors {divisors} need an explicit 'omega'")
    module, omega = omega_hyperbolic(ring, divisors[:k])
    return SymplecticModule(module, omega)


def fixture_space(name: str) -> SymplecticModule:
    if name not in FIXTURES:
        raise RejectedInputError(f"Unknown fixture {name!r}, choose from {sorted(FIXTURES)}")
    return build_space(ModuleDescription(**FIXTURES[name]))


def parse_module_arg(text: str) -> SymplecticModule:
    """A fixture name, a path to a JSON file, or inline JSON."""
    if text in FIXTURES:
        return fixture_space(text)
    try:
        if os.path.isfile(text):
            with open(text, "r", encoding="utf-8") as f:
                data = json.load(f)
        else:
            data = json.loads(text)
        return build_space(ModuleDescription.model_validate(data))
    except (json.JSONDecodeError, ValidationError) as exc:
        logger.error(f"Could not read module description: {exc}")
        raise RejectedInputError(f"Invalid module description: {exc}") from exc


def parse_matrix_arg(text: str) -> List[List[int]]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RejectedInputError(f"Matrix is not valid JSON: {exc}") from exc
    if not isinstance(rows, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in row) for row in rows
    ):
        raise RejectedInputError("Matrix must be a JSON list of integer rows")
    return rows
